#![no_main]

use libfuzzer_sys::fuzz_target;
use qschroeder::{QPoly, Rational, TruncSeries};

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = serde_json::from_slice::<TruncSeries<Rational>>(data) {
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(serde_json::from_str::<TruncSeries<Rational>>(&json).unwrap(), s);
    }
    if let Ok(s) = serde_json::from_slice::<TruncSeries<QPoly>>(data) {
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(serde_json::from_str::<TruncSeries<QPoly>>(&json).unwrap(), s);
    }
});
