#![no_main]

use libfuzzer_sys::fuzz_target;
use qschroeder::QPoly;

fuzz_target!(|data: &[u8]| {
    if let Ok(p) = serde_json::from_slice::<QPoly>(data) {
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(serde_json::from_str::<QPoly>(&json).unwrap(), p);
    }
});
