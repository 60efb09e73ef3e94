#![no_main]

use libfuzzer_sys::fuzz_target;
use qschroeder::verifier::IdentityReport;

fuzz_target!(|data: &[u8]| {
    if let Ok(r) = serde_json::from_slice::<Vec<IdentityReport>>(data) {
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(serde_json::from_str::<Vec<IdentityReport>>(&json).unwrap(), r);
    }
});
