#![no_main]

use embrace_core::distance::parse_witness;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        let _ = parse_witness(text);
    }
});
