#![no_main]

use embrace_harness::instance::Instance;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(inst) = Instance::parse(text) {
        let printed = inst.to_text();
        let again = Instance::parse(&printed).expect("printed instance parses");
        assert_eq!(again.to_text(), printed);
    }
});
