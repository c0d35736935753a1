#![no_main]

use embrace_core::explicit::{ExplicitOm, ExplicitOmFile};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(file) = ExplicitOmFile::parse(text) {
        let again = ExplicitOmFile::parse(&file.to_text()).expect("printed file parses");
        assert_eq!(again.circuits, file.circuits);
        let _ = ExplicitOm::from_file(&file);
    }
});
