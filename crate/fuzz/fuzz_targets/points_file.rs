#![no_main]

use embrace_core::affine::PointsFile;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(file) = PointsFile::parse(text) {
        let again = PointsFile::parse(&file.to_text()).expect("printed file parses");
        assert_eq!(again, file);
    }
});
