#![no_main]

use embrace_core::graphic::GraphicFile;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(file) = GraphicFile::parse(text) {
        let again = GraphicFile::parse(&file.to_text()).expect("printed file parses");
        assert_eq!(again.digraph, file.digraph);
        assert_eq!(again.trees, file.trees);
    }
});
