//! Runs the fuzz target bodies over the checked-in corpus seeds.

use std::fs;
use std::path::PathBuf;

use embrace_core::affine::PointsFile;
use embrace_core::distance::parse_witness;
use embrace_core::explicit::{ExplicitOm, ExplicitOmFile};
use embrace_core::graphic::GraphicFile;
use embrace_harness::instance::Instance;

fn seeds(target: &str) -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<(String, String)> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| {
            let path = e.unwrap().path();
            (path.display().to_string(), fs::read_to_string(&path).unwrap())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn explicit_om_seeds() {
    let mut parsed = 0;
    for (name, text) in seeds("explicit_om") {
        if let Ok(file) = ExplicitOmFile::parse(&text) {
            let again = ExplicitOmFile::parse(&file.to_text()).expect(&name);
            assert_eq!(again.circuits, file.circuits, "{name}");
            let _ = ExplicitOm::from_file(&file);
            parsed += 1;
        }
    }
    assert!(parsed > 0);
}

#[test]
fn graphic_file_seeds() {
    for (name, text) in seeds("graphic_file") {
        let file = GraphicFile::parse(&text).expect(&name);
        let again = GraphicFile::parse(&file.to_text()).expect(&name);
        assert_eq!((again.digraph, again.trees), (file.digraph, file.trees), "{name}");
    }
}

#[test]
fn points_file_seeds() {
    for (name, text) in seeds("points_file") {
        let file = PointsFile::parse(&text).expect(&name);
        assert_eq!(PointsFile::parse(&file.to_text()).expect(&name), file, "{name}");
    }
}

#[test]
fn instance_seeds() {
    for (name, text) in seeds("instance") {
        let inst = Instance::parse(&text).expect(&name);
        let printed = inst.to_text();
        assert_eq!(Instance::parse(&printed).expect(&name).to_text(), printed, "{name}");
    }
}

#[test]
fn witness_seeds() {
    for (name, text) in seeds("witness") {
        parse_witness(&text).expect(&name);
    }
}
