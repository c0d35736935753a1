use std::fs;

use embrace_core::distance::{parse_witness, Distance};
use embrace_core::graphic::Example1;
use embrace_harness::audit::{
    audit_all, audit_instance, dump_violations, format_report, AuditOptions, Violation,
};
use embrace_harness::generate::{affine_batch, graphic_batch};
use embrace_harness::instance::Instance;

fn example1_instance() -> Instance {
    let ex = Example1::new();
    Instance::graphic(ex.digraph.clone(), ex.s, ex.t, ex.a.clone(), ex.b.clone()).unwrap()
}

#[test]
fn example1_record() {
    let r = audit_instance(0, &example1_instance(), AuditOptions::default());
    assert_eq!(r.unoriented, 2);
    assert_eq!(r.embracing, [Distance::Finite(3); 2]);
    assert_eq!(r.monotone, Some([Distance::Finite(3); 2]));
    assert_eq!(r.rank, 4);
    assert_eq!(r.theorem2, Some(3));
    assert!(r.passed());
    assert!(r.line().ends_with(" 4 2 3 3 3 3 3 pass"), "{}", r.line());
}

#[test]
fn wrong_rank_is_flagged_and_dumped() {
    let inst = example1_instance().with_claimed_rank(2);
    let instances = vec![inst];
    let records = audit_all(&instances, AuditOptions::default(), 1);
    assert_eq!(records[0].violations, vec![Violation::RankBound]);
    assert_eq!(records[0].verdict(), "violation:rank-bound");

    let dir = tempfile::tempdir().unwrap();
    let dumped = dump_violations(dir.path(), &instances, &records).unwrap();
    assert_eq!(dumped.len(), 1);
    let text = fs::read_to_string(&dumped[0]).unwrap();
    assert!(text.contains("claimed-rank 2"));

    // Re-auditing the dump reproduces the verdict.
    let again = Instance::parse(&text).unwrap();
    let record = audit_instance(0, &again, AuditOptions::default());
    assert_eq!(record.verdict(), records[0].verdict());
    assert_eq!(record.line(), records[0].line());

    let stem = dumped[0].file_stem().unwrap().to_str().unwrap().to_string();
    for label in ["union", "full", "monotone-union", "monotone-full"] {
        let w = fs::read_to_string(dir.path().join(format!("{stem}.{label}.witness"))).unwrap();
        assert_eq!(parse_witness(&w).unwrap().distance, Distance::Finite(3));
    }
    let rec = fs::read_to_string(dir.path().join(format!("{stem}.record"))).unwrap();
    assert!(rec.lines().nth(1).unwrap().ends_with("violation:rank-bound"));
}

#[test]
fn depth_bound_counts_as_rank_violation() {
    let opts = AuditOptions {
        monotone: false,
        max_depth: Some(2),
    };
    let r = audit_instance(0, &example1_instance(), opts);
    assert_eq!(r.embracing, [Distance::BeyondBound(2); 2]);
    assert_eq!(r.violations, vec![Violation::RankBound]);
    assert!(r.line().contains(" beyond:2 beyond:2 - - 3 "), "{}", r.line());
}

#[test]
fn seeded_graphic_audit_has_no_violations() {
    let instances = graphic_batch(100, 7, 6).unwrap();
    let records = audit_all(&instances, AuditOptions::default(), 1);
    for r in &records {
        assert!(r.passed(), "{}", r.line());
        assert!(r.monotone.unwrap().iter().all(|d| d.finite().is_some()));
    }
}

#[test]
fn report_is_independent_of_worker_count() {
    let mut instances = graphic_batch(30, 1, 6).unwrap();
    instances.extend(affine_batch(6, 1, 2).unwrap());
    let one = format_report("test", &audit_all(&instances, AuditOptions::default(), 1));
    let four = format_report("test", &audit_all(&instances, AuditOptions::default(), 4));
    assert_eq!(one, four);
    assert_eq!(one.lines().count(), 1 + 36 + 3);
    assert!(one.lines().next().unwrap().starts_with("# test | id hash kind"));
}
