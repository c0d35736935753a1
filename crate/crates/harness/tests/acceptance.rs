//! Acceptance run: one `criterion N: PASS|FAIL ...` line per criterion.
//!
//! Every tolerance is exact (integer distances, rational arithmetic).

use std::fs;
use std::process::ExitCode;
use std::time::Instant;

use embrace_core::affine::{affine_dependence, build_example2, AffineOracle, Example2};
use embrace_core::distance::{
    embracing_distance, parse_witness, symmetric_exchange_reachability, symmetric_exchanges,
    unoriented_distance, Distance, GroundMode, PairOptions, SearchOptions,
};
use embrace_core::graphic::enumerate::{digraph_classes, embracing_trees};
use embrace_core::graphic::{Example1, GraphicOracle};
use embrace_core::om::{circuits_via_oracle, for_each_subset};
use embrace_core::{
    validate_circuit_axioms, verify_exchange_sequence, BasisSet, ElementId, OrientedMatroid,
};
use embrace_harness::audit::{audit_all, dump_violations, AuditOptions, AuditRecord, Violation};
use embrace_harness::exhaustive::{exhaustive_theorem2_audit, ExhaustiveReport};
use embrace_harness::generate::{affine_batch, gen_affine, graphic_batch};
use embrace_harness::instance::{Instance, Payload};
use num_traits::Zero;

const GRAPHIC_COUNT: usize = 1000;
const GRAPHIC_MAX_N: usize = 8;
const AFFINE_COUNT_PER_DIM: usize = 100;
const SEED: u64 = 2024;
/// Pairs at n = 5 cross-checked against the general implementation.
const CROSS_CHECK_EVERY_N5: u64 = 1000;

type Outcome = Result<String, String>;

fn check(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

struct Audited {
    instances: Vec<Instance>,
    records: Vec<AuditRecord>,
}

fn criterion1() -> Outcome {
    let ex = Example1::new();
    let oracle = GraphicOracle::new(ex.digraph.clone()).map_err(|e| e.to_string())?;
    let anchor = ex.anchor();
    for mode in [GroundMode::Union, GroundMode::Full] {
        let r = embracing_distance(&oracle, &anchor, &ex.a, &ex.b, SearchOptions::with_mode(mode))
            .map_err(|e| e.to_string())?;
        check(r.distance == Distance::Finite(3), || format!("{mode:?} distance {}", r.distance))?;
    }
    // No length-2 route: no embracing tree is one exchange from both ends.
    let trees = embracing_trees(&ex.digraph, ex.s, ex.t);
    let adjacent = |x: &BasisSet, y: &BasisSet| x.intersection_len(y) + 1 == x.len();
    check(!adjacent(&ex.a, &ex.b) && ex.a != ex.b, || "A and B adjacent".into())?;
    let middles = trees.iter().filter(|t| adjacent(t, &ex.a) && adjacent(t, &ex.b)).count();
    check(middles == 0, || format!("{middles} embracing middle trees"))?;
    let seq = ex.three_step_sequence();
    let v = verify_exchange_sequence(&oracle, &anchor, &ex.a, &ex.b, &seq);
    check(v.is_valid() && v.monotone && seq.len() == 3, || "published sequence rejected".into())?;
    Ok(format!(
        "distance=3 embracing-trees={} length-2-middles=0 published-sequence=monotone",
        trees.len()
    ))
}

fn criterion2(reports: &[ExhaustiveReport]) -> Outcome {
    let mut detail = Vec::new();
    for r in reports {
        check(r.violation_count == 0, || r.to_string())?;
        check(r.max_monotone_distance < r.n && r.max_length < r.n, || r.to_string())?;
        detail.push(format!("n={}:pairs={},violations=0", r.n, r.pairs));
    }
    Ok(detail.join(" "))
}

fn criterion3(reports: &[ExhaustiveReport], graphic: &Audited) -> Outcome {
    // The exhaustive audit counts a disjoint pair with any other length as a
    // violation; criterion 2 already requires zero of those.
    let exhaustive: u64 = reports.iter().map(|r| r.disjoint_pairs).sum();
    check(reports.iter().all(|r| r.violation_count == 0), || "exhaustive violations".into())?;
    let mut audited = 0;
    for (inst, r) in graphic.instances.iter().zip(&graphic.records) {
        if inst.a.intersection_len(&inst.b) == 0 {
            audited += 1;
            let Payload::Graphic { oracle, .. } = &inst.payload else {
                unreachable!()
            };
            let n1 = oracle.digraph().vertex_count() - 1;
            check(r.theorem2 == Some(n1) && r.unoriented == n1, || r.line())?;
        }
    }
    check(exhaustive > 0 && audited > 0, || "no disjoint pairs seen".into())?;
    Ok(format!("disjoint-pairs exhaustive={exhaustive} audited={audited} all length n-1"))
}

fn criterion4(graphic: &Audited, affine: &Audited) -> Outcome {
    check(graphic.records.len() >= 1000 && affine.records.len() >= 200, || "too few instances".into())?;
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut bound_violations = 0;
    for set in [graphic, affine] {
        for r in &set.records {
            let within = r.embracing.iter().all(|d| d.finite().is_some_and(|k| k <= r.rank));
            if !within {
                bound_violations += 1;
                check(r.violations.contains(&Violation::RankBound), || r.line())?;
            }
        }
        let dumped = dump_violations(dir.path(), &set.instances, &set.records).map_err(|e| e.to_string())?;
        let failing = set.records.iter().filter(|r| !r.passed()).count();
        check(dumped.len() == failing, || "dump count mismatch".into())?;
    }

    // Injected fake violation: Example 1 with a claimed rank of 2.
    let ex = Example1::new();
    let fake = Instance::graphic(ex.digraph.clone(), ex.s, ex.t, ex.a.clone(), ex.b.clone())
        .map_err(|e| e.to_string())?
        .with_claimed_rank(2);
    let fake_dir = dir.path().join("injected");
    let instances = vec![fake];
    let records = audit_all(&instances, AuditOptions::default(), 1);
    check(records[0].violations == vec![Violation::RankBound], || records[0].line())?;
    let dumped = dump_violations(&fake_dir, &instances, &records).map_err(|e| e.to_string())?;
    check(dumped.len() == 1, || "injected violation not dumped".into())?;
    let text = fs::read_to_string(&dumped[0]).map_err(|e| e.to_string())?;
    let back = Instance::parse(&text).map_err(|e| e.to_string())?;
    let again = audit_all(&[back], AuditOptions::default(), 1);
    check(again[0].line() == records[0].line(), || "dump does not round-trip".into())?;
    let stem = dumped[0].file_stem().and_then(|s| s.to_str()).unwrap_or_default().to_string();
    for label in ["union", "full", "monotone-union", "monotone-full"] {
        let w = fs::read_to_string(fake_dir.join(format!("{stem}.{label}.witness"))).map_err(|e| e.to_string())?;
        let parsed = parse_witness(&w).map_err(|e| e.to_string())?;
        check(parsed.distance == Distance::Finite(3), || format!("{label} witness"))?;
    }
    let record = fs::read_to_string(fake_dir.join(format!("{stem}.record"))).map_err(|e| e.to_string())?;
    check(record.trim_end().ends_with("violation:rank-bound"), || "record file".into())?;

    let ratio = |a: &Audited| {
        a.records
            .iter()
            .flat_map(|r| r.embracing.iter().filter_map(move |d| d.finite().map(|k| (k, r.rank))))
            .map(|(k, r)| k as f64 / r as f64)
            .fold(0.0, f64::max)
    };
    Ok(format!(
        "graphic={} affine={} beyond-rank={bound_violations} max-ratio graphic={:.3} affine={:.3} injected-dump=ok",
        graphic.records.len(),
        affine.records.len(),
        ratio(graphic),
        ratio(affine)
    ))
}

fn criterion5() -> Outcome {
    let ex = build_example2();
    let oracle = AffineOracle::new(ex.config.clone());
    let anchor = oracle.anchor();
    let swaps = symmetric_exchanges(&oracle, &anchor, &ex.a, &ex.b);
    check(swaps == vec![(Example2::V, Example2::Y)], || format!("exchanges {swaps:?}"))?;
    let report = symmetric_exchange_reachability(&oracle, &anchor, &ex.a, &ex.b, PairOptions::default())
        .map_err(|e| e.to_string())?;
    let nodes = report.pairs.as_ref().map_or(0, Vec::len);
    check(!report.truncated && nodes == 2 && !report.reachable, || format!("{report:?}"))?;
    Ok(format!("exchanges=1 (v,y) pair-nodes={nodes} (B,A)-reachable=false"))
}

fn criterion6(audited: &[&Audited]) -> Outcome {
    // (a) Axioms on every test instance with at most seven elements.
    let mut oracles: Vec<Box<dyn OrientedMatroid + '_>> = Vec::new();
    oracles.push(Box::new(GraphicOracle::new(Example1::new().digraph).map_err(|e| e.to_string())?));
    oracles.push(Box::new(AffineOracle::new(build_example2().config)));
    for n in 2..=4 {
        for class in digraph_classes(n, true) {
            if class.digraph.arc_count() <= 7 {
                oracles.push(Box::new(GraphicOracle::new(class.digraph).map_err(|e| e.to_string())?));
            }
        }
    }
    let mut affine_configs = vec![build_example2().config];
    for (d, count) in [(1, 4), (1, 6), (2, 6)] {
        for seed in 0..10 {
            let inst = gen_affine(d, count, seed).map_err(|e| e.to_string())?;
            let Payload::Affine(o) = &inst.payload else {
                unreachable!()
            };
            affine_configs.push(o.config().clone());
            oracles.push(Box::new(o.clone()));
        }
    }
    for set in audited {
        for inst in &set.instances {
            if inst.oracle().ground_size() <= 7 {
                oracles.push(Box::new(inst.oracle()));
            }
        }
    }
    let mut axiom_checked = 0;
    for o in &oracles {
        let circuits = circuits_via_oracle(o.as_ref());
        let report = validate_circuit_axioms(&circuits, o.ground_size());
        check(report.all_pass(), || format!("axioms fail:\n{report}"))?;
        axiom_checked += 1;
    }

    // (b) Dependence coefficients re-multiply to zero.
    let mut dependences = 0;
    for config in &affine_configs {
        for size in 2..=config.dim() + 2 {
            for_each_subset(config.len(), size, |subset| {
                let ids: Vec<ElementId> = subset.iter().copied().map(ElementId).collect();
                let Ok(lambda) = affine_dependence(config, &ids) else {
                    return;
                };
                dependences += 1;
                let mut sum = vec![num_rational::BigRational::zero(); config.dim() + 1];
                for (l, e) in lambda.iter().zip(&ids) {
                    assert!(!l.is_zero(), "zero coefficient in a circuit");
                    for (s, c) in sum.iter_mut().zip(&config.point(*e).coords) {
                        *s += l * c;
                    }
                    sum[config.dim()] += l;
                }
                assert!(sum.iter().all(Zero::is_zero), "nonzero residual for {subset:?}");
            });
        }
    }
    check(dependences > 0, || "no dependences found".into())?;

    // (c) Every audit witness, re-read from its text form, verifies.
    let mut witnesses = 0;
    for set in audited {
        for (inst, r) in set.instances.iter().zip(&set.records) {
            check(!r.violations.contains(&Violation::Witness), || r.line())?;
            for (label, text) in &r.witnesses {
                let w = parse_witness(text).map_err(|e| format!("{label}: {e}"))?;
                if let Distance::Finite(k) = w.distance {
                    let seq = w.sequence;
                    let v = verify_exchange_sequence(inst.oracle(), &inst.anchor(), &inst.a, &inst.b, &seq);
                    let monotone_ok = !label.starts_with("monotone") || v.monotone;
                    check(v.is_valid() && monotone_ok && seq.len() == k, || format!("{label}: {}", r.line()))?;
                    witnesses += 1;
                }
            }
        }
    }
    Ok(format!(
        "axiom-checked-oracles={axiom_checked} dependences={dependences} witnesses={witnesses}"
    ))
}

fn criterion7(audited: &[&Audited]) -> Outcome {
    let mut checked = 0;
    for set in audited {
        for (inst, r) in set.instances.iter().zip(&set.records) {
            let unoriented = unoriented_distance(&inst.a, &inst.b).map_err(|e| e.to_string())?;
            let monotone = r.monotone.ok_or("monotone distances missing")?;
            for (e, m) in r.embracing.iter().zip(&monotone) {
                if let (Some(e), Some(m)) = (e.finite(), m.finite()) {
                    check(unoriented <= e && e <= m, || r.line())?;
                    checked += 1;
                }
            }
            check(!r.violations.contains(&Violation::Ordering), || r.line())?;
        }
    }
    Ok(format!("finite-triples={checked}"))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let workers = workers();
    let exhaustive: Vec<ExhaustiveReport> = (2..=5)
        .map(|n| exhaustive_theorem2_audit(n, if n < 5 { 1 } else { CROSS_CHECK_EVERY_N5 }, workers))
        .collect();
    let audit = |instances: Vec<Instance>| Audited {
        records: audit_all(&instances, AuditOptions::default(), workers),
        instances,
    };
    let graphic = audit(graphic_batch(GRAPHIC_COUNT, SEED, GRAPHIC_MAX_N).expect("graphic batch"));
    let mut affine_instances = affine_batch(AFFINE_COUNT_PER_DIM, SEED, 2).expect("affine batch");
    affine_instances.extend(affine_batch(AFFINE_COUNT_PER_DIM, SEED, 3).expect("affine batch"));
    let affine = audit(affine_instances);

    let results = [
        criterion1(),
        criterion2(&exhaustive),
        criterion3(&exhaustive, &graphic),
        criterion4(&graphic, &affine),
        criterion5(),
        criterion6(&[&graphic, &affine]),
        criterion7(&[&graphic, &affine]),
    ];
    let mut failed = 0;
    for (i, r) in results.iter().enumerate() {
        match r {
            Ok(detail) => println!("criterion {}: PASS {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL {detail}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed in {:.1}s",
        results.len() - failed,
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
