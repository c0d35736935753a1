//! Reproductions of the two worked examples, as printable reports.

use std::fmt::Write as _;

use embrace_core::affine::{build_example2, is_zero_embracing, AffineOracle, Example2};
use embrace_core::distance::{
    embracing_distance, monotone_embracing_distance, symmetric_exchange_reachability,
    symmetric_exchanges, unoriented_distance, Distance, GroundMode, PairOptions, SearchOptions,
};
use embrace_core::graphic::{is_st_embracing, theorem2_run, Example1, GraphicOracle};
use embrace_core::{verify_exchange_sequence, Anchor, BasisSet, ElementId, ExchangeSequence, OrientedMatroid};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("reproduction failed: {0}")]
pub struct ReproError(pub String);

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Result<(), ReproError> {
    if cond {
        Ok(())
    } else {
        Err(ReproError(what()))
    }
}

fn named_set(set: &BasisSet, name: impl Fn(ElementId) -> &'static str) -> String {
    let names: Vec<&str> = set.iter().map(name).collect();
    format!("{{{}}}", names.join(", "))
}

fn named_steps(seq: &ExchangeSequence, name: impl Fn(ElementId) -> &'static str) -> String {
    let steps: Vec<String> = seq
        .steps
        .iter()
        .map(|s| format!("({},{})", name(s.remove), name(s.add)))
        .collect();
    format!("[{}]", steps.join(", "))
}

pub fn repro_example1() -> Result<String, ReproError> {
    let ex = Example1::new();
    let oracle = GraphicOracle::new(ex.digraph.clone()).map_err(|e| ReproError(e.to_string()))?;
    let anchor = ex.anchor();
    let name = |e: ElementId| ex.arc_name(e);
    let mut out = String::from("example1\n");
    let arcs: Vec<&str> = ex.arc_names.to_vec();
    let _ = writeln!(out, "vertices: {}", ex.vertex_names.join(" "));
    let _ = writeln!(out, "arcs: {}", arcs.join(" "));
    let _ = writeln!(out, "anchor: s t");
    let _ = writeln!(out, "A = {}", named_set(&ex.a, name));
    let _ = writeln!(out, "B = {}", named_set(&ex.b, name));

    let unoriented = unoriented_distance(&ex.a, &ex.b).map_err(|e| ReproError(e.to_string()))?;
    ensure(unoriented == 2, || format!("unoriented distance {unoriented}, expected 2"))?;
    let _ = writeln!(out, "unoriented distance: {unoriented}");

    // Every two-step route from A to B must swap the arcs of A \ B for
    // those of B \ A; list each and the tree it passes through.
    let mut candidates = 0;
    let mut embracing_candidates = 0;
    for r in ex.a.difference(&ex.b) {
        for a in ex.b.difference(&ex.a) {
            let mid = ex.a.exchange(r, a).expect("r in A, a not in A");
            let tree = ex.digraph.is_spanning_tree(&mid);
            let embracing = tree && is_st_embracing(&ex.digraph, &mid, ex.s, ex.t).unwrap_or(false);
            candidates += 1;
            embracing_candidates += usize::from(embracing);
            let _ = writeln!(
                out,
                "length-2 candidate ({},{}) then rest: middle {} {}",
                name(r),
                name(a),
                named_set(&mid, name),
                match (tree, embracing) {
                    (false, _) => "is not a spanning tree",
                    (true, false) => "is not st-embracing",
                    (true, true) => "is st-embracing",
                }
            );
        }
    }
    ensure(embracing_candidates == 0, || "a length-2 sequence exists".into())?;
    let _ = writeln!(out, "length-2 candidates: {candidates}, embracing: {embracing_candidates}");

    for mode in [GroundMode::Union, GroundMode::Full] {
        let r = embracing_distance(&oracle, &anchor, &ex.a, &ex.b, SearchOptions::with_mode(mode))
            .map_err(|e| ReproError(e.to_string()))?;
        ensure(r.distance == Distance::Finite(3), || {
            format!("{mode} distance {}, expected 3", r.distance)
        })?;
        let w = r.witness.as_ref().expect("finite distance has a witness");
        ensure(verify_exchange_sequence(&oracle, &anchor, &ex.a, &ex.b, w).is_valid(), || {
            "BFS witness fails verification".into()
        })?;
        let _ = writeln!(out, "distance {} ({mode}): witness {}", r.distance, named_steps(w, name));
    }
    let mono = monotone_embracing_distance(&oracle, &anchor, &ex.a, &ex.b, SearchOptions::default())
        .map_err(|e| ReproError(e.to_string()))?;
    ensure(mono.distance == Distance::Finite(3), || {
        format!("monotone distance {}, expected 3", mono.distance)
    })?;
    let _ = writeln!(out, "monotone distance: {}", mono.distance);

    let published = ex.three_step_sequence();
    let report = verify_exchange_sequence(&oracle, &anchor, &ex.a, &ex.b, &published);
    ensure(report.is_valid() && report.monotone, || {
        format!("published sequence fails: {report:?}")
    })?;
    let _ = writeln!(
        out,
        "published sequence {}: valid, monotone, strictly monotone {}",
        named_steps(&published, name),
        report.strictly_monotone
    );

    let run = theorem2_run(&ex.digraph, ex.s, ex.t, &ex.a, &ex.b).map_err(|e| ReproError(e.to_string()))?;
    let report = verify_exchange_sequence(&oracle, &anchor, &ex.a, &ex.b, &run.sequence);
    ensure(report.is_valid() && report.monotone && run.sequence.len() <= 4, || {
        format!("constructed sequence fails: {report:?}")
    })?;
    let _ = writeln!(
        out,
        "constructed sequence {}: length {} (bound 4), phase one {} steps, valid, monotone",
        named_steps(&run.sequence, name),
        run.sequence.len(),
        run.phase1_steps
    );
    Ok(out)
}

pub fn repro_example2() -> Result<String, ReproError> {
    let ex = build_example2();
    let oracle = AffineOracle::new(ex.config.clone());
    let anchor = Anchor::Element(Example2::ORIGIN);
    let name = |e: ElementId| ex.name(e);
    let mut out = String::from("example2\n");
    for i in 0..ex.config.len() {
        let e = ElementId(i);
        let _ = writeln!(out, "point {} = {}", name(e), ex.config.point(e));
    }
    let _ = writeln!(out, "A = {}", named_set(&ex.a, name));
    let _ = writeln!(out, "B = {}", named_set(&ex.b, name));
    ensure(oracle.rank() == 3, || format!("rank {}", oracle.rank()))?;

    let mut feasible = 0;
    for e in ex.a.iter() {
        for f in ex.b.iter() {
            let x = ex.a.exchange(e, f).expect("disjoint");
            let y = ex.b.exchange(f, e).expect("disjoint");
            let ok_x = is_zero_embracing(&ex.config, &x) == Ok(true);
            let ok_y = is_zero_embracing(&ex.config, &y) == Ok(true);
            feasible += usize::from(ok_x && ok_y);
            let _ = writeln!(
                out,
                "swap {}<->{}: A' embracing {}, B' embracing {}",
                name(e),
                name(f),
                ok_x,
                ok_y
            );
        }
    }
    let found = symmetric_exchanges(&oracle, &anchor, &ex.a, &ex.b);
    ensure(feasible == 1 && found == vec![(Example2::V, Example2::Y)], || {
        format!("expected only v<->y to be feasible, found {found:?}")
    })?;
    let _ = writeln!(out, "feasible symmetric exchanges: {feasible} of 9");

    let report = symmetric_exchange_reachability(&oracle, &anchor, &ex.a, &ex.b, PairOptions::default())
        .map_err(|e| ReproError(e.to_string()))?;
    let pairs = report.pairs.clone().unwrap_or_default();
    ensure(!report.reachable && !report.truncated && pairs.len() == 2, || {
        format!(
            "pair graph: {} pairs, reachable {}, truncated {}",
            report.explored, report.reachable, report.truncated
        )
    })?;
    for (i, (x, y)) in pairs.iter().enumerate() {
        let _ = writeln!(out, "pair {i}: ({}, {})", named_set(x, name), named_set(y, name));
    }
    for edge in report.edges.iter().flatten() {
        let (e, f) = edge.exchange;
        let _ = writeln!(out, "edge {} -> {} swapping {}<->{}", edge.from, edge.to, name(e), name(f));
    }
    let _ = writeln!(out, "(B, A) reachable: false");

    for mode in [GroundMode::Union, GroundMode::Full] {
        let r = embracing_distance(&oracle, &anchor, &ex.a, &ex.b, SearchOptions::with_mode(mode))
            .map_err(|e| ReproError(e.to_string()))?;
        ensure(r.distance.finite().is_some_and(|k| k <= 3), || {
            format!("{mode} distance {}", r.distance)
        })?;
        let w = r.witness.as_ref().expect("finite distance has a witness");
        ensure(verify_exchange_sequence(&oracle, &anchor, &ex.a, &ex.b, w).is_valid(), || {
            "BFS witness fails verification".into()
        })?;
        let _ = writeln!(out, "distance {} ({mode}): witness {}", r.distance, named_steps(w, name));
    }
    Ok(out)
}
