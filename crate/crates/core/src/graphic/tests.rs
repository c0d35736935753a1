use super::enumerate::{embracing_trees, spanning_trees};
use super::*;
use crate::om::{is_embracing, verify_exchange_sequence, Exchange};

type E = Example1;

fn path(start: VertexId, steps: &[(ElementId, bool)]) -> TreePath {
    TreePath {
        start,
        steps: steps
            .iter()
            .map(|&(arc, forward)| PathStep { arc, forward })
            .collect(),
    }
}

/// Independent cycle finder: prune leaves of the undirected `T + e` until
/// only the cycle remains, then walk it starting against `e` and sign each
/// arc by whether it agrees with the walk.
fn brute_force_circuit(d: &Digraph, tree: &BasisSet, e: ElementId) -> SignedCircuit {
    let mut edges: Vec<ElementId> = tree.iter().chain([e]).collect();
    loop {
        let mut degree = vec![0; d.vertex_count()];
        for a in &edges {
            let (x, y) = d.arc(*a);
            degree[x] += 1;
            degree[y] += 1;
        }
        let before = edges.len();
        edges.retain(|a| {
            let (x, y) = d.arc(*a);
            degree[x] > 1 && degree[y] > 1
        });
        if edges.len() == before {
            break;
        }
    }
    let (tail, head) = d.arc(e);
    let mut positive = BTreeSet::new();
    let mut negative = BTreeSet::from([e]);
    let mut at = tail;
    let mut used = vec![e];
    while at != head {
        let next = *edges
            .iter()
            .find(|a| !used.contains(a) && (d.arc(**a).0 == at || d.arc(**a).1 == at))
            .unwrap();
        used.push(next);
        let (x, y) = d.arc(next);
        // The walk runs tail(e) -> head(e) through the tree and closes
        // against e, so agreeing arcs are positive and e is negative.
        if x == at {
            positive.insert(next);
            at = y;
        } else {
            negative.insert(next);
            at = x;
        }
    }
    SignedCircuit { positive, negative }
}

use std::collections::BTreeSet;

#[test]
fn tree_path_on_example1() {
    let ex = E::new();
    let p = tree_path(&ex.digraph, &ex.a, E::S, E::T).unwrap();
    assert_eq!(p, path(E::S, &[(E::SU, true), (E::UT, true)]));
    assert!(p.is_directed());

    let back = tree_path(&ex.digraph, &ex.a, E::T, E::S).unwrap();
    assert_eq!(back, path(E::T, &[(E::UT, false), (E::SU, false)]));

    let sw = tree_path(&ex.digraph, &ex.a, E::S, E::W).unwrap();
    assert_eq!(sw, path(E::S, &[(E::SU, true), (E::UW, true)]));
    assert_eq!(sw.vertices(&ex.digraph), vec![E::S, E::U, E::W]);
}

#[test]
fn tree_path_rejects_non_trees() {
    let ex = E::new();
    let not_tree = BasisSet::new([E::SU, E::UW, E::VW]);
    assert_eq!(
        tree_path(&ex.digraph, &not_tree, E::S, E::T),
        Err(GraphError::NotATree)
    );
    let cyclic = BasisSet::new([E::SU, E::SV, E::UW, E::VW]);
    assert_eq!(
        is_st_embracing(&ex.digraph, &cyclic, E::S, E::T),
        Err(GraphError::NotATree)
    );
}

#[test]
fn st_embracing_examples() {
    let ex = E::new();
    assert!(is_st_embracing(&ex.digraph, &ex.a, E::S, E::T).unwrap());
    assert!(is_st_embracing(&ex.digraph, &ex.b, E::S, E::T).unwrap());
    // s -> v -> w <- u -> t.
    let bent = BasisSet::new([E::SV, E::UW, E::VW, E::UT]);
    assert!(!is_st_embracing(&ex.digraph, &bent, E::S, E::T).unwrap());
    // s -> u -> w <- v -> t.
    let other = BasisSet::new([E::SU, E::UW, E::VW, E::VT]);
    assert!(!is_st_embracing(&ex.digraph, &other, E::S, E::T).unwrap());

    let single = Digraph::new(2, vec![(0, 1)]).unwrap();
    assert!(is_st_embracing(&single, &BasisSet::from_indices(&[0]), 0, 1).unwrap());
}

#[test]
fn anchored_circuits_on_example1() {
    let ex = E::new();
    let d = &ex.digraph;
    // T[v, t] = (vw forward, uw backward, ut forward).
    let c = graphic_anchored_circuit(d, &ex.a, &Anchor::Element(E::VT)).unwrap();
    assert_eq!(c.positive, BTreeSet::from([E::VW, E::UT]));
    assert_eq!(c.negative, BTreeSet::from([E::VT, E::UW]));
    assert_eq!(c, brute_force_circuit(d, &ex.a, E::VT));

    // T[s, v] = (su forward, uw forward, vw backward).
    let c = graphic_anchored_circuit(d, &ex.a, &Anchor::Element(E::SV)).unwrap();
    assert_eq!(c.positive, BTreeSet::from([E::SU, E::UW]));
    assert_eq!(c.negative, BTreeSet::from([E::SV, E::VW]));
    assert_eq!(c, brute_force_circuit(d, &ex.a, E::SV));

    assert_eq!(
        graphic_anchored_circuit(d, &ex.a, &Anchor::Element(E::SU)),
        Err(GraphError::AnchorInBasis(E::SU))
    );
}

#[test]
fn anchored_circuit_of_directed_triangle() {
    let d = Digraph::new(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap();
    let tree = BasisSet::from_indices(&[0, 1]);
    let c = graphic_anchored_circuit(&d, &tree, &Anchor::Element(ElementId(2))).unwrap();
    assert_eq!(c, SignedCircuit::from_indices(&[0, 1], &[2]));
}

#[test]
fn circuits_match_independent_cycle_finder_on_all_small_digraphs() {
    for n in 2..=4 {
        for class in super::enumerate::digraph_classes(n, true) {
            let d = &class.digraph;
            for tree in spanning_trees(d) {
                for e in (0..d.arc_count()).map(ElementId) {
                    if tree.contains(e) {
                        continue;
                    }
                    let c = graphic_anchored_circuit(d, &tree, &Anchor::Element(e)).unwrap();
                    assert_eq!(c, brute_force_circuit(d, &tree, e), "{d:?} {tree} {e}");
                }
            }
        }
    }
}

#[test]
fn oracle_is_embracing_agrees_with_tree_paths() {
    let ex = E::new();
    let oracle = GraphicOracle::new(ex.digraph.clone()).unwrap();
    for tree in spanning_trees(&ex.digraph) {
        for s in 0..5 {
            for t in 0..5 {
                if s == t {
                    continue;
                }
                let direct = is_st_embracing(&ex.digraph, &tree, s, t).unwrap();
                let anchor = Anchor::Vertices {
                    source: s,
                    target: t,
                };
                assert_eq!(is_embracing(&oracle, &tree, &anchor).unwrap(), direct);
                if let Some(arc) = ex.digraph.find_arc(s, t) {
                    if !tree.contains(arc) {
                        let via_arc = is_embracing(&oracle, &tree, &Anchor::Element(arc)).unwrap();
                        assert_eq!(via_arc, direct);
                    }
                }
            }
        }
    }
}

#[test]
fn oracle_rejects_disconnected_digraphs() {
    let d = Digraph::new(4, vec![(0, 1), (2, 3)]).unwrap();
    assert_eq!(GraphicOracle::new(d).unwrap_err(), GraphError::Disconnected);
}

#[test]
fn digraph_rejects_self_loops_and_bad_vertices() {
    assert_eq!(
        Digraph::new(3, vec![(0, 1), (2, 2)]),
        Err(GraphError::SelfLoop(1))
    );
    assert!(matches!(
        Digraph::new(2, vec![(0, 2)]),
        Err(GraphError::VertexOutOfRange { vertex: 2, n: 2 })
    ));
}

#[test]
fn claim1_first_step_on_example1() {
    let ex = E::new();
    let d = &ex.digraph;
    let bpath = tree_path(d, &ex.b, E::S, E::T).unwrap();
    assert_eq!(bpath.arcs().collect::<Vec<_>>(), vec![E::SV, E::VT]);
    let (removed, next) = claim1_exchange(d, &ex.a, &bpath, 1).unwrap();
    assert_eq!(removed, E::VW);
    assert_eq!(*next, BasisSet::new([E::SU, E::UW, E::UT, E::SV]));
    assert!(is_st_embracing(d, &next, E::S, E::T).unwrap());
}

#[test]
fn claim1_forced_case_on_three_vertices() {
    // s=0 -> a=1 -> t=2, plus s -> t.
    let d = Digraph::new(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap();
    let tree = BasisSet::from_indices(&[0, 1]);
    let bpath = path(0, &[(ElementId(2), true)]);
    let (removed, next) = claim1_exchange(&d, &tree, &bpath, 1).unwrap();
    assert_eq!(removed, ElementId(1));
    assert_eq!(*next, BasisSet::from_indices(&[0, 2]));
}

#[test]
fn claim1_guards() {
    let ex = E::new();
    let d = &ex.digraph;
    let bpath = tree_path(d, &ex.b, E::S, E::T).unwrap();
    // f_2 = vt is not in A but f_1 = sv is not either.
    assert!(matches!(
        claim1_exchange(d, &ex.a, &bpath, 2),
        Err(GraphError::PreconditionViolated(_))
    ));
    // f_1 already present.
    assert!(matches!(
        claim1_exchange(d, &ex.b, &bpath, 1),
        Err(GraphError::PreconditionViolated(_))
    ));
    assert!(matches!(
        claim1_exchange(d, &ex.a, &bpath, 0),
        Err(GraphError::PreconditionViolated(_))
    ));
    let bent = BasisSet::new([E::SV, E::UW, E::VW, E::UT]);
    assert!(matches!(
        claim1_exchange(d, &bent, &bpath, 2),
        Err(GraphError::PreconditionViolated(_))
    ));
}

#[test]
fn theorem2_on_example1() {
    let ex = E::new();
    let oracle = GraphicOracle::new(ex.digraph.clone()).unwrap();
    let run = theorem2_run(&ex.digraph, E::S, E::T, &ex.a, &ex.b).unwrap();
    let seq = &run.sequence;
    let report = verify_exchange_sequence(&oracle, &ex.anchor(), &ex.a, &ex.b, seq);
    assert!(report.is_valid(), "{report:?}");
    assert!(report.monotone);
    assert!(seq.len() <= 4);
    assert_eq!(seq.len(), 3);
    // Phase one inserts sv (removing vw) and vt; phase two restores vw.
    assert_eq!(run.phase1_steps, 2);
    assert_eq!(seq.steps[0], Exchange::new(E::VW, E::SV));
    assert_eq!(seq.steps[1], Exchange::new(E::UT, E::VT));
    assert_eq!(seq.steps[2], Exchange::new(E::SU, E::VW));
}

#[test]
fn theorem2_identity_and_errors() {
    let ex = E::new();
    let seq = theorem2_sequence(&ex.digraph, E::S, E::T, &ex.a, &ex.a).unwrap();
    assert!(seq.is_empty());
    let bent = BasisSet::new([E::SV, E::UW, E::VW, E::UT]);
    assert_eq!(
        theorem2_sequence(&ex.digraph, E::S, E::T, &ex.a, &bent),
        Err(GraphError::NotEmbracing)
    );
}

#[test]
fn theorem2_exhaustive_on_four_vertices() {
    for class in super::enumerate::digraph_classes(4, true) {
        let d = &class.digraph;
        let oracle = GraphicOracle::new(d.clone()).unwrap();
        for (s, t) in class.anchor_representatives() {
            let anchor = Anchor::Vertices {
                source: s,
                target: t,
            };
            let trees = embracing_trees(d, s, t);
            for a in &trees {
                for b in &trees {
                    let run = theorem2_run(d, s, t, a, b).unwrap();
                    let report =
                        verify_exchange_sequence(&oracle, &anchor, a, b, &run.sequence);
                    assert!(report.is_valid() && report.monotone, "{d:?} {a} {b}");
                    assert!(run.sequence.len() <= 3);
                    let b_path = tree_path(d, b, s, t).unwrap();
                    let missing = b_path.arcs().filter(|f| !a.contains(*f)).count();
                    assert!(run.phase1_steps <= missing);
                    if a.intersection_len(b) == 0 {
                        assert_eq!(run.sequence.len(), 3);
                    }
                }
            }
        }
    }
}

#[test]
fn graphic_file_round_trip() {
    let text = "# triangle\ndigraph 3 3\n0 1\n1 2\n0 2\ntree 0 1\ntree 2 0\nanchor 0 2\n";
    let file = GraphicFile::parse(text).unwrap();
    assert_eq!(file.digraph.arc_count(), 3);
    assert_eq!(file.trees.len(), 2);
    assert_eq!(file.anchor, Some((0, 2)));
    assert_eq!(GraphicFile::parse(&file.to_text()).unwrap(), file);
}

#[test]
fn graphic_file_errors() {
    for bad in [
        "",
        "digraph 3\n",
        "digraph 2 1\n0 0\n",
        "digraph 2 2\n0 1\n",
        "digraph 2 1\n0 1\ntree 3\n",
        "digraph 2 1\n0 1\nanchor 1 1\n",
        "digraph 2 1\n0 1\nbogus\n",
        "digraph 2 1\n0 1 1\n",
    ] {
        assert!(GraphicFile::parse(bad).is_err(), "{bad:?}");
    }
}
