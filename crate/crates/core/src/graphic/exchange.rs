//! Constructive monotone exchange sequences between `st`-embracing trees.
//!
//! Phase one walks the target's directed `s`–`t` path `f_1, ..., f_k` and
//! inserts each missing arc with [`claim1_exchange`], which keeps the tree
//! `st`-embracing. Afterwards the current tree contains the whole target
//! path, and phase two swaps the remaining arcs in any order without
//! touching that path. Every step inserts a target arc, so the overlap with
//! the target never decreases, and the total is at most `n - 1` steps.

use crate::om::{BasisSet, ElementId, Exchange, ExchangeSequence, VertexId};

use super::{tree_path, Digraph, GraphError, SpanningTree, TreePath};

/// One phase-one step: inserts `f_i` (the `i`-th arc of `target_path`,
/// 1-based) into `tree`, removing the last arc of `T[v_{i-1}, v_i]` that is
/// not on the remainder `B[v_i, t]` of the target path.
///
/// Preconditions: `target_path` is directed, `tree` is an `st`-embracing
/// spanning tree for the endpoints of `target_path`, `f_1..f_{i-1}` are in
/// `tree` and `f_i` is not.
pub fn claim1_exchange(
    d: &Digraph,
    tree: &BasisSet,
    target_path: &TreePath,
    i: usize,
) -> Result<(ElementId, SpanningTree), GraphError> {
    let violated = |what: &str| Err(GraphError::PreconditionViolated(what.to_string()));
    let k = target_path.len();
    if i == 0 || i > k {
        return violated("step index outside 1..=k");
    }
    if !target_path.is_directed() {
        return violated("target path is not directed");
    }
    if !d.is_spanning_tree(tree) {
        return violated("tree is not a spanning tree");
    }
    let verts = target_path.vertices(d);
    let (s, t) = (verts[0], verts[k]);
    if !tree_path(d, tree, s, t)?.is_directed() {
        return violated("tree is not st-embracing");
    }
    let arcs: Vec<ElementId> = target_path.arcs().collect();
    if arcs[..i - 1].iter().any(|f| !tree.contains(*f)) {
        return violated("target prefix B[s, v_(i-1)] not contained in tree");
    }
    let f_i = arcs[i - 1];
    if tree.contains(f_i) {
        return violated("f_i already in tree");
    }

    let rest = &arcs[i..];
    let cycle_path = tree_path(d, tree, verts[i - 1], verts[i])?;
    let removed = cycle_path
        .arcs()
        .filter(|e| !rest.contains(e))
        .last()
        .ok_or_else(|| GraphError::PostconditionFailed("no removable arc on T[v_(i-1), v_i]".into()))?;

    let next = tree
        .exchange(removed, f_i)
        .expect("removed is a tree arc and f_i is not");
    let next = SpanningTree::new(d, next)
        .map_err(|_| GraphError::PostconditionFailed("exchange broke the spanning tree".into()))?;
    if !tree_path(d, &next, s, t)?.is_directed() {
        return Err(GraphError::PostconditionFailed(
            "exchanged tree is not st-embracing".into(),
        ));
    }
    if arcs[..i].iter().any(|f| !next.contains(*f)) {
        return Err(GraphError::PostconditionFailed(
            "exchanged tree lost part of B[s, v_i]".into(),
        ));
    }
    Ok((removed, next))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theorem2Run {
    pub sequence: ExchangeSequence,
    /// Number of leading steps performed by phase one.
    pub phase1_steps: usize,
}

/// Monotone `st`-embracing exchange sequence from `start` to `target`, with
/// the phase split reported.
pub fn theorem2_run(
    d: &Digraph,
    s: VertexId,
    t: VertexId,
    start: &BasisSet,
    target: &BasisSet,
) -> Result<Theorem2Run, GraphError> {
    if s == t {
        return Err(GraphError::InvalidAnchor);
    }
    let start_path = tree_path(d, start, s, t)?;
    let target_path = tree_path(d, target, s, t)?;
    if !start_path.is_directed() || !target_path.is_directed() {
        return Err(GraphError::NotEmbracing);
    }

    let mut steps = Vec::new();
    let mut current = start.clone();
    let path_arcs: Vec<ElementId> = target_path.arcs().collect();
    for (idx, &f) in path_arcs.iter().enumerate() {
        if current.contains(f) {
            continue;
        }
        let (removed, next) = claim1_exchange(d, &current, &target_path, idx + 1)?;
        steps.push(Exchange { remove: removed, add: f });
        current = next.into_basis();
    }
    let phase1_steps = steps.len();
    let reached: Vec<ElementId> = tree_path(d, &current, s, t)?.arcs().collect();
    if reached != path_arcs {
        return Err(GraphError::PostconditionFailed(
            "phase one did not reproduce B[s, t]".into(),
        ));
    }

    while current != *target {
        let remove = current.difference(target)[0];
        let add = target
            .difference(&current)
            .into_iter()
            .find(|&f| {
                current
                    .exchange(remove, f)
                    .is_some_and(|next| d.is_spanning_tree(&next))
            })
            .ok_or_else(|| GraphError::PostconditionFailed("no restoring arc in phase two".into()))?;
        steps.push(Exchange { remove, add });
        current = current.exchange(remove, add).expect("checked above");
    }

    Ok(Theorem2Run {
        sequence: ExchangeSequence::new(start.clone(), steps),
        phase1_steps,
    })
}

/// Monotone `st`-embracing exchange sequence of length at most `n - 1`
/// between two `st`-embracing spanning trees.
pub fn theorem2_sequence(
    d: &Digraph,
    s: VertexId,
    t: VertexId,
    start: &BasisSet,
    target: &BasisSet,
) -> Result<ExchangeSequence, GraphError> {
    theorem2_run(d, s, t, start, target).map(|run| run.sequence)
}
