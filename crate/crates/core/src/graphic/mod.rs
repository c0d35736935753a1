//! Directed graphs as oriented matroids.
//!
//! Elements are arcs, bases are spanning trees, and the circuit of a cycle is
//! signed by traversal: an arc is positive when its orientation agrees with
//! the direction the cycle is walked in.

pub mod compact;
pub mod enumerate;
mod exchange;

use std::fmt::Write as _;

use thiserror::Error;

use crate::om::{Anchor, BasisSet, ElementId, OmError, OrientedMatroid, SignedCircuit, VertexId};
use crate::text::{content_lines, keyword, parse_ids, parse_size, parse_usize, ParseError};

pub use exchange::{claim1_exchange, theorem2_run, theorem2_sequence, Theorem2Run};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("arc {0} is a self-loop")]
    SelfLoop(usize),
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: VertexId, n: usize },
    #[error("the arc set is not a spanning tree")]
    NotATree,
    #[error("the digraph is not connected")]
    Disconnected,
    #[error("anchor arc {0} belongs to the tree")]
    AnchorInBasis(ElementId),
    #[error("invalid anchor")]
    InvalidAnchor,
    #[error("tree is not st-embracing")]
    NotEmbracing,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("postcondition failed: {0}")]
    PostconditionFailed(String),
}

impl From<GraphError> for OmError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::AnchorInBasis(a) => OmError::AnchorInBasis(a),
            GraphError::NotATree => OmError::NotABasis,
            _ => OmError::InvalidAnchor,
        }
    }
}

/// A directed graph on vertices `0..n`. Parallel and anti-parallel arcs are
/// allowed; self-loops are not. Arc `i` is element `i` of the ground set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Digraph {
    n: usize,
    arcs: Vec<(VertexId, VertexId)>,
}

impl Digraph {
    pub fn new(n: usize, arcs: Vec<(VertexId, VertexId)>) -> Result<Self, GraphError> {
        for (i, &(tail, head)) in arcs.iter().enumerate() {
            for v in [tail, head] {
                if v >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: v, n });
                }
            }
            if tail == head {
                return Err(GraphError::SelfLoop(i));
            }
        }
        Ok(Digraph { n, arcs })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &[(VertexId, VertexId)] {
        &self.arcs
    }

    pub fn arc(&self, e: ElementId) -> (VertexId, VertexId) {
        self.arcs[e.0]
    }

    /// First arc from `tail` to `head`, if any.
    pub fn find_arc(&self, tail: VertexId, head: VertexId) -> Option<ElementId> {
        self.arcs
            .iter()
            .position(|&a| a == (tail, head))
            .map(ElementId)
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut uf = UnionFind::new(self.n);
        let mut parts = self.n;
        for &(a, b) in &self.arcs {
            if uf.union(a, b) {
                parts -= 1;
            }
        }
        parts == 1
    }

    /// Whether `tree` is the arc set of a spanning tree.
    pub fn is_spanning_tree(&self, tree: &BasisSet) -> bool {
        if self.n == 0 || tree.len() != self.n - 1 {
            return false;
        }
        let mut uf = UnionFind::new(self.n);
        tree.iter().all(|e| {
            e.0 < self.arcs.len() && {
                let (a, b) = self.arcs[e.0];
                uf.union(a, b)
            }
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("digraph {} {}\n", self.n, self.arcs.len());
        for (t, h) in &self.arcs {
            let _ = writeln!(out, "{t} {h}");
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        Ok(GraphicFile::parse(text)?.digraph)
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when `a` and `b` were already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

/// A validated spanning tree of a particular digraph.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpanningTree(BasisSet);

impl SpanningTree {
    pub fn new(d: &Digraph, arcs: BasisSet) -> Result<Self, GraphError> {
        if d.is_spanning_tree(&arcs) {
            Ok(SpanningTree(arcs))
        } else {
            Err(GraphError::NotATree)
        }
    }

    pub fn from_indices(d: &Digraph, ids: &[usize]) -> Result<Self, GraphError> {
        Self::new(d, BasisSet::from_indices(ids))
    }

    pub fn into_basis(self) -> BasisSet {
        self.0
    }
}

impl std::ops::Deref for SpanningTree {
    type Target = BasisSet;
    fn deref(&self) -> &BasisSet {
        &self.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PathStep {
    pub arc: ElementId,
    /// The arc's orientation agrees with the traversal direction.
    pub forward: bool,
}

/// The unique tree path `T[u, v]`, walked from `u` to `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreePath {
    pub start: VertexId,
    pub steps: Vec<PathStep>,
}

impl TreePath {
    pub fn is_directed(&self) -> bool {
        self.steps.iter().all(|s| s.forward)
    }

    pub fn arcs(&self) -> impl Iterator<Item = ElementId> + '_ {
        self.steps.iter().map(|s| s.arc)
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// `v_0 = start, v_1, ..., v_k`.
    pub fn vertices(&self, d: &Digraph) -> Vec<VertexId> {
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        let mut at = self.start;
        out.push(at);
        for s in &self.steps {
            let (tail, head) = d.arc(s.arc);
            at = if s.forward { head } else { tail };
            out.push(at);
        }
        out
    }
}

/// The unique path in `tree` from `u` to `v` with per-arc orientation flags.
pub fn tree_path(
    d: &Digraph,
    tree: &BasisSet,
    u: VertexId,
    v: VertexId,
) -> Result<TreePath, GraphError> {
    for x in [u, v] {
        if x >= d.n {
            return Err(GraphError::VertexOutOfRange { vertex: x, n: d.n });
        }
    }
    if !d.is_spanning_tree(tree) {
        return Err(GraphError::NotATree);
    }
    // parent[x] = (previous vertex, arc, forward) on the walk from u.
    let mut parent: Vec<Option<(VertexId, PathStep)>> = vec![None; d.n];
    let mut seen = vec![false; d.n];
    let mut stack = vec![u];
    seen[u] = true;
    while let Some(x) = stack.pop() {
        if x == v {
            break;
        }
        for e in tree.iter() {
            let (tail, head) = d.arcs[e.0];
            let (next, forward) = if tail == x {
                (head, true)
            } else if head == x {
                (tail, false)
            } else {
                continue;
            };
            if !seen[next] {
                seen[next] = true;
                parent[next] = Some((x, PathStep { arc: e, forward }));
                stack.push(next);
            }
        }
    }
    let mut steps = Vec::new();
    let mut at = v;
    while at != u {
        let (prev, step) = parent[at].expect("spanning tree reaches every vertex");
        steps.push(step);
        at = prev;
    }
    steps.reverse();
    Ok(TreePath { start: u, steps })
}

/// Whether the `s`–`t` path of `tree` is directed from `s` to `t`.
pub fn is_st_embracing(
    d: &Digraph,
    tree: &BasisSet,
    s: VertexId,
    t: VertexId,
) -> Result<bool, GraphError> {
    Ok(tree_path(d, tree, s, t)?.is_directed())
}

/// Anchored fundamental circuit of an arc (or of the virtual arc `st`) with
/// respect to a spanning tree. The anchor is negative; a tree arc is
/// positive iff it is traversed forward on the tree path from the anchor's
/// tail to its head.
pub fn graphic_anchored_circuit(
    d: &Digraph,
    tree: &BasisSet,
    anchor: &Anchor,
) -> Result<SignedCircuit, GraphError> {
    let (u, v, arc) = match *anchor {
        Anchor::Element(e) => {
            if e.0 >= d.arcs.len() {
                return Err(GraphError::InvalidAnchor);
            }
            if tree.contains(e) {
                return Err(GraphError::AnchorInBasis(e));
            }
            let (u, v) = d.arcs[e.0];
            (u, v, Some(e))
        }
        Anchor::Vertices { source, target } => {
            if source == target || source >= d.n || target >= d.n {
                return Err(GraphError::InvalidAnchor);
            }
            (source, target, None)
        }
    };
    let path = tree_path(d, tree, u, v)?;
    let mut positive = Vec::new();
    let mut negative: Vec<ElementId> = arc.into_iter().collect();
    for step in &path.steps {
        if step.forward {
            positive.push(step.arc);
        } else {
            negative.push(step.arc);
        }
    }
    Ok(SignedCircuit {
        positive: positive.into_iter().collect(),
        negative: negative.into_iter().collect(),
    })
}

/// Oriented graphic matroid of a connected digraph.
#[derive(Clone, Debug)]
pub struct GraphicOracle {
    digraph: Digraph,
}

impl GraphicOracle {
    pub fn new(digraph: Digraph) -> Result<Self, GraphError> {
        if !digraph.is_connected() {
            return Err(GraphError::Disconnected);
        }
        Ok(GraphicOracle { digraph })
    }

    pub fn digraph(&self) -> &Digraph {
        &self.digraph
    }
}

impl OrientedMatroid for GraphicOracle {
    fn ground_size(&self) -> usize {
        self.digraph.arc_count()
    }

    fn rank(&self) -> usize {
        self.digraph.vertex_count().saturating_sub(1)
    }

    fn is_basis(&self, basis: &BasisSet) -> bool {
        self.digraph.is_spanning_tree(basis)
    }

    fn anchored_fundamental_circuit(
        &self,
        basis: &BasisSet,
        anchor: &Anchor,
    ) -> Result<SignedCircuit, OmError> {
        graphic_anchored_circuit(&self.digraph, basis, anchor).map_err(OmError::from)
    }
}

/// A digraph file with optional `tree` and `anchor` lines.
///
/// ```text
/// digraph 3 3
/// 0 1
/// 1 2
/// 0 2
/// tree 0 1
/// anchor 0 2
/// ```
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphicFile {
    pub digraph: Digraph,
    pub trees: Vec<BasisSet>,
    pub anchor: Option<(VertexId, VertexId)>,
}

impl GraphicFile {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut lines = content_lines(text);
        let (hline, header) = lines
            .next()
            .ok_or_else(|| ParseError::new(0, "missing `digraph <n> <m>` header"))?;
        let (n, m) = match keyword(header) {
            ("digraph", rest) if rest.len() == 2 => (
                parse_size(rest[0], hline, "vertex count")?,
                parse_size(rest[1], hline, "arc count")?,
            ),
            _ => return Err(ParseError::new(hline, "expected `digraph <n> <m>`")),
        };
        let mut arcs = Vec::new();
        let mut trees = Vec::new();
        let mut anchor = None;
        for (line_no, line) in lines {
            if arcs.len() < m {
                let ids = parse_ids(&line.split_whitespace().collect::<Vec<_>>(), line_no, "vertex")?;
                match ids.as_slice() {
                    [t, h] => arcs.push((*t, *h)),
                    _ => return Err(ParseError::new(line_no, "expected `tail head`")),
                }
                continue;
            }
            match keyword(line) {
                ("tree", rest) => {
                    let ids = parse_ids(&rest, line_no, "arc index")?;
                    if let Some(bad) = ids.iter().find(|&&a| a >= m) {
                        return Err(ParseError::new(line_no, format!("arc {bad} out of range")));
                    }
                    trees.push(BasisSet::from_indices(&ids));
                }
                ("anchor", rest) if rest.len() == 2 => {
                    if anchor.is_some() {
                        return Err(ParseError::new(line_no, "duplicate anchor line"));
                    }
                    let s = parse_usize(rest[0], line_no, "vertex")?;
                    let t = parse_usize(rest[1], line_no, "vertex")?;
                    if s >= n || t >= n || s == t {
                        return Err(ParseError::new(line_no, "invalid anchor vertices"));
                    }
                    anchor = Some((s, t));
                }
                _ => return Err(ParseError::new(line_no, format!("unexpected line `{line}`"))),
            }
        }
        if arcs.len() < m {
            return Err(ParseError::new(0, format!("expected {m} arcs, found {}", arcs.len())));
        }
        let digraph = Digraph::new(n, arcs).map_err(|e| ParseError::new(0, e.to_string()))?;
        Ok(GraphicFile {
            digraph,
            trees,
            anchor,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = self.digraph.to_text();
        for tree in &self.trees {
            let _ = writeln!(out, "tree {tree}");
        }
        if let Some((s, t)) = self.anchor {
            let _ = writeln!(out, "anchor {s} {t}");
        }
        out
    }
}

#[cfg(test)]
mod tests;

/// The five-vertex digraph on `s, t, u, v, w` with arcs
/// `su, sv, uw, vw, ut, vt`, together with the two `st`-embracing trees
/// `A = {su, uw, vw, ut}` and `B = {sv, uw, vw, vt}` that admit no
/// exchange sequence of length `|A \ B| = 2`.
#[derive(Clone, Debug)]
pub struct Example1 {
    pub digraph: Digraph,
    pub s: VertexId,
    pub t: VertexId,
    pub a: BasisSet,
    pub b: BasisSet,
    /// Vertex names indexed by vertex id.
    pub vertex_names: [&'static str; 5],
    /// Arc names indexed by arc id.
    pub arc_names: [&'static str; 6],
}

impl Example1 {
    pub const S: VertexId = 0;
    pub const T: VertexId = 1;
    pub const U: VertexId = 2;
    pub const V: VertexId = 3;
    pub const W: VertexId = 4;

    pub const SU: ElementId = ElementId(0);
    pub const SV: ElementId = ElementId(1);
    pub const UW: ElementId = ElementId(2);
    pub const VW: ElementId = ElementId(3);
    pub const UT: ElementId = ElementId(4);
    pub const VT: ElementId = ElementId(5);

    pub fn new() -> Self {
        let (s, t, u, v, w) = (Self::S, Self::T, Self::U, Self::V, Self::W);
        let digraph = Digraph::new(5, vec![(s, u), (s, v), (u, w), (v, w), (u, t), (v, t)])
            .expect("valid digraph");
        Example1 {
            digraph,
            s,
            t,
            a: BasisSet::new([Self::SU, Self::UW, Self::VW, Self::UT]),
            b: BasisSet::new([Self::SV, Self::UW, Self::VW, Self::VT]),
            vertex_names: ["s", "t", "u", "v", "w"],
            arc_names: ["su", "sv", "uw", "vw", "ut", "vt"],
        }
    }

    pub fn anchor(&self) -> Anchor {
        Anchor::Vertices {
            source: self.s,
            target: self.t,
        }
    }

    /// `vw -> sv`, then `ut -> vt`, then `su -> vw`.
    pub fn three_step_sequence(&self) -> crate::om::ExchangeSequence {
        use crate::om::Exchange;
        crate::om::ExchangeSequence::new(
            self.a.clone(),
            vec![
                Exchange::new(Self::VW, Self::SV),
                Exchange::new(Self::UT, Self::VT),
                Exchange::new(Self::SU, Self::VW),
            ],
        )
    }

    pub fn arc_name(&self, e: ElementId) -> &'static str {
        self.arc_names[e.0]
    }
}

impl Default for Example1 {
    fn default() -> Self {
        Self::new()
    }
}
