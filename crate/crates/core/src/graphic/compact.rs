//! Bitmask versions of the tree routines for digraphs with at most 8
//! vertices and 32 arcs, used by exhaustive audits. Trees are arc masks.

use super::Digraph;
use crate::om::{BasisSet, ElementId, Exchange, ExchangeSequence, VertexId};

pub const MAX_VERTICES: usize = 8;
pub const MAX_ARCS: usize = 32;

#[derive(Clone, Debug)]
pub struct CompactDigraph {
    n: usize,
    tails: Vec<u8>,
    heads: Vec<u8>,
    /// Arcs incident to each vertex.
    incident: [u32; MAX_VERTICES],
}

/// A path in a tree: arcs in order from the start vertex, and a mask of the
/// positions traversed backwards.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CompactPath {
    pub arcs: [u8; MAX_VERTICES],
    pub len: u8,
    pub backward: u8,
}

impl CompactPath {
    pub fn is_directed(&self) -> bool {
        self.backward == 0
    }

    pub fn arcs(&self) -> &[u8] {
        &self.arcs[..self.len as usize]
    }

    pub fn mask(&self) -> u32 {
        self.arcs().iter().fold(0, |m, &a| m | 1 << a)
    }
}

/// Exchange steps as `(removed, added)` arc ids.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CompactRun {
    pub steps: [(u8, u8); MAX_VERTICES],
    pub len: u8,
    pub phase1: u8,
}

impl CompactRun {
    pub fn steps(&self) -> &[(u8, u8)] {
        &self.steps[..self.len as usize]
    }

    pub fn to_sequence(&self, start: u32) -> ExchangeSequence {
        ExchangeSequence::new(
            from_mask(start),
            self.steps()
                .iter()
                .map(|&(r, a)| Exchange::new(r as usize, a as usize))
                .collect(),
        )
    }
}

pub fn to_mask(set: &BasisSet) -> u32 {
    set.iter().fold(0, |m, ElementId(e)| m | 1 << e)
}

pub fn from_mask(mask: u32) -> BasisSet {
    (0..MAX_ARCS)
        .filter(|i| mask >> i & 1 == 1)
        .map(ElementId)
        .collect()
}

impl CompactDigraph {
    pub fn new(d: &Digraph) -> Option<Self> {
        if d.vertex_count() > MAX_VERTICES || d.arc_count() > MAX_ARCS {
            return None;
        }
        let mut incident = [0u32; MAX_VERTICES];
        for (e, &(u, v)) in d.arcs().iter().enumerate() {
            incident[u] |= 1 << e;
            incident[v] |= 1 << e;
        }
        Some(CompactDigraph {
            n: d.vertex_count(),
            tails: d.arcs().iter().map(|a| a.0 as u8).collect(),
            heads: d.arcs().iter().map(|a| a.1 as u8).collect(),
            incident,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn is_spanning_tree(&self, tree: u32) -> bool {
        if tree.count_ones() as usize + 1 != self.n {
            return false;
        }
        let mut reached = 1u32;
        let mut frontier = 1u32;
        while frontier != 0 {
            let x = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let mut arcs = self.incident[x] & tree;
            while arcs != 0 {
                let e = arcs.trailing_zeros() as usize;
                arcs &= arcs - 1;
                let y = (self.tails[e] ^ self.heads[e]) as usize ^ x;
                if reached >> y & 1 == 0 {
                    reached |= 1 << y;
                    frontier |= 1 << y;
                }
            }
        }
        reached.count_ones() as usize == self.n
    }

    /// The path from `u` to `v` in `tree`, assumed to be a spanning tree.
    pub fn path(&self, tree: u32, u: VertexId, v: VertexId) -> CompactPath {
        // via[x] = arc used to enter x, or u8::MAX.
        let mut via = [u8::MAX; MAX_VERTICES];
        let mut stack = [0u8; MAX_VERTICES];
        let mut top = 1;
        stack[0] = u as u8;
        let mut seen = 1u32 << u;
        while top > 0 {
            top -= 1;
            let x = stack[top] as usize;
            if x == v {
                break;
            }
            let mut arcs = self.incident[x] & tree;
            while arcs != 0 {
                let e = arcs.trailing_zeros() as usize;
                arcs &= arcs - 1;
                let y = (self.tails[e] ^ self.heads[e]) as usize ^ x;
                if seen >> y & 1 == 0 {
                    seen |= 1 << y;
                    via[y] = e as u8;
                    stack[top] = y as u8;
                    top += 1;
                }
            }
        }
        let mut rev = CompactPath::default();
        let mut at = v;
        while at != u {
            let e = via[at] as usize;
            let forward = self.heads[e] as usize == at;
            if !forward {
                rev.backward |= 1 << rev.len;
            }
            rev.arcs[rev.len as usize] = e as u8;
            rev.len += 1;
            at ^= self.tails[e] as usize ^ self.heads[e] as usize;
        }
        let mut path = CompactPath {
            len: rev.len,
            ..Default::default()
        };
        let k = rev.len as usize;
        for i in 0..k {
            path.arcs[i] = rev.arcs[k - 1 - i];
            if rev.backward >> (k - 1 - i) & 1 == 1 {
                path.backward |= 1 << i;
            }
        }
        path
    }

    pub fn is_st_embracing(&self, tree: u32, s: VertexId, t: VertexId) -> bool {
        self.is_spanning_tree(tree) && self.path(tree, s, t).is_directed()
    }

    /// Vertices reachable from `x` in the forest `arcs`, as a mask.
    fn component(&self, arcs: u32, x: VertexId) -> u32 {
        let mut reached = 1u32 << x;
        let mut frontier = reached;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let mut out = self.incident[v] & arcs;
            while out != 0 {
                let e = out.trailing_zeros() as usize;
                out &= out - 1;
                let y = (self.tails[e] ^ self.heads[e]) as usize ^ v;
                if reached >> y & 1 == 0 {
                    reached |= 1 << y;
                    frontier |= 1 << y;
                }
            }
        }
        reached
    }

    /// The two-phase monotone exchange sequence between `st`-embracing
    /// trees, step for step identical to [`super::theorem2_run`]. Returns
    /// `None` when a precondition fails.
    pub fn theorem2(&self, s: VertexId, t: VertexId, start: u32, target: u32) -> Option<CompactRun> {
        if !self.path(start, s, t).is_directed() {
            return None;
        }
        Theorem2Target::new(self, s, t, target)?.run(start)
    }
}

/// A target tree with its `s`–`t` path precomputed, for running
/// [`CompactDigraph::theorem2`] from many start trees.
#[derive(Clone, Debug)]
pub struct Theorem2Target<'a> {
    digraph: &'a CompactDigraph,
    s: VertexId,
    target: u32,
    path: CompactPath,
}

impl<'a> Theorem2Target<'a> {
    pub fn new(digraph: &'a CompactDigraph, s: VertexId, t: VertexId, target: u32) -> Option<Self> {
        let path = digraph.path(target, s, t);
        path.is_directed().then_some(Theorem2Target {
            digraph,
            s,
            target,
            path,
        })
    }

    /// Runs from `start`, assumed `st`-embracing.
    pub fn run(&self, start: u32) -> Option<CompactRun> {
        let d = self.digraph;
        let target = self.target;
        let mut run = CompactRun::default();
        let mut current = start;
        let mut rest = self.path.mask();
        let mut v_prev = self.s;
        for &f in self.path.arcs() {
            rest &= !(1 << f);
            let v_i = d.heads[f as usize] as usize;
            if current >> f & 1 == 0 {
                let cycle = d.path(current, v_prev, v_i);
                let removed = *cycle.arcs().iter().rev().find(|&&e| rest >> e & 1 == 0)?;
                current = current & !(1 << removed) | 1 << f;
                run.steps[run.len as usize] = (removed, f);
                run.len += 1;
            }
            v_prev = v_i;
        }
        run.phase1 = run.len;
        while current != target {
            let remove = (current & !target).trailing_zeros() as u8;
            let base = current & !(1 << remove);
            // The arc restores a tree exactly when it crosses the cut left
            // by the removed arc.
            let side = d.component(base, d.tails[remove as usize] as usize);
            let mut candidates = target & !current;
            let add = loop {
                if candidates == 0 {
                    return None;
                }
                let f = candidates.trailing_zeros() as usize;
                candidates &= candidates - 1;
                if (side >> d.tails[f] ^ side >> d.heads[f]) & 1 == 1 {
                    break f as u8;
                }
            };
            current = base | 1 << add;
            run.steps[run.len as usize] = (remove, add);
            run.len += 1;
        }
        Some(run)
    }
}
