//! Exhaustive enumeration helpers for small digraphs.

use crate::om::{BasisSet, ElementId, VertexId};

use super::{tree_path, Digraph};

/// All spanning trees of `d`, as sorted arc sets in lexicographic order.
pub fn spanning_trees(d: &Digraph) -> Vec<BasisSet> {
    let n = d.vertex_count();
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut chosen = Vec::with_capacity(n - 1);
    let labels: Vec<usize> = (0..n).collect();
    grow(d, 0, &mut chosen, labels, &mut out);
    out
}

fn grow(
    d: &Digraph,
    next: usize,
    chosen: &mut Vec<usize>,
    labels: Vec<usize>,
    out: &mut Vec<BasisSet>,
) {
    let need = d.vertex_count() - 1 - chosen.len();
    if need == 0 {
        out.push(BasisSet::from_indices(chosen));
        return;
    }
    if d.arc_count() - next < need {
        return;
    }
    let (a, b) = d.arcs()[next];
    let (la, lb) = (labels[a], labels[b]);
    if la != lb {
        let merged: Vec<usize> = labels
            .iter()
            .map(|&l| if l == lb { la } else { l })
            .collect();
        chosen.push(next);
        grow(d, next + 1, chosen, merged, out);
        chosen.pop();
    }
    grow(d, next + 1, chosen, labels, out);
}

/// Spanning trees whose `s`–`t` path is directed.
pub fn embracing_trees(d: &Digraph, s: VertexId, t: VertexId) -> Vec<BasisSet> {
    spanning_trees(d)
        .into_iter()
        .filter(|tree| {
            tree_path(d, tree, s, t)
                .map(|p| p.is_directed())
                .unwrap_or(false)
        })
        .collect()
}

/// Arcs of the complete digraph on `n` vertices in lexicographic order;
/// bit `i` of a digraph mask selects arc `i`.
pub fn complete_arcs(n: usize) -> Vec<(VertexId, VertexId)> {
    let mut arcs = Vec::with_capacity(n * n.saturating_sub(1));
    for a in 0..n {
        for b in 0..n {
            if a != b {
                arcs.push((a, b));
            }
        }
    }
    arcs
}

pub fn digraph_from_mask(n: usize, mask: u64) -> Digraph {
    let arcs = complete_arcs(n)
        .into_iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, a)| a)
        .collect();
    Digraph::new(n, arcs).expect("complete-digraph arcs are valid")
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut p: Vec<usize> = (0..n).collect();
    let mut out = vec![p.clone()];
    loop {
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).expect("exists");
        p.swap(i - 1, j);
        p[i..].reverse();
        out.push(p.clone());
    }
}

/// Relabels arc masks under a vertex permutation via byte lookup tables.
struct MaskPermuter {
    tables: Vec<[u64; 256]>,
}

impl MaskPermuter {
    fn new(n: usize, perm: &[usize]) -> Self {
        let arcs = complete_arcs(n);
        let index = |a: usize, b: usize| arcs.iter().position(|&x| x == (a, b)).unwrap();
        let image: Vec<usize> = arcs.iter().map(|&(a, b)| index(perm[a], perm[b])).collect();
        let chunks = arcs.len().div_ceil(8).max(1);
        let tables = (0..chunks)
            .map(|c| {
                let mut table = [0u64; 256];
                for (byte, slot) in table.iter_mut().enumerate() {
                    for bit in 0..8 {
                        let arc = c * 8 + bit;
                        if byte >> bit & 1 == 1 && arc < image.len() {
                            *slot |= 1 << image[arc];
                        }
                    }
                }
                table
            })
            .collect();
        MaskPermuter { tables }
    }

    fn apply(&self, mask: u64) -> u64 {
        self.tables
            .iter()
            .enumerate()
            .fold(0, |acc, (c, t)| acc | t[(mask >> (8 * c) & 0xff) as usize])
    }
}

/// One isomorphism class of digraphs, represented by its smallest mask.
#[derive(Clone, Debug)]
pub struct DigraphClass {
    pub mask: u64,
    pub digraph: Digraph,
    /// Vertex permutations fixing the representative, identity included.
    pub automorphisms: Vec<Vec<usize>>,
}

impl DigraphClass {
    /// Ordered vertex pairs `(s, t)`, one per orbit of the automorphism
    /// group (the lexicographically smallest member).
    pub fn anchor_representatives(&self) -> Vec<(VertexId, VertexId)> {
        let n = self.digraph.vertex_count();
        let mut out = Vec::new();
        for s in 0..n {
            for t in 0..n {
                if s == t {
                    continue;
                }
                let smallest = self
                    .automorphisms
                    .iter()
                    .all(|p| (p[s], p[t]) >= (s, t));
                if smallest {
                    out.push((s, t));
                }
            }
        }
        out
    }
}

/// Every digraph on `n` vertices without parallel arcs, up to relabeling,
/// ordered by representative mask. Optionally only the weakly connected
/// ones. Supported for `n <= 5`.
pub fn digraph_classes(n: usize, connected_only: bool) -> Vec<DigraphClass> {
    assert!(n <= 5, "exhaustive digraph enumeration is limited to n <= 5");
    let m = n * n.saturating_sub(1);
    let perms = permutations(n);
    let permuters: Vec<MaskPermuter> = perms.iter().map(|p| MaskPermuter::new(n, p)).collect();
    let mut out = Vec::new();
    'masks: for mask in 0..(1u64 << m) {
        let mut automorphisms = Vec::new();
        for (perm, permuter) in perms.iter().zip(&permuters) {
            let image = permuter.apply(mask);
            if image < mask {
                continue 'masks;
            }
            if image == mask {
                automorphisms.push(perm.clone());
            }
        }
        let digraph = digraph_from_mask(n, mask);
        if connected_only && !digraph.is_connected() {
            continue;
        }
        out.push(DigraphClass {
            mask,
            digraph,
            automorphisms,
        });
    }
    out
}

/// Arc ids of `tree` as a mask (for trees over at most 64 arcs).
pub fn arc_mask(tree: &BasisSet) -> u64 {
    tree.iter().fold(0, |acc, ElementId(e)| acc | 1 << e)
}
