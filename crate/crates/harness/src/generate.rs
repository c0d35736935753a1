//! Seeded random instances. All randomness comes from `ChaCha8Rng`, whose
//! output stream is fixed across platforms and releases.

use embrace_core::affine::{
    check_general_position, is_zero_embracing, AffineOracle, PointConfiguration, RationalPoint,
};
use embrace_core::graphic::enumerate::embracing_trees;
use embrace_core::graphic::Digraph;
use embrace_core::om::for_each_subset;
use embrace_core::{BasisSet, ElementId, VertexId};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::instance::{Instance, Payload};

const MAX_ATTEMPTS: usize = 1000;
/// Largest vertex count for which embracing trees are drawn uniformly from
/// the full enumeration.
pub const ENUMERATION_MAX_N: usize = 8;
/// Enumeration is also skipped for arc counts above this multiple of `n`.
const ENUMERATION_MAX_DENSITY: usize = 2;
/// Coordinates are `p / q` with `|p| <= MAX_NUMERATOR`, `1 <= q <= MAX_DENOMINATOR`.
const MAX_NUMERATOR: i64 = 12;
const MAX_DENOMINATOR: i64 = 4;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GenerationError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("generation failed after {0} attempts")]
    GenerationFailed(usize),
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Connected digraph on `n` vertices with `m` arcs, an `st` pair joined by
/// a planted directed path, and two `st`-embracing spanning trees (distinct
/// whenever the digraph has more than one).
pub fn gen_graphic(n: usize, m: usize, seed: u64) -> Result<Instance, GenerationError> {
    if n < 2 || m + 1 < n || m > n * (n - 1) {
        return Err(GenerationError::InvalidParameters(format!(
            "need n >= 2 and n - 1 <= m <= n(n - 1), got n = {n}, m = {m}"
        )));
    }
    let mut rng = rng(seed);
    for _ in 0..MAX_ATTEMPTS {
        let (d, s, t) = layered_digraph(&mut rng, n, m);
        let (a, b) = if n <= ENUMERATION_MAX_N && m <= ENUMERATION_MAX_DENSITY * n {
            let trees = embracing_trees(&d, s, t);
            let a = rng.gen_range(0..trees.len());
            let b = if trees.len() == 1 {
                a
            } else {
                (a + rng.gen_range(1..trees.len())) % trees.len()
            };
            (trees[a].clone(), trees[b].clone())
        } else {
            let a = walk_tree(&mut rng, &d, s, t);
            let mut b = walk_tree(&mut rng, &d, s, t);
            for _ in 0..MAX_ATTEMPTS {
                if b != a {
                    break;
                }
                b = walk_tree(&mut rng, &d, s, t);
            }
            (a, b)
        };
        if let Ok(inst) = Instance::graphic(d, s, t, a, b) {
            return Ok(inst.with_seed(seed));
        }
    }
    Err(GenerationError::GenerationFailed(MAX_ATTEMPTS))
}

/// Random vertex order; a directed path from the first vertex `s` to the
/// vertex `t` at a random depth, the remaining vertices hung off earlier
/// ones, then extra random arcs. Arc ids are shuffled.
fn layered_digraph(rng: &mut ChaCha8Rng, n: usize, m: usize) -> (Digraph, VertexId, VertexId) {
    let mut order: Vec<VertexId> = (0..n).collect();
    order.shuffle(rng);
    let depth = rng.gen_range(1..n);
    let mut present = vec![vec![false; n]; n];
    let mut arcs = Vec::with_capacity(m);
    let mut push = |arcs: &mut Vec<(VertexId, VertexId)>, u: VertexId, v: VertexId| {
        present[u][v] = true;
        arcs.push((u, v));
    };
    for w in order[..=depth].windows(2) {
        push(&mut arcs, w[0], w[1]);
    }
    for j in depth + 1..n {
        let earlier = order[rng.gen_range(0..j)];
        if rng.gen_bool(0.5) {
            push(&mut arcs, earlier, order[j]);
        } else {
            push(&mut arcs, order[j], earlier);
        }
    }
    let mut spare: Vec<(VertexId, VertexId)> = (0..n)
        .flat_map(|u| (0..n).map(move |v| (u, v)))
        .filter(|&(u, v)| u != v && !present[u][v])
        .collect();
    spare.shuffle(rng);
    arcs.extend(spare.into_iter().take(m - (n - 1)));
    arcs.shuffle(rng);
    let d = Digraph::new(n, arcs).expect("generated arcs are valid");
    (d, order[0], order[depth])
}

/// A spanning tree through a random directed `s`–`t` path: randomized
/// depth-first search for the path, then Kruskal over shuffled arcs.
fn walk_tree(rng: &mut ChaCha8Rng, d: &Digraph, s: VertexId, t: VertexId) -> BasisSet {
    let n = d.vertex_count();
    let mut out_arcs: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (e, &(u, _)) in d.arcs().iter().enumerate() {
        out_arcs[u].push(e);
    }
    for list in &mut out_arcs {
        list.shuffle(rng);
    }
    // Depth-first search with a global visited set; the arcs on the stack
    // form a simple path when t is reached.
    let mut visited = vec![false; n];
    visited[s] = true;
    let mut path: Vec<usize> = Vec::new();
    let mut cursor = vec![0usize; n];
    let mut at = s;
    while at != t {
        if let Some(&e) = out_arcs[at].get(cursor[at]) {
            cursor[at] += 1;
            let head = d.arcs()[e].1;
            if !visited[head] {
                visited[head] = true;
                path.push(e);
                at = head;
            }
        } else {
            let e = path.pop().expect("a directed s-t path exists");
            at = d.arcs()[e].0;
        }
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut tree = Vec::with_capacity(n - 1);
    let mut rest: Vec<usize> = (0..d.arc_count()).filter(|e| !path.contains(e)).collect();
    rest.shuffle(rng);
    for e in path.into_iter().chain(rest) {
        let (u, v) = d.arcs()[e];
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        if ru != rv {
            parent[ru] = rv;
            tree.push(ElementId(e));
        }
    }
    BasisSet::new(tree)
}

fn random_point(rng: &mut ChaCha8Rng, d: usize) -> RationalPoint {
    let coords: Vec<(i64, i64)> = (0..d)
        .map(|_| {
            (
                rng.gen_range(-MAX_NUMERATOR..=MAX_NUMERATOR),
                rng.gen_range(1..=MAX_DENOMINATOR),
            )
        })
        .collect();
    RationalPoint::from_fractions(&coords)
}

/// `count` random rational points around the origin (the anchor, appended
/// last) in general position, with two disjoint `0`-embracing simplices.
pub fn gen_affine(d: usize, count: usize, seed: u64) -> Result<Instance, GenerationError> {
    if d == 0 || count < 2 * (d + 1) {
        return Err(GenerationError::InvalidParameters(format!(
            "need d >= 1 and count >= 2(d + 1), got d = {d}, count = {count}"
        )));
    }
    let mut rng = rng(seed);
    for _ in 0..MAX_ATTEMPTS {
        let points: Vec<RationalPoint> = (0..count).map(|_| random_point(&mut rng, d)).collect();
        let Ok(config) = PointConfiguration::origin_anchored(d, points) else {
            continue;
        };
        if !check_general_position(&config).is_general() {
            continue;
        }
        let mut simplices = Vec::new();
        for_each_subset(count, d + 1, |idx| {
            let simplex = BasisSet::from_indices(idx);
            if is_zero_embracing(&config, &simplex) == Ok(true) {
                simplices.push(simplex);
            }
        });
        let mut pairs = Vec::new();
        for x in &simplices {
            for y in &simplices {
                if x.intersection_len(y) == 0 {
                    pairs.push((x, y));
                }
            }
        }
        if pairs.is_empty() {
            continue;
        }
        let (a, b) = pairs[rng.gen_range(0..pairs.len())];
        let (a, b) = (a.clone(), b.clone());
        if let Ok(inst) = Instance::new(Payload::Affine(AffineOracle::new(config)), a, b) {
            return Ok(inst.with_seed(seed));
        }
    }
    Err(GenerationError::GenerationFailed(MAX_ATTEMPTS))
}

/// `count` graphic instances. Instance `i` has `n` uniform in
/// `2..=max_n` (at least 3 when `max_n >= 3`), `m` uniform in
/// `n - 1..=min(3n, n(n - 1))`, and its own seed, all drawn from one
/// stream seeded with `seed`.
pub fn graphic_batch(count: usize, seed: u64, max_n: usize) -> Result<Vec<Instance>, GenerationError> {
    if max_n < 2 {
        return Err(GenerationError::InvalidParameters(format!("max n {max_n} below 2")));
    }
    let mut master = rng(seed);
    let low = if max_n >= 3 { 3 } else { 2 };
    (0..count)
        .map(|_| {
            let n = master.gen_range(low..=max_n);
            let m = master.gen_range(n - 1..=(3 * n).min(n * (n - 1)));
            gen_graphic(n, m, master.gen())
        })
        .collect()
}

/// `count` affine instances in dimension `d` with between `2(d + 1)` and
/// `2(d + 1) + 2` points besides the origin.
pub fn affine_batch(count: usize, seed: u64, d: usize) -> Result<Vec<Instance>, GenerationError> {
    let mut master = rng(seed);
    (0..count)
        .map(|_| {
            let points = master.gen_range(2 * (d + 1)..=2 * (d + 1) + 2);
            gen_affine(d, points, master.gen())
        })
        .collect()
}
