//! Exact breadth-first distance oracles over embracing bases.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::om::{Anchor, BasisSet, ElementId, Exchange, ExchangeSequence, OmError, OrientedMatroid};
use crate::text::{content_lines, parse_ids, parse_usize, ParseError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Distance {
    Finite(usize),
    /// The reachable component was exhausted without meeting the target.
    Infinite,
    /// Not reached within the given depth bound, with unexplored bases left.
    BeyondBound(usize),
}

impl Distance {
    pub fn finite(self) -> Option<usize> {
        match self {
            Distance::Finite(d) => Some(d),
            _ => None,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => f.write_str("infinite"),
            Distance::BeyondBound(b) => write!(f, "beyond {b}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceResult {
    pub distance: Distance,
    /// Present exactly when the distance is finite; lexicographically
    /// smallest among shortest sequences.
    pub witness: Option<ExchangeSequence>,
    /// Number of distinct embracing bases visited.
    pub explored: usize,
}

/// Which elements may enter the basis during a search.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum GroundMode {
    /// Only elements of `A ∪ B`.
    #[default]
    Union,
    /// Every element of the ground set other than the anchor.
    Full,
}

impl fmt::Display for GroundMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroundMode::Union => "union",
            GroundMode::Full => "full",
        })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchOptions {
    pub ground_mode: GroundMode,
    pub monotone_only: bool,
    pub max_depth: Option<usize>,
}

impl SearchOptions {
    pub fn with_mode(ground_mode: GroundMode) -> Self {
        SearchOptions {
            ground_mode,
            ..Default::default()
        }
    }

    pub fn monotone(mut self) -> Self {
        self.monotone_only = true;
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Endpoint {
    Start,
    Target,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DistanceError {
    #[error("{0:?} basis is not an embracing basis")]
    NotEmbracing(Endpoint),
    #[error("bases have different sizes ({0} and {1})")]
    CardinalityMismatch(usize, usize),
    #[error(transparent)]
    Om(#[from] OmError),
}

fn embracing_basis<O: OrientedMatroid + ?Sized>(oracle: &O, basis: &BasisSet, anchor: &Anchor) -> bool {
    oracle.is_basis(basis) && matches!(oracle.is_embracing(basis, anchor), Ok(true))
}

fn check_endpoints<O: OrientedMatroid + ?Sized>(
    oracle: &O,
    anchor: &Anchor,
    a: &BasisSet,
    b: &BasisSet,
) -> Result<(), DistanceError> {
    if !embracing_basis(oracle, a, anchor) {
        return Err(DistanceError::NotEmbracing(Endpoint::Start));
    }
    if !embracing_basis(oracle, b, anchor) {
        return Err(DistanceError::NotEmbracing(Endpoint::Target));
    }
    Ok(())
}

fn candidates<O: OrientedMatroid + ?Sized>(
    oracle: &O,
    anchor: &Anchor,
    a: &BasisSet,
    b: &BasisSet,
    mode: GroundMode,
) -> Vec<ElementId> {
    let pool: Vec<ElementId> = match mode {
        GroundMode::Union => a.union(b).iter().collect(),
        GroundMode::Full => (0..oracle.ground_size()).map(ElementId).collect(),
    };
    pool.into_iter()
        .filter(|e| anchor.element() != Some(*e))
        .collect()
}

/// Minimum length of an embracing exchange sequence from `a` to `b`.
///
/// Breadth-first over embracing bases; neighbours are expanded in
/// ascending `(remove, add)` order, so the witness is the lexicographically
/// smallest shortest sequence.
pub fn embracing_distance<O: OrientedMatroid + ?Sized>(
    oracle: &O,
    anchor: &Anchor,
    a: &BasisSet,
    b: &BasisSet,
    opts: SearchOptions,
) -> Result<DistanceResult, DistanceError> {
    check_endpoints(oracle, anchor, a, b)?;
    if a == b {
        return Ok(DistanceResult {
            distance: Distance::Finite(0),
            witness: Some(ExchangeSequence::empty(a.clone())),
            explored: 1,
        });
    }
    let pool = candidates(oracle, anchor, a, b, opts.ground_mode);

    // nodes[i] = (basis, parent index, step into it, depth)
    let mut nodes: Vec<(BasisSet, usize, Option<Exchange>, usize)> = vec![(a.clone(), 0, None, 0)];
    let mut index: HashMap<BasisSet, usize> = HashMap::from([(a.clone(), 0)]);
    let mut rejected: HashSet<BasisSet> = HashSet::new();
    let mut queue = VecDeque::from([0usize]);
    let mut truncated = false;

    while let Some(i) = queue.pop_front() {
        let (current, _, _, depth) = nodes[i].clone();
        if opts.max_depth.is_some_and(|max| depth >= max) {
            truncated = true;
            continue;
        }
        let overlap = current.intersection_len(b);
        for remove in current.iter() {
            for &add in &pool {
                let Some(next) = current.exchange(remove, add) else {
                    continue;
                };
                if opts.monotone_only && next.intersection_len(b) < overlap {
                    continue;
                }
                if index.contains_key(&next) || rejected.contains(&next) {
                    continue;
                }
                if !embracing_basis(oracle, &next, anchor) {
                    rejected.insert(next);
                    continue;
                }
                let id = nodes.len();
                let found = next == *b;
                nodes.push((next.clone(), i, Some(Exchange { remove, add }), depth + 1));
                index.insert(next, id);
                if found {
                    let witness = rebuild(a, &nodes, id);
                    return Ok(DistanceResult {
                        distance: Distance::Finite(witness.len()),
                        witness: Some(witness),
                        explored: nodes.len(),
                    });
                }
                queue.push_back(id);
            }
        }
    }
    Ok(DistanceResult {
        distance: match opts.max_depth {
            Some(max) if truncated => Distance::BeyondBound(max),
            _ => Distance::Infinite,
        },
        witness: None,
        explored: nodes.len(),
    })
}

fn rebuild(
    start: &BasisSet,
    nodes: &[(BasisSet, usize, Option<Exchange>, usize)],
    mut at: usize,
) -> ExchangeSequence {
    let mut steps = Vec::new();
    while let Some(step) = nodes[at].2 {
        steps.push(step);
        at = nodes[at].1;
    }
    steps.reverse();
    ExchangeSequence::new(start.clone(), steps)
}

/// [`embracing_distance`] restricted to steps that never decrease
/// `|T ∩ B|`.
pub fn monotone_embracing_distance<O: OrientedMatroid + ?Sized>(
    oracle: &O,
    anchor: &Anchor,
    a: &BasisSet,
    b: &BasisSet,
    opts: SearchOptions,
) -> Result<DistanceResult, DistanceError> {
    embracing_distance(oracle, anchor, a, b, opts.monotone())
}

/// `|A \ B|`: the exchange distance when signs are ignored.
pub fn unoriented_distance(a: &BasisSet, b: &BasisSet) -> Result<usize, DistanceError> {
    if a.len() != b.len() {
        return Err(DistanceError::CardinalityMismatch(a.len(), b.len()));
    }
    Ok(a.difference(b).len())
}

/// Symmetric exchanges `(e, f)` with `e ∈ first \ second`, `f ∈ second \
/// first`, such that `first - e + f` and `second - f + e` are both
/// embracing bases. Ascending order.
pub fn symmetric_exchanges<O: OrientedMatroid + ?Sized>(
    oracle: &O,
    anchor: &Anchor,
    first: &BasisSet,
    second: &BasisSet,
) -> Vec<(ElementId, ElementId)> {
    let mut out = Vec::new();
    for e in first.difference(second) {
        for f in second.difference(first) {
            let (Some(x), Some(y)) = (first.exchange(e, f), second.exchange(f, e)) else {
                continue;
            };
            if embracing_basis(oracle, &x, anchor) && embracing_basis(oracle, &y, anchor) {
                out.push((e, f));
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairOptions {
    /// Stop exploring once this many pairs have been discovered.
    pub max_pairs: usize,
    /// Record the pair graph only when it has at most this many pairs.
    pub record_limit: usize,
}

impl Default for PairOptions {
    fn default() -> Self {
        PairOptions {
            max_pairs: 1_000_000,
            record_limit: 10_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairEdge {
    pub from: usize,
    pub to: usize,
    /// `e` leaves the first basis, `f` leaves the second.
    pub exchange: (ElementId, ElementId),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairReachabilityReport {
    pub reachable: bool,
    /// Minimum number of symmetric exchanges from `(A, B)` to `(B, A)`.
    pub exchanges: Option<usize>,
    pub explored: usize,
    /// Exploration hit [`PairOptions::max_pairs`]; an unreachable verdict is
    /// then inconclusive.
    pub truncated: bool,
    /// Reachable pairs in discovery order (index 0 is `(A, B)`), when small.
    pub pairs: Option<Vec<(BasisSet, BasisSet)>>,
    pub edges: Option<Vec<PairEdge>>,
}

/// Breadth-first search over ordered pairs of embracing bases connected by
/// embracing symmetric exchanges, from `(A, B)` towards `(B, A)`.
pub fn symmetric_exchange_reachability<O: OrientedMatroid + ?Sized>(
    oracle: &O,
    anchor: &Anchor,
    a: &BasisSet,
    b: &BasisSet,
    opts: PairOptions,
) -> Result<PairReachabilityReport, DistanceError> {
    check_endpoints(oracle, anchor, a, b)?;
    let target = (b.clone(), a.clone());
    let mut pairs = vec![(a.clone(), b.clone())];
    let mut depth = vec![0usize];
    let mut index = HashMap::from([((a.clone(), b.clone()), 0usize)]);
    let mut edges = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    let mut exchanges = (pairs[0] == target).then_some(0);
    let mut truncated = false;

    while let Some(i) = queue.pop_front() {
        let (first, second) = pairs[i].clone();
        for (e, f) in symmetric_exchanges(oracle, anchor, &first, &second) {
            let next = (
                first.exchange(e, f).expect("feasible"),
                second.exchange(f, e).expect("feasible"),
            );
            let to = match index.get(&next) {
                Some(&j) => j,
                None => {
                    if pairs.len() >= opts.max_pairs {
                        truncated = true;
                        continue;
                    }
                    let j = pairs.len();
                    if next == target && exchanges.is_none() {
                        exchanges = Some(depth[i] + 1);
                    }
                    index.insert(next.clone(), j);
                    pairs.push(next);
                    depth.push(depth[i] + 1);
                    queue.push_back(j);
                    j
                }
            };
            edges.push(PairEdge {
                from: i,
                to,
                exchange: (e, f),
            });
        }
    }
    let small = pairs.len() <= opts.record_limit;
    Ok(PairReachabilityReport {
        reachable: exchanges.is_some(),
        exchanges,
        explored: pairs.len(),
        truncated,
        pairs: small.then_some(pairs),
        edges: small.then_some(edges),
    })
}

/// Witness text:
///
/// ```text
/// start: 0 2 3 4
/// - 3 + 1
/// - 4 + 5
/// distance: 2
/// ```
pub fn format_witness(start: &BasisSet, result: &DistanceResult) -> String {
    let mut out = format!("start: {start}\n");
    if let Some(w) = &result.witness {
        for step in &w.steps {
            let _ = writeln!(out, "{step}");
        }
    }
    let _ = writeln!(out, "distance: {}", result.distance);
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessFile {
    pub sequence: ExchangeSequence,
    pub distance: Distance,
}

pub fn parse_witness(text: &str) -> Result<WitnessFile, ParseError> {
    let mut lines = content_lines(text);
    let (sline, first) = lines
        .next()
        .ok_or_else(|| ParseError::new(0, "missing `start:` line"))?;
    let rest = first
        .strip_prefix("start:")
        .ok_or_else(|| ParseError::new(sline, "expected `start: <ids>`"))?;
    let start = BasisSet::from_indices(&parse_ids(
        &rest.split_whitespace().collect::<Vec<_>>(),
        sline,
        "element id",
    )?);
    let mut steps = Vec::new();
    let mut distance = None;
    for (line_no, line) in lines {
        if distance.is_some() {
            return Err(ParseError::new(line_no, "content after `distance:` line"));
        }
        if let Some(value) = line.strip_prefix("distance:") {
            let value = value.trim();
            distance = Some(match value.split_whitespace().collect::<Vec<_>>().as_slice() {
                ["infinite"] => Distance::Infinite,
                ["beyond", k] => Distance::BeyondBound(parse_usize(k, line_no, "bound")?),
                [k] => Distance::Finite(parse_usize(k, line_no, "distance")?),
                _ => return Err(ParseError::new(line_no, "invalid distance")),
            });
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens.as_slice() {
            ["-", r, "+", a] => steps.push(Exchange::new(
                parse_usize(r, line_no, "element id")?,
                parse_usize(a, line_no, "element id")?,
            )),
            _ => return Err(ParseError::new(line_no, "expected `- <removed> + <added>`")),
        }
    }
    let distance = distance.ok_or_else(|| ParseError::new(0, "missing `distance:` line"))?;
    match distance {
        Distance::Finite(k) if k != steps.len() => {
            return Err(ParseError::new(0, format!("distance {k} but {} steps", steps.len())))
        }
        Distance::Infinite | Distance::BeyondBound(_) if !steps.is_empty() => {
            return Err(ParseError::new(0, "steps listed for an unreachable target"))
        }
        _ => {}
    }
    Ok(WitnessFile {
        sequence: ExchangeSequence::new(start, steps),
        distance,
    })
}
