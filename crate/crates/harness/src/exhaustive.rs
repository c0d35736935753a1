//! Exhaustive audit of the two-phase construction over every weakly
//! connected digraph on `n <= 5` vertices (up to relabeling), every anchor
//! pair up to automorphism, and every ordered pair of `st`-embracing trees.
//!
//! Each run is checked step by step against the enumerated set of
//! embracing trees, and one reverse breadth-first search per target tree
//! gives the exact monotone distance from every start tree at once.

use std::collections::VecDeque;
use std::fmt;

use embrace_core::graphic::compact::{from_mask, to_mask, CompactDigraph, Theorem2Target};
use embrace_core::graphic::enumerate::{digraph_classes, embracing_trees, DigraphClass};
use embrace_core::graphic::{theorem2_run, GraphicOracle};
use embrace_core::{verify_exchange_sequence, Anchor};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExhaustiveReport {
    pub n: usize,
    pub classes: usize,
    pub anchors: usize,
    pub pairs: u64,
    pub disjoint_pairs: u64,
    /// Pairs also run through the general implementation and oracle check.
    pub cross_checked: u64,
    pub max_length: usize,
    pub max_monotone_distance: usize,
    pub violation_count: u64,
    /// The first few violations, for diagnostics.
    pub violations: Vec<String>,
}

const KEPT_VIOLATIONS: usize = 20;

impl ExhaustiveReport {
    fn merge(&mut self, other: ExhaustiveReport) {
        self.classes += other.classes;
        self.anchors += other.anchors;
        self.pairs += other.pairs;
        self.disjoint_pairs += other.disjoint_pairs;
        self.cross_checked += other.cross_checked;
        self.max_length = self.max_length.max(other.max_length);
        self.max_monotone_distance = self.max_monotone_distance.max(other.max_monotone_distance);
        self.violation_count += other.violation_count;
        self.violations.extend(other.violations);
        self.violations.sort();
        self.violations.truncate(KEPT_VIOLATIONS);
    }

    fn violation(&mut self, what: String) {
        self.violation_count += 1;
        if self.violations.len() < KEPT_VIOLATIONS {
            self.violations.push(what);
        }
    }
}

impl fmt::Display for ExhaustiveReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n={} classes={} anchors={} pairs={} disjoint={} cross-checked={} max-length={} max-monotone-distance={} violations={}",
            self.n,
            self.classes,
            self.anchors,
            self.pairs,
            self.disjoint_pairs,
            self.cross_checked,
            self.max_length,
            self.max_monotone_distance,
            self.violation_count
        )?;
        for v in &self.violations {
            write!(f, "\n  {v}")?;
        }
        Ok(())
    }
}

/// Audits all digraphs on exactly `n` vertices. Every `cross_check_every`-th
/// pair (counting from the first) is also run through the general
/// implementation and compared.
pub fn exhaustive_theorem2_audit(n: usize, cross_check_every: u64, workers: usize) -> ExhaustiveReport {
    let classes = digraph_classes(n, true);
    let workers = workers.max(1);
    let mut report = ExhaustiveReport {
        n,
        ..Default::default()
    };
    let parts: Vec<ExhaustiveReport> = std::thread::scope(|scope| {
        let classes = &classes;
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                scope.spawn(move || {
                    let mut part = ExhaustiveReport::default();
                    for (i, class) in classes.iter().enumerate().skip(w).step_by(workers) {
                        audit_class(i, class, cross_check_every, &mut part);
                    }
                    part
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("exhaustive worker panicked"))
            .collect()
    });
    for part in parts {
        report.merge(part);
    }
    report
}

fn audit_class(index: usize, class: &DigraphClass, every: u64, report: &mut ExhaustiveReport) {
    let d = &class.digraph;
    let n = d.vertex_count();
    let cd = CompactDigraph::new(d).expect("n <= 5 fits the compact representation");
    let oracle = GraphicOracle::new(d.clone()).expect("connected");
    report.classes += 1;
    for (s, t) in class.anchor_representatives() {
        report.anchors += 1;
        let mut trees: Vec<u32> = embracing_trees(d, s, t).iter().map(to_mask).collect();
        trees.sort_unstable();
        let k = trees.len();
        let neighbours: Vec<Vec<u32>> = (0..k)
            .map(|i| {
                (0..k)
                    .filter(|&j| (trees[i] ^ trees[j]).count_ones() == 2)
                    .map(|j| j as u32)
                    .collect()
            })
            .collect();
        let mut dist = vec![u8::MAX; k];
        let mut overlap = vec![0u32; k];
        let mut queue = VecDeque::new();
        for (bi, &b) in trees.iter().enumerate() {
            monotone_distances_to(bi, &trees, &neighbours, &mut dist, &mut overlap, &mut queue);
            let target = Theorem2Target::new(&cd, s, t, b).expect("b is st-embracing");
            for (ai, &a) in trees.iter().enumerate() {
                let label = || format!("class {index} (mask {:#x}) s={s} t={t} A={a:#x} B={b:#x}", class.mask);
                if report.pairs.is_multiple_of(every) {
                    report.cross_checked += 1;
                    let (from, to) = (from_mask(a), from_mask(b));
                    let general = theorem2_run(d, s, t, &from, &to);
                    let compact = target.run(a);
                    match (general, compact) {
                        (Ok(g), Some(c)) if g.sequence == c.to_sequence(a) => {
                            let anchor = Anchor::Vertices { source: s, target: t };
                            let v = verify_exchange_sequence(&oracle, &anchor, &from, &to, &g.sequence);
                            if !v.is_valid() || !v.monotone {
                                report.violation(format!("{}: oracle rejects sequence", label()));
                            }
                        }
                        _ => report.violation(format!("{}: implementations disagree", label())),
                    }
                }
                report.pairs += 1;
                let Some(run) = target.run(a) else {
                    report.violation(format!("{}: construction failed", label()));
                    continue;
                };
                let len = run.len as usize;
                let mut current = a;
                let mut ok = true;
                for &(r, x) in run.steps() {
                    let next = current & !(1 << r) | 1 << x;
                    ok &= current >> r & 1 == 1 && current >> x & 1 == 0;
                    ok &= trees.binary_search(&next).is_ok();
                    ok &= (next & b).count_ones() >= (current & b).count_ones();
                    current = next;
                }
                if !ok || current != b {
                    report.violation(format!("{}: invalid or non-monotone sequence", label()));
                }
                if len + 1 > n {
                    report.violation(format!("{}: length {len} exceeds n - 1", label()));
                }
                match dist[ai] {
                    u8::MAX => report.violation(format!("{}: no monotone sequence found by search", label())),
                    m if m as usize > len => {
                        report.violation(format!("{}: search distance {m} above constructed {len}", label()))
                    }
                    m => report.max_monotone_distance = report.max_monotone_distance.max(m as usize),
                }
                if a & b == 0 {
                    report.disjoint_pairs += 1;
                    let unoriented = (a & !b).count_ones() as usize;
                    if len != n - 1 || unoriented != n - 1 {
                        report.violation(format!("{}: disjoint pair with length {len}", label()));
                    }
                }
                report.max_length = report.max_length.max(len);
            }
        }
    }
}

/// Exact monotone distance from every tree to `trees[target]`, by
/// breadth-first search backwards along single exchanges that do not
/// decrease the overlap with the target.
fn monotone_distances_to(
    target: usize,
    trees: &[u32],
    neighbours: &[Vec<u32>],
    dist: &mut [u8],
    overlap: &mut [u32],
    queue: &mut VecDeque<usize>,
) {
    let b = trees[target];
    for (o, &t) in overlap.iter_mut().zip(trees) {
        *o = (t & b).count_ones();
    }
    dist.fill(u8::MAX);
    dist[target] = 0;
    queue.clear();
    queue.push_back(target);
    while let Some(x) = queue.pop_front() {
        for &y in &neighbours[x] {
            let y = y as usize;
            // Forward step y -> x is monotone when x overlaps B at least as much.
            if dist[y] == u8::MAX && overlap[x] >= overlap[y] {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
}
