//! Distance audits over batches of instances.
//!
//! Report format: one header line, then one line per instance with the
//! columns
//!
//! ```text
//! id hash kind size rank unoriented union full mono_union mono_full theorem2 verdict
//! ```
//!
//! Distances are integers, `infinite`, or `beyond <k>`; `-` marks a column
//! that does not apply. Summary lines starting with `# summary` follow the
//! records.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use embrace_core::distance::{
    embracing_distance, format_witness, unoriented_distance, Distance, DistanceResult, GroundMode,
    SearchOptions,
};
use embrace_core::graphic::theorem2_sequence;
use embrace_core::verify_exchange_sequence;

use crate::instance::{Instance, InstanceKind, Payload};

/// Environment variable naming the counterexample directory.
pub const COUNTEREXAMPLE_DIR_VAR: &str = "EMBRACE_COUNTEREXAMPLE_DIR";
pub const DEFAULT_COUNTEREXAMPLE_DIR: &str = "counterexamples";

pub const COLUMNS: &str =
    "id hash kind size rank unoriented union full mono_union mono_full theorem2 verdict";

const MODES: [GroundMode; 2] = [GroundMode::Union, GroundMode::Full];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AuditOptions {
    /// Also compute monotone distances and require them to be finite.
    pub monotone: bool,
    pub max_depth: Option<usize>,
}

impl Default for AuditOptions {
    fn default() -> Self {
        AuditOptions {
            monotone: true,
            max_depth: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Violation {
    /// Embracing distance above the rank bound (or not finite).
    RankBound,
    MonotoneInfinite,
    /// A witness or constructed sequence failed verification.
    Witness,
    /// `unoriented <= embracing <= monotone` failed.
    Ordering,
    Theorem2,
}

impl Violation {
    fn name(self) -> &'static str {
        match self {
            Violation::RankBound => "rank-bound",
            Violation::MonotoneInfinite => "monotone-infinite",
            Violation::Witness => "witness",
            Violation::Ordering => "ordering",
            Violation::Theorem2 => "theorem2",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditRecord {
    pub id: usize,
    pub hash: String,
    pub kind: InstanceKind,
    pub size: String,
    pub rank: usize,
    pub unoriented: usize,
    /// Indexed like [`GroundMode::Union`], [`GroundMode::Full`].
    pub embracing: [Distance; 2],
    pub monotone: Option<[Distance; 2]>,
    pub theorem2: Option<usize>,
    pub violations: Vec<Violation>,
    /// Witness files keyed by label, for counterexample dumps.
    pub witnesses: Vec<(String, String)>,
}

impl AuditRecord {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn verdict(&self) -> String {
        if self.passed() {
            "pass".into()
        } else {
            let names: Vec<&str> = self.violations.iter().map(|v| v.name()).collect();
            format!("violation:{}", names.join(","))
        }
    }

    pub fn line(&self) -> String {
        let opt = |d: Option<Distance>| d.map_or("-".to_string(), |d| d.to_string().replace(' ', ":"));
        format!(
            "{} {} {} {} {} {} {} {} {} {} {} {}",
            self.id,
            self.hash,
            self.kind,
            self.size,
            self.rank,
            self.unoriented,
            opt(Some(self.embracing[0])),
            opt(Some(self.embracing[1])),
            opt(self.monotone.map(|m| m[0])),
            opt(self.monotone.map(|m| m[1])),
            self.theorem2.map_or("-".to_string(), |k| k.to_string()),
            self.verdict()
        )
    }
}

fn mode_name(mode: GroundMode) -> &'static str {
    match mode {
        GroundMode::Union => "union",
        GroundMode::Full => "full",
    }
}

pub fn audit_instance(id: usize, inst: &Instance, opts: AuditOptions) -> AuditRecord {
    let oracle = inst.oracle();
    let anchor = inst.anchor();
    let rank = inst.rank();
    let unoriented = unoriented_distance(&inst.a, &inst.b).expect("bases of one matroid");
    let mut violations = Vec::new();
    let mut witnesses = Vec::new();
    let flag = |v: Violation, violations: &mut Vec<Violation>| {
        if !violations.contains(&v) {
            violations.push(v);
        }
    };

    let search = |mode: GroundMode, monotone: bool| -> DistanceResult {
        let opts = SearchOptions {
            ground_mode: mode,
            monotone_only: monotone,
            max_depth: opts.max_depth,
        };
        embracing_distance(oracle, &anchor, &inst.a, &inst.b, opts).expect("instance bases are embracing")
    };
    let mut check_witness = |label: String, r: &DistanceResult, monotone: bool, violations: &mut Vec<Violation>| {
        if let Some(w) = &r.witness {
            let report = verify_exchange_sequence(oracle, &anchor, &inst.a, &inst.b, w);
            if !report.is_valid() || w.len() != r.distance.finite().unwrap_or(usize::MAX) || (monotone && !report.monotone) {
                flag(Violation::Witness, violations);
            }
        }
        witnesses.push((label, format_witness(&inst.a, r)));
    };

    let mut embracing = [Distance::Infinite; 2];
    for (i, mode) in MODES.into_iter().enumerate() {
        let r = search(mode, false);
        embracing[i] = r.distance;
        if r.distance.finite().is_none_or(|k| k > rank) {
            flag(Violation::RankBound, &mut violations);
        }
        if r.distance.finite().is_some_and(|k| k < unoriented) {
            flag(Violation::Ordering, &mut violations);
        }
        check_witness(mode_name(mode).to_string(), &r, false, &mut violations);
    }

    let monotone = opts.monotone.then(|| {
        let mut out = [Distance::Infinite; 2];
        for (i, mode) in MODES.into_iter().enumerate() {
            let r = search(mode, true);
            out[i] = r.distance;
            match (embracing[i].finite(), r.distance.finite()) {
                (_, None) => flag(Violation::MonotoneInfinite, &mut violations),
                (Some(e), Some(m)) if m < e => flag(Violation::Ordering, &mut violations),
                (None, Some(_)) => flag(Violation::Ordering, &mut violations),
                _ => {}
            }
            check_witness(format!("monotone-{}", mode_name(mode)), &r, true, &mut violations);
        }
        out
    });

    let theorem2 = match &inst.payload {
        Payload::Graphic { oracle: g, s, t } => {
            let n = g.digraph().vertex_count();
            match theorem2_sequence(g.digraph(), *s, *t, &inst.a, &inst.b) {
                Ok(seq) => {
                    let report = verify_exchange_sequence(g, &anchor, &inst.a, &inst.b, &seq);
                    let bounded = seq.len() < n && monotone.is_none_or(|m| {
                        m.iter().all(|d| d.finite().is_some_and(|k| k <= seq.len()))
                    });
                    if !report.is_valid() || !report.monotone || !bounded {
                        flag(Violation::Theorem2, &mut violations);
                    }
                    Some(seq.len())
                }
                Err(_) => {
                    flag(Violation::Theorem2, &mut violations);
                    None
                }
            }
        }
        _ => None,
    };

    violations.sort();
    AuditRecord {
        id,
        hash: inst.hash(),
        kind: inst.kind(),
        size: inst.size(),
        rank,
        unoriented,
        embracing,
        monotone,
        theorem2,
        violations,
        witnesses,
    }
}

/// Audits every instance, splitting the work over `workers` threads. The
/// records come back ordered by id whatever the worker count.
pub fn audit_all(instances: &[Instance], opts: AuditOptions, workers: usize) -> Vec<AuditRecord> {
    let workers = workers.clamp(1, instances.len().max(1));
    let mut records: Vec<AuditRecord> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                scope.spawn(move || {
                    instances
                        .iter()
                        .enumerate()
                        .skip(w)
                        .step_by(workers)
                        .map(|(id, inst)| audit_instance(id, inst, opts))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("audit worker panicked"))
            .collect()
    });
    records.sort_by_key(|r| r.id);
    records
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct AuditSummary {
    pub instances: usize,
    pub violations: usize,
    /// Largest `distance / rank` per ground mode over finite distances.
    pub max_ratio: [f64; 2],
    pub max_distance: [usize; 2],
    pub monotone_finite: usize,
    pub theorem2_max: Option<usize>,
}

pub fn summarize(records: &[AuditRecord]) -> AuditSummary {
    let mut s = AuditSummary {
        instances: records.len(),
        ..Default::default()
    };
    for r in records {
        if !r.passed() {
            s.violations += 1;
        }
        for i in 0..2 {
            if let Some(k) = r.embracing[i].finite() {
                s.max_distance[i] = s.max_distance[i].max(k);
                if r.rank > 0 {
                    s.max_ratio[i] = s.max_ratio[i].max(k as f64 / r.rank as f64);
                }
            }
        }
        if r.monotone.is_some_and(|m| m.iter().all(|d| d.finite().is_some())) {
            s.monotone_finite += 1;
        }
        if let Some(k) = r.theorem2 {
            s.theorem2_max = Some(s.theorem2_max.map_or(k, |m| m.max(k)));
        }
    }
    s
}

/// Header line, records, summary lines.
pub fn format_report(description: &str, records: &[AuditRecord]) -> String {
    let mut out = format!("# {description} | {COLUMNS}\n");
    for r in records {
        let _ = writeln!(out, "{}", r.line());
    }
    let s = summarize(records);
    let _ = writeln!(
        out,
        "# summary instances={} violations={} monotone-finite={}",
        s.instances, s.violations, s.monotone_finite
    );
    let _ = writeln!(
        out,
        "# summary max-distance union={} full={} max-ratio union={:.3} full={:.3}",
        s.max_distance[0], s.max_distance[1], s.max_ratio[0], s.max_ratio[1]
    );
    if let Some(k) = s.theorem2_max {
        let _ = writeln!(out, "# summary theorem2-max-length={k}");
    }
    out
}

/// Counterexample directory from the environment, or the default.
pub fn counterexample_dir() -> PathBuf {
    std::env::var_os(COUNTEREXAMPLE_DIR_VAR)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(DEFAULT_COUNTEREXAMPLE_DIR))
}

/// Writes `<stem>.instance`, `<stem>.record` and one `<stem>.<label>.witness`
/// per witness into `dir`; returns the instance path.
pub fn dump_counterexample(dir: &Path, inst: &Instance, record: &AuditRecord) -> io::Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let stem = format!("{}-{:06}-{}", record.kind, record.id, record.hash);
    let instance_path = dir.join(format!("{stem}.instance"));
    fs::write(&instance_path, inst.to_text())?;
    fs::write(
        dir.join(format!("{stem}.record")),
        format!("# {COLUMNS}\n{}\n", record.line()),
    )?;
    for (label, text) in &record.witnesses {
        fs::write(dir.join(format!("{stem}.{label}.witness")), text)?;
    }
    Ok(instance_path)
}

/// Dumps every failing record; returns the instance paths written.
pub fn dump_violations(dir: &Path, instances: &[Instance], records: &[AuditRecord]) -> io::Result<Vec<PathBuf>> {
    records
        .iter()
        .filter(|r| !r.passed())
        .map(|r| dump_counterexample(dir, &instances[r.id], r))
        .collect()
}
