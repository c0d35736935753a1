use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Parser, Subcommand, ValueEnum};
use embrace_core::affine::{AffineOracle, PointsFile};
use embrace_core::distance::{embracing_distance, format_witness, GroundMode, SearchOptions};
use embrace_core::explicit::ExplicitOmFile;
use embrace_core::graphic::{theorem2_run, GraphicFile, GraphicOracle};
use embrace_core::om::circuits_via_oracle;
use embrace_core::text::{content_lines, keyword};
use embrace_core::{validate_circuit_axioms, verify_exchange_sequence, SignedCircuit};
use embrace_harness::audit::{
    audit_all, counterexample_dir, dump_violations, format_report, AuditOptions,
};
use embrace_harness::exhaustive::exhaustive_theorem2_audit;
use embrace_harness::generate::{affine_batch, graphic_batch};
use embrace_harness::instance::{Instance, Payload};
use embrace_harness::repro::{repro_example1, repro_example2};

#[derive(Parser)]
#[command(name = "embrace", version, about = "Embracing exchange sequences in oriented matroids")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Union,
    Full,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Graphic,
    Affine,
}

#[derive(Clone, Copy, ValueEnum)]
enum Example {
    Example1,
    Example2,
}

#[derive(Subcommand)]
enum Command {
    /// Check the signed circuit axioms for an explicit circuit list, a
    /// digraph, a point file or an instance.
    ValidateAxioms {
        file: PathBuf,
        /// Check an explicit list exactly as written instead of closing it
        /// under negation first.
        #[arg(long)]
        raw: bool,
    },
    /// Embracing exchange distance between the two bases of an instance.
    Distance {
        instance: PathBuf,
        #[arg(long, value_enum, default_value = "union")]
        mode: Mode,
        #[arg(long)]
        monotone: bool,
        #[arg(long)]
        max_depth: Option<usize>,
    },
    /// Constructed monotone sequence between the trees of a graphic instance.
    Theorem2 { instance: PathBuf },
    /// Audit seeded random instances (or instance files) and dump
    /// counterexample candidates.
    Audit {
        #[arg(long, value_enum, required_unless_present = "instances")]
        kind: Option<Kind>,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest vertex count for graphic instances.
        #[arg(long, default_value_t = 6)]
        n: usize,
        /// Dimension for affine instances.
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[arg(long, num_args = 1.., conflicts_with = "kind")]
        instances: Vec<PathBuf>,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Skip monotone distances.
        #[arg(long)]
        no_monotone: bool,
        #[arg(long)]
        max_depth: Option<usize>,
        /// Append wall-clock start and end times to the report.
        #[arg(long)]
        timestamps: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Exhaustive check of the constructed sequences on all digraphs with
    /// exactly `n <= 5` vertices.
    Exhaustive {
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 1000)]
        cross_check_every: u64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Reproduce one of the worked examples.
    Repro {
        #[arg(value_enum)]
        example: Example,
    },
}

type CliResult = Result<ExitCode, String>;

fn read(path: &PathBuf) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_instance(path: &PathBuf) -> Result<Instance, String> {
    Instance::parse(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn validate_axioms(path: &PathBuf, raw: bool) -> CliResult {
    let text = read(path)?;
    let err = |e: &dyn std::fmt::Display| format!("{}: {e}", path.display());
    let first = content_lines(&text).next().map(|(_, l)| keyword(l).0).unwrap_or("");
    let (circuits, ground): (Vec<SignedCircuit>, usize) = match first {
        "ground" => {
            let file = ExplicitOmFile::parse(&text).map_err(|e| err(&e))?;
            let circuits = if raw { file.circuits.clone() } else { file.with_negations() };
            (circuits, file.ground_size)
        }
        "digraph" => {
            let file = GraphicFile::parse(&text).map_err(|e| err(&e))?;
            let oracle = GraphicOracle::new(file.digraph).map_err(|e| err(&e))?;
            (circuits_via_oracle(&oracle), oracle.digraph().arc_count())
        }
        "points" => {
            let file = PointsFile::parse(&text).map_err(|e| err(&e))?;
            let oracle = AffineOracle::new(file.config);
            (circuits_via_oracle(&oracle), oracle.config().len())
        }
        "instance" => {
            let inst = Instance::parse(&text).map_err(|e| err(&e))?;
            let oracle = inst.oracle();
            (circuits_via_oracle(oracle), oracle.ground_size())
        }
        other => return Err(err(&format!("unrecognised file type `{other}`"))),
    };
    let report = validate_circuit_axioms(&circuits, ground);
    println!("circuits: {}", circuits.len());
    println!("{report}");
    Ok(if report.all_pass() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn distance(path: &PathBuf, mode: Mode, monotone: bool, max_depth: Option<usize>) -> CliResult {
    let inst = load_instance(path)?;
    let opts = SearchOptions {
        ground_mode: match mode {
            Mode::Union => GroundMode::Union,
            Mode::Full => GroundMode::Full,
        },
        monotone_only: monotone,
        max_depth,
    };
    let r = embracing_distance(inst.oracle(), &inst.anchor(), &inst.a, &inst.b, opts)
        .map_err(|e| e.to_string())?;
    print!("{}", format_witness(&inst.a, &r));
    Ok(ExitCode::SUCCESS)
}

fn theorem2(path: &PathBuf) -> CliResult {
    let inst = load_instance(path)?;
    let Payload::Graphic { oracle, s, t } = &inst.payload else {
        return Err("theorem2 needs a graphic instance".into());
    };
    let run = theorem2_run(oracle.digraph(), *s, *t, &inst.a, &inst.b).map_err(|e| e.to_string())?;
    let report = verify_exchange_sequence(oracle, &inst.anchor(), &inst.a, &inst.b, &run.sequence);
    println!("start: {}", inst.a);
    for step in &run.sequence.steps {
        println!("{step}");
    }
    println!("length: {}", run.sequence.len());
    println!("phase1: {}", run.phase1_steps);
    println!("valid: {} monotone: {}", report.is_valid(), report.monotone);
    Ok(if report.is_valid() && report.monotone {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn unix_time() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs())
}

#[allow(clippy::too_many_arguments)]
fn audit(
    kind: Option<Kind>,
    count: usize,
    seed: u64,
    n: usize,
    d: usize,
    files: &[PathBuf],
    workers: usize,
    opts: AuditOptions,
    timestamps: bool,
    output: Option<&PathBuf>,
) -> CliResult {
    let started = unix_time();
    let (instances, description) = match kind {
        Some(Kind::Graphic) => (
            graphic_batch(count, seed, n).map_err(|e| e.to_string())?,
            format!("embrace-audit kind=graphic count={count} seed={seed} max-n={n}"),
        ),
        Some(Kind::Affine) => (
            affine_batch(count, seed, d).map_err(|e| e.to_string())?,
            format!("embrace-audit kind=affine count={count} seed={seed} d={d} general-position=required"),
        ),
        None => (
            files.iter().map(load_instance).collect::<Result<Vec<_>, _>>()?,
            format!("embrace-audit instance-files={}", files.len()),
        ),
    };
    let records = audit_all(&instances, opts, workers);
    let mut report = format_report(&description, &records);
    let dir = counterexample_dir();
    let dumped = dump_violations(&dir, &instances, &records).map_err(|e| format!("{}: {e}", dir.display()))?;
    for path in &dumped {
        report.push_str(&format!("# dump {}\n", path.display()));
    }
    if timestamps {
        report.push_str(&format!("# started {started} finished {}\n", unix_time()));
    }
    match output {
        Some(path) => fs::write(path, &report).map_err(|e| format!("{}: {e}", path.display()))?,
        None => print!("{report}"),
    }
    Ok(if dumped.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::ValidateAxioms { file, raw } => validate_axioms(&file, raw),
        Command::Distance {
            instance,
            mode,
            monotone,
            max_depth,
        } => distance(&instance, mode, monotone, max_depth),
        Command::Theorem2 { instance } => theorem2(&instance),
        Command::Audit {
            kind,
            count,
            seed,
            n,
            d,
            instances,
            workers,
            no_monotone,
            max_depth,
            timestamps,
            output,
        } => audit(
            kind,
            count,
            seed,
            n,
            d,
            &instances,
            workers,
            AuditOptions {
                monotone: !no_monotone,
                max_depth,
            },
            timestamps,
            output.as_ref(),
        ),
        Command::Exhaustive {
            n,
            cross_check_every,
            workers,
        } => {
            if !(2..=5).contains(&n) {
                return Err("exhaustive enumeration supports 2 <= n <= 5".into());
            }
            let report = exhaustive_theorem2_audit(n, cross_check_every.max(1), workers);
            println!("{report}");
            Ok(if report.violation_count == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            })
        }
        Command::Repro { example } => {
            let report = match example {
                Example::Example1 => repro_example1(),
                Example::Example2 => repro_example2(),
            }
            .map_err(|e| e.to_string())?;
            print!("{report}");
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}
