//! `catwalk`: validate walking-cat graphs, partition them along corridors and
//! check determinant factorizations exactly.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use catwalk_core::arrangement::{enumerate_faces, verify_ledi, verify_prop_acyclic_corridor};
use catwalk_core::arrangement::{verify_prop_arrangement_corridor, verify_varchenko};
use catwalk_core::factorization::{
    verify_lemat, verify_th1, verify_th1_entrance_corrected, verify_th2, verify_thmat,
};
use catwalk_core::io::{read_instance, BlocksFile, CorridorSystemFile, Instance};
use catwalk_core::{
    determinant_with, extended_kernel, multi_corridor_partition, random, validate_axioms,
    CorridorSet, DetAlgorithm, Error, FactorizationReport, LabeledDigraph, SizeCaps,
};

const CAP_ENV: &str = "CORRIDOR_DET_MAX_N";

#[derive(Parser)]
#[command(name = "catwalk", version, about = "Exact determinant factorizations for corridor-glued graphs")]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Output::Json, global = true)]
    output: Output,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Output {
    Json,
    Pretty,
}

#[derive(Subcommand)]
enum Command {
    /// Check the walking-cat axioms of a graph.
    Validate { file: PathBuf },
    /// Partition a graph along its corridors.
    Partition {
        file: PathBuf,
        /// Corridor list, unless the first file already carries corridors.
        corridors: Option<PathBuf>,
    },
    /// Determinant of a graph's extended kernel, or of a matrix file.
    Det {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Algo::Dfree)]
        algo: Algo,
    },
    /// Check one of the factorization identities.
    Factor {
        /// Instance file; not needed for `lemat`.
        file: Option<PathBuf>,
        /// Corridor list, unless the first file already carries corridors.
        corridors: Option<PathBuf>,
        #[arg(long, value_enum)]
        theorem: Theorem,
        /// Matrix size for `lemat`.
        #[arg(long, default_value_t = 3)]
        n: usize,
    },
    /// Faces, chambers, chamber graph or face product of an arrangement.
    Arrange {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = What::Faces)]
        what: What,
    },
    /// Print a seeded random instance.
    Random {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Rooms (tree), blocks (blocks), corridors (corridor-system) or hyperplanes (arrangement).
        #[arg(long)]
        size: Option<usize>,
    },
    /// Glue graphs along one corridor (`{"parts", "entrances", "label"}`).
    Glue { file: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Algo {
    Laplace,
    Dfree,
    Bareiss,
}

impl From<Algo> for DetAlgorithm {
    fn from(a: Algo) -> Self {
        match a {
            Algo::Laplace => DetAlgorithm::Laplace,
            Algo::Dfree => DetAlgorithm::DivisionFree,
            Algo::Bareiss => DetAlgorithm::Bareiss,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Theorem {
    /// Determinant of diag(a1..an) plus ones off the diagonal (uses --n)
    Lemat,
    /// Block gluing identity on a blocks file
    Thmat,
    /// Probabilistic corridor identity, checked as stated
    Th1,
    /// Probabilistic identity with the entrance weights corrected
    Th1Corrected,
    /// Distance-graph corridor identity
    Th2,
    /// Tree product for indirectly acyclic distance graphs
    Ledi,
    /// Face product for an arrangement's chamber matrix
    Varchenko,
    /// Corridor identity with acyclic apartments
    Prop1,
    /// Corridor identity with arrangement apartments
    Prop2,
}

#[derive(Clone, Copy, ValueEnum)]
enum What {
    Faces,
    Chambers,
    Graph,
    Varchenko,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Blocks,
    Tree,
    CorridorSystem,
    Arrangement,
}

#[derive(Serialize)]
#[serde(rename_all = "lowercase")]
enum Status {
    Ok,
    Violation,
    Error,
}

#[derive(Serialize)]
struct RunReport {
    command: &'static str,
    status: Status,
    payload: Value,
}

/// What a command produced: a payload, and whether it counts as a violation.
struct Outcome {
    payload: Value,
    violation: bool,
}

impl Outcome {
    fn ok(payload: impl Serialize) -> Result<Self, Error> {
        Ok(Outcome {
            payload: serde_json::to_value(payload)?,
            violation: false,
        })
    }

    fn judged(payload: impl Serialize, passed: bool) -> Result<Self, Error> {
        Ok(Outcome {
            payload: serde_json::to_value(payload)?,
            violation: !passed,
        })
    }

    fn report(r: FactorizationReport) -> Result<Self, Error> {
        let equal = r.equal;
        Self::judged(r, equal)
    }
}

fn size_caps() -> SizeCaps {
    std::env::var(CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .map(SizeCaps::uniform)
        .unwrap_or_default()
}

fn graph_and_corridors(file: &Path, corridors: Option<&Path>) -> Result<(LabeledDigraph, Vec<CorridorSet>), Error> {
    let (g, mut sets) = read_instance(file)?.into_graph_system()?;
    if let Some(path) = corridors {
        match read_instance(path)? {
            Instance::Corridors(c) => sets = c,
            other => return Err(Error::Parse(format!("expected a corridor list, got a {} file", other.kind()))),
        }
    }
    Ok((g, sets))
}

fn need(file: &Option<PathBuf>) -> Result<&Path, Error> {
    file.as_deref().ok_or_else(|| Error::Parse("an instance file is required".into()))
}

fn run(command: &Command) -> Result<Outcome, Error> {
    match command {
        Command::Validate { file } => {
            let (g, _) = read_instance(file)?.into_graph_system()?;
            let report = validate_axioms(&g);
            let passed = report.passed;
            Outcome::judged(report, passed)
        }
        Command::Partition { file, corridors } => {
            let (g, sets) = graph_and_corridors(file, corridors.as_deref())?;
            let p = multi_corridor_partition(&g, &sets)?;
            Outcome::ok(json!({ "blocks": p.blocks }))
        }
        Command::Det { file, algo } => {
            let matrix = match read_instance(file)? {
                Instance::Matrix(m) => m,
                other => extended_kernel(&other.into_graph_system()?.0)?.matrix,
            };
            let algo = DetAlgorithm::from(*algo);
            let det = determinant_with(&matrix, algo, size_caps())?;
            Outcome::ok(json!({ "size": matrix.size(), "algorithm": algo, "det": det }))
        }
        Command::Factor {
            file,
            corridors,
            theorem,
            n,
        } => match theorem {
            Theorem::Lemat => Outcome::report(verify_lemat(*n)?),
            Theorem::Thmat => match read_instance(need(file)?)? {
                Instance::Blocks(b) => Outcome::report(verify_thmat(&b.spec())?),
                other => Err(Error::Parse(format!("expected a blocks file, got a {} file", other.kind()))),
            },
            Theorem::Varchenko => match read_instance(need(file)?)? {
                Instance::Arrangement(a) => Outcome::report(verify_varchenko(&a)?),
                other => Err(Error::Parse(format!("expected an arrangement, got a {} file", other.kind()))),
            },
            Theorem::Prop2 => match read_instance(need(file)?)? {
                Instance::ArrangementSystem(s) => Outcome::report(verify_prop_arrangement_corridor(&s)?),
                other => Err(Error::Parse(format!(
                    "expected an arrangement system, got a {} file",
                    other.kind()
                ))),
            },
            Theorem::Th1 | Theorem::Th1Corrected | Theorem::Th2 | Theorem::Ledi | Theorem::Prop1 => {
                let (g, sets) = graph_and_corridors(need(file)?, corridors.as_deref())?;
                let report = match theorem {
                    Theorem::Th1 => verify_th1(&g, &sets)?,
                    Theorem::Th1Corrected => verify_th1_entrance_corrected(&g, &sets)?,
                    Theorem::Th2 => verify_th2(&g, &sets)?,
                    Theorem::Ledi => verify_ledi(&g)?,
                    _ => verify_prop_acyclic_corridor(&g, &sets)?,
                };
                Outcome::report(report)
            }
        },
        Command::Arrange { file, what } => {
            let arr = match read_instance(file)? {
                Instance::Arrangement(a) => a,
                other => return Err(Error::Parse(format!("expected an arrangement, got a {} file", other.kind()))),
            };
            match what {
                What::Faces => Outcome::ok(enumerate_faces(&arr)?.faces()),
                What::Chambers => {
                    let faces = enumerate_faces(&arr)?;
                    let chambers: Vec<_> = faces.faces().iter().filter(|f| f.signs.is_chamber()).collect();
                    Outcome::ok(chambers)
                }
                What::Graph => Outcome::ok(enumerate_faces(&arr)?.chamber_graph()?),
                What::Varchenko => Outcome::report(verify_varchenko(&arr)?),
            }
        }
        Command::Random { .. } => unreachable!("handled before dispatch"),
        Command::Glue { file } => match read_instance(file)? {
            Instance::Glue(r) => Outcome::ok(r.glue()?),
            other => Err(Error::Parse(format!("expected a glue request, got a {} file", other.kind()))),
        },
    }
}

fn random_instance(kind: Kind, seed: u64, size: Option<usize>) -> Result<Value, Error> {
    let mut rng = random::rng(seed);
    let value = match kind {
        Kind::Tree => serde_json::to_value(random::tree(&mut rng, size.unwrap_or(6).max(1), "R"))?,
        Kind::Blocks => {
            let spec = random::blocks(&mut rng, size.unwrap_or(3).max(1), 4);
            serde_json::to_value(BlocksFile::from(&spec))?
        }
        Kind::CorridorSystem => {
            let (graph, corridors) = random::corridor_system(&mut rng, size.unwrap_or(2), 3, 4)?;
            serde_json::to_value(CorridorSystemFile { graph, corridors })?
        }
        Kind::Arrangement => serde_json::to_value(random::arrangement(&mut rng, size.unwrap_or(3), 2))?,
    };
    Ok(value)
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Validate { .. } => "validate",
        Command::Partition { .. } => "partition",
        Command::Det { .. } => "det",
        Command::Factor { .. } => "factor",
        Command::Arrange { .. } => "arrange",
        Command::Random { .. } => "random",
        Command::Glue { .. } => "glue",
    }
}

/// Exit code and status for an error: 2 for unreadable input, 3 for size caps, 1 otherwise.
fn classify(e: &Error) -> (u8, Status) {
    match e {
        Error::Parse(_) => (2, Status::Error),
        Error::SizeCap { .. } => (3, Status::Error),
        _ => (1, Status::Violation),
    }
}

fn error_payload(e: &Error) -> Value {
    let mut v = json!({ "error": e.to_string() });
    match e {
        Error::AxiomViolation(report) => v["report"] = serde_json::to_value(report).unwrap_or(Value::Null),
        Error::NotACorridor {
            condition, witness, ..
        } => {
            v["condition"] = json!(condition.number());
            v["witness"] = json!(witness);
        }
        _ => {}
    }
    v
}

fn render(value: &impl Serialize, output: Output) -> String {
    match output {
        Output::Json => serde_json::to_string(value),
        Output::Pretty => serde_json::to_string_pretty(value),
    }
    .expect("reports serialize")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Command::Random { kind, seed, size } = cli.command {
        return match random_instance(kind, seed, size) {
            Ok(v) => {
                emit(&render(&v, cli.output));
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("catwalk: {e}");
                ExitCode::from(classify(&e).0)
            }
        };
    }
    let command = command_name(&cli.command);
    let (report, code) = match run(&cli.command) {
        Ok(out) if out.violation => (
            RunReport {
                command,
                status: Status::Violation,
                payload: out.payload,
            },
            1,
        ),
        Ok(out) => (
            RunReport {
                command,
                status: Status::Ok,
                payload: out.payload,
            },
            0,
        ),
        Err(e) => {
            let (code, status) = classify(&e);
            (
                RunReport {
                    command,
                    status,
                    payload: error_payload(&e),
                },
                code,
            )
        }
    };
    emit(&render(&report, cli.output));
    ExitCode::from(code)
}

/// Writes to stdout, ignoring a reader that went away early.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{text}").and_then(|_| out.flush());
}
