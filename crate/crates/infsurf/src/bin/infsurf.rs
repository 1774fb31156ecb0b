use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use infsurf::blueprint::Equivalence;
use infsurf::dsl::{self, DslError};
use infsurf::lagrangians::{GeneratorObject, LagrangianError};
use infsurf::{report, EndAutomaton, EndPath};

#[derive(Parser)]
#[command(name = "infsurf", version, about = "Infinite-type surfaces from blueprint automata")]
struct Cli {
    /// Print machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Finite-type verdict, ends, limit points and fractal covers.
    Classify {
        file: PathBuf,
        #[arg(long, default_value_t = 8)]
        depth: usize,
    },
    /// Block counts and invariants of the truncation.
    Truncate {
        file: PathBuf,
        #[arg(short = 'n', default_value_t = 3)]
        n: usize,
        /// Write the decomposition graph in DOT format.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// The generating objects through depth `n`.
    Generators {
        file: PathBuf,
        #[arg(short = 'n', default_value_t = 3)]
        n: usize,
    },
    /// Morphism complex between two objects.
    Mor {
        file: PathBuf,
        #[arg(long = "a")]
        a: String,
        #[arg(long = "b")]
        b: String,
        #[arg(short = 'n', default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 4)]
        window: usize,
    },
    /// Twist tower toward `p` and its preimage verdict.
    Tower {
        file: PathBuf,
        #[arg(long)]
        p: String,
        #[arg(long)]
        q: String,
        #[arg(long, default_value_t = 5)]
        depth: usize,
    },
    /// Bounded equivalence search between two blueprints.
    Equiv {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, default_value_t = 6)]
        depth: usize,
    },
}

enum Failure {
    Io(String),
    Syntax(String),
    Domain(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Io(_) => 1,
            Failure::Syntax(_) => 2,
            Failure::Domain(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Io(m) | Failure::Syntax(m) | Failure::Domain(m) => m,
        }
    }
}

fn load(path: &Path) -> Result<EndAutomaton, Failure> {
    let bytes = fs::read(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    let doc = dsl::parse_bytes(&bytes).map_err(|e: DslError| Failure::Syntax(format!("{}:{e}", path.display())))?;
    doc.to_automaton().map_err(|e| Failure::Syntax(format!("{}: {e}", path.display())))
}

fn object(text: &str) -> Result<GeneratorObject, Failure> {
    text.parse().map_err(|e: LagrangianError| Failure::Syntax(e.to_string()))
}

fn end(text: &str) -> Result<EndPath, Failure> {
    text.parse().map_err(|e: infsurf::ideal_boundary::BoundaryError| Failure::Syntax(e.to_string()))
}

fn domain<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Domain(e.to_string())
}

fn emit<T: Serialize>(json: bool, value: &T, text: impl FnOnce() -> String) {
    let body = if json {
        serde_json::to_string_pretty(value).expect("serializable report") + "\n"
    } else {
        text()
    };
    // a closed pipe downstream is not an error worth reporting
    let _ = io::stdout().lock().write_all(body.as_bytes());
}

fn run(cli: Cli) -> Result<(), Failure> {
    let json = cli.json;
    match cli.command {
        Command::Classify { file, depth } => {
            let a = load(&file)?;
            let r = report::classify(&a, depth).map_err(domain)?;
            emit(json, &r, || r.to_text());
        }
        Command::Truncate { file, n, dot } => {
            let a = load(&file)?;
            let (stats, graph) = report::truncate(&a, n).map_err(domain)?;
            if let Some(out) = dot {
                fs::write(&out, graph).map_err(|e| Failure::Io(format!("{}: {e}", out.display())))?;
            }
            emit(json, &stats, || {
                format!(
                    "depth {}\nblocks {} (disk {}, pants {}, cylinders {}, genus cylinders {})\nsaddles {}\nchi {}\ngenus {}\nboundary {}\n",
                    stats.depth,
                    stats.blocks,
                    stats.disks,
                    stats.pants,
                    stats.cylinders,
                    stats.genus_cylinders,
                    stats.saddles,
                    stats.euler_characteristic,
                    stats.genus,
                    stats.boundary_circles
                )
            });
        }
        Command::Generators { file, n } => {
            let a = load(&file)?;
            let r = report::generators(&a, n).map_err(domain)?;
            emit(json, &r, || r.generators.iter().map(|g| format!("{g}\n")).collect());
        }
        Command::Mor { file, a, b, n, window } => {
            let aut = load(&file)?;
            let (x, y) = (object(&a)?, object(&b)?);
            let r = report::mor(&aut, &x, &y, n, window).map_err(domain)?;
            emit(json, &r, || {
                format!(
                    "{}stabilization level {} ({:?}, {:?})\n",
                    r.table, r.stabilization.level, r.stabilization.case_tag, r.stabilization.mode
                )
            });
        }
        Command::Tower { file, p, q, depth } => {
            let a = load(&file)?;
            let r = report::tower(&a, &end(&p)?, &end(&q)?, depth).map_err(domain)?;
            emit(json, &r, || {
                let mut out = String::new();
                for (i, l) in r.levels.iter().enumerate() {
                    out.push_str(&format!("L{i} {l}\n"));
                }
                out.push_str(&format!("twist support [{}]\n", r.twist_support.join(", ")));
                out.push_str(&format!("compatible: {}\n", if r.compatible { "yes" } else { "no" }));
                out.push_str(&format!("sectorial preimage: {}\n", if r.sectorial_preimage { "yes" } else { "no" }));
                out
            });
        }
        Command::Equiv { first, second, depth } => {
            let (a, b) = (load(&first)?, load(&second)?);
            let r = report::equiv(&a, &b, depth);
            emit(json, &r, || match &r {
                Equivalence::Equivalent { certificate } => {
                    let mut out = String::from("equivalent\n");
                    for s in &certificate.stages {
                        out.push_str(&format!(
                            "  depths ({}, {}) genus sum {} pants sum {}\n",
                            s.first_depth, s.second_depth, s.genus_sum, s.pants_sum
                        ));
                    }
                    out
                }
                Equivalence::Distinct { witness } => format!("distinct: {witness}\n"),
                Equivalence::Unknown { depth_bound } => format!("unknown within depth {depth_bound}\n"),
            });
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
