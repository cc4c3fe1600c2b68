//! Command-line front end. Results go to stdout as JSON, a one-line summary to
//! stderr. Exit codes: 0 ok, 1 verification failure, 2 input error, 3 limit.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::complete::solve_complete;
use crate::error::Error;
use crate::instance::{load_instance, save_instance, GraphKind, Instance};
use crate::oracle::{brute_force_solve, greedy_general, Limits};
use crate::packing::{load_packing, save_packing, verify_packing, Packing};
use crate::reduction::{parse_dimacs, reduce_3sat};
use crate::tree::{solve_tree, solve_tree_value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "mbrtp", version, about = "Bounded rooted-tree packing solvers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algorithm {
    Auto,
    Complete,
    Tree,
    Greedy,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve an instance.
    Solve {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Algorithm::Auto)]
        alg: Algorithm,
        /// Also write the packing here.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Report only the optimal value.
        #[arg(long)]
        value_only: bool,
    },
    /// Check a packing against an instance.
    Verify {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        packing: PathBuf,
    },
    /// Exhaustive optimum for small instances.
    Oracle {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = Limits::default().max_n)]
        max_n: usize,
        #[arg(long, default_value_t = Limits::default().max_k)]
        max_k: usize,
    },
    /// Build the single-tree gadget for a 3-CNF formula.
    Reduce {
        #[arg(long)]
        cnf: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Sidecar with the threshold and vertex roles.
        #[arg(long)]
        labels: Option<PathBuf>,
    },
}

/// Failure carrying its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::LimitExceeded(_) => EXIT_LIMIT,
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn open(path: &Path) -> Result<BufReader<File>, Failure> {
    File::open(path).map(BufReader::new).map_err(|e| Failure {
        code: EXIT_INPUT,
        message: format!("{}: {e}", path.display()),
    })
}

fn create(path: &Path) -> Result<BufWriter<File>, Failure> {
    File::create(path).map(BufWriter::new).map_err(|e| Failure {
        code: EXIT_INPUT,
        message: format!("{}: {e}", path.display()),
    })
}

fn read_instance(path: &Path) -> Result<Instance, Failure> {
    load_instance(open(path)?).map_err(|e| Failure {
        code: EXIT_INPUT,
        message: format!("{}: {e}", path.display()),
    })
}

fn write_packing(path: &Path, p: &Packing) -> Result<(), Failure> {
    let mut w = create(path)?;
    save_packing(p, &mut w)?;
    w.flush().map_err(Error::from)?;
    Ok(())
}

/// Runs the CLI with explicit streams; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn emit(out: &mut dyn Write, value: &serde_json::Value) -> Result<(), Failure> {
    writeln!(out, "{value}").map_err(|e| Failure::from(Error::from(e)))
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    match cmd {
        Command::Solve {
            input,
            alg,
            output,
            value_only,
        } => {
            let inst = read_instance(&input)?;
            let alg = match alg {
                Algorithm::Auto => match inst.kind() {
                    GraphKind::Complete => Algorithm::Complete,
                    GraphKind::Tree => Algorithm::Tree,
                    GraphKind::General => {
                        let _ = writeln!(err, "warning: general graph, using the greedy heuristic (not optimal); run `oracle` for an exact value");
                        Algorithm::Greedy
                    }
                },
                other => other,
            };
            if value_only && alg == Algorithm::Tree && output.is_none() {
                let value = solve_tree_value(&inst)?;
                let _ = writeln!(err, "tree: optimal value {value}");
                emit(out, &json!({ "objective": value }))?;
                return Ok(EXIT_OK);
            }
            let (label, packing) = match alg {
                Algorithm::Complete => ("complete (optimal)", solve_complete(&inst)?),
                Algorithm::Tree => ("tree (optimal)", solve_tree(&inst)?.1),
                Algorithm::Greedy => ("greedy (heuristic)", greedy_general(&inst)),
                Algorithm::Auto => unreachable!("auto is resolved above"),
            };
            if let Some(path) = &output {
                write_packing(path, &packing)?;
            }
            let _ = writeln!(err, "{label}: objective {} over {} trees", packing.objective(), packing.len());
            if value_only {
                emit(out, &json!({ "objective": packing.objective() }))?;
            } else {
                writeln!(out, "{}", packing.to_json_string()).map_err(Error::from)?;
            }
            Ok(EXIT_OK)
        }
        Command::Verify { input, packing } => {
            let inst = read_instance(&input)?;
            let loaded = load_packing(open(&packing)?, inst.root()).map_err(|e| Failure {
                code: EXIT_INPUT,
                message: format!("{}: {e}", packing.display()),
            })?;
            let report = verify_packing(&inst, &loaded.packing)?;
            let objective = loaded.packing.objective();
            let objective_ok = loaded.declared_objective.is_none_or(|d| d == objective);
            let valid = report.valid && objective_ok;
            let mut value = json!({
                "valid": valid,
                "objective": objective,
                "violations": report.violations,
            });
            if !objective_ok {
                value["declared_objective"] = json!(loaded.declared_objective);
            }
            emit(out, &value)?;
            if valid {
                let _ = writeln!(err, "valid packing, objective {objective}");
                Ok(EXIT_OK)
            } else {
                let _ = writeln!(
                    err,
                    "invalid packing: {} violations{}",
                    report.violations.len(),
                    if objective_ok { "" } else { ", declared objective does not match" }
                );
                Ok(EXIT_INVALID)
            }
        }
        Command::Oracle {
            input,
            output,
            max_n,
            max_k,
        } => {
            let inst = read_instance(&input)?;
            let (value, packing) = brute_force_solve(&inst, Limits { max_n, max_k })?;
            if let Some(path) = &output {
                write_packing(path, &packing)?;
            }
            let _ = writeln!(err, "oracle: optimal value {value}");
            writeln!(out, "{}", packing.to_json_string()).map_err(Error::from)?;
            Ok(EXIT_OK)
        }
        Command::Reduce { cnf, output, labels } => {
            let sat = parse_dimacs(open(&cnf)?).map_err(|e| Failure {
                code: EXIT_INPUT,
                message: format!("{}: {e}", cnf.display()),
            })?;
            let red = reduce_3sat(&sat);
            let mut w = create(&output)?;
            save_instance(&red.instance, &mut w)?;
            w.flush().map_err(Error::from)?;
            if let Some(path) = &labels {
                let mut w = create(path)?;
                serde_json::to_writer_pretty(&mut w, &red.metadata_json()).map_err(Error::from)?;
                writeln!(w).and_then(|_| w.flush()).map_err(Error::from)?;
            }
            let _ = writeln!(
                err,
                "gadget: {} vertices, {} edges, threshold {}",
                red.instance.n(),
                red.instance.edge_count(),
                red.gamma
            );
            emit(
                out,
                &json!({
                    "vertices": red.instance.n(),
                    "edges": red.instance.edge_count(),
                    "gamma": red.gamma,
                    "variables": sat.num_vars(),
                    "clauses": sat.clauses().len(),
                }),
            )?;
            Ok(EXIT_OK)
        }
    }
}
