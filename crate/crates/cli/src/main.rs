//! `majflow`: flows, continuity bounds and Lipschitz constants from the
//! command line. CSV goes to stdout, diagnostics to stderr.

mod commands;
mod error;
mod format;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::commands::{DistinctArgs, FamilyArgs, QuantumInput};
use crate::error::Result;
use crate::verify::Suite;

#[derive(Debug, Parser)]
#[command(
    name = "majflow",
    version,
    about = "Majorization flow and entropic continuity bounds"
)]
struct Cli {
    /// Emit one JSON document instead of CSV
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Flow a probability vector towards uniform for time eps
    Flow {
        /// Comma list, `u` or `psi`
        #[arg(short = 'p', long = "point")]
        p: String,
        #[arg(short = 'e', long = "eps")]
        eps: f64,
        /// Dimension, needed for `u` and `psi`
        #[arg(short = 'd', long = "dim")]
        dim: Option<usize>,
    },
    /// Uniform continuity bound at trace distance eps
    Bound {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(short = 'd', long = "dim")]
        dim: Option<usize>,
        #[arg(short = 'e', long = "eps")]
        eps: Option<f64>,
        /// Evaluate on density matrices read from JSON files
        #[arg(long, requires = "rho_file")]
        quantum: bool,
        #[arg(long, requires = "quantum")]
        rho_file: Option<PathBuf>,
        #[arg(long, requires = "rho_file")]
        sigma_file: Option<PathBuf>,
    },
    /// Optimal Lipschitz constant and a point attaining it
    Lipschitz {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(short = 'd', long = "dim")]
        dim: usize,
        /// Smoothing parameter for concave-type families
        #[arg(long)]
        delta: Option<f64>,
    },
    /// Rényi bounds next to earlier bounds over a grid of eps
    Compare {
        #[arg(short = 'a', long = "alpha")]
        alpha: f64,
        #[arg(short = 'd', long = "dim")]
        dim: usize,
        /// `a:b:n`
        #[arg(long)]
        eps_grid: String,
    },
    /// Rényi bounds along eps = d^-s
    Scaling {
        #[arg(short = 'a', long = "alpha")]
        alpha: f64,
        #[arg(short = 's', long = "s")]
        s: f64,
        /// Comma list of increasing dimensions
        #[arg(long)]
        dims: String,
    },
    /// Number of distinct outcomes in repeated trials
    Distinct {
        #[arg(short = 'M', long = "outcomes")]
        outcomes: Option<usize>,
        #[arg(short = 'N', long = "trials")]
        trials: u32,
        #[arg(short = 'p', long = "point")]
        p: String,
        /// Also print the uniform bound at this distance
        #[arg(short = 'e', long = "eps")]
        eps: Option<f64>,
        /// Also simulate this many repetitions
        #[arg(long)]
        reps: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Cross-check closed forms against brute-force oracles
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn run(cli: Cli) -> Result<(String, bool)> {
    let json = cli.json;
    let out = match cli.command {
        Command::Flow { p, eps, dim } => commands::flow(&p, dim, eps, json)?,
        Command::Bound {
            family,
            dim,
            eps,
            quantum,
            rho_file,
            sigma_file,
        } => {
            let fam = family.build()?;
            let q = match (quantum, &rho_file) {
                (true, Some(rho)) => Some(QuantumInput {
                    rho,
                    sigma: sigma_file.as_deref(),
                }),
                _ => None,
            };
            commands::bound(&fam, dim, eps, q, json)?
        }
        Command::Lipschitz { family, dim, delta } => commands::lipschitz(&family.build()?, dim, delta, json)?,
        Command::Compare { alpha, dim, eps_grid } => {
            commands::compare(alpha, dim, &format::eps_grid(&eps_grid)?, json)?
        }
        Command::Scaling { alpha, s, dims } => commands::scaling(alpha, s, &format::dims(&dims)?, json)?,
        Command::Distinct {
            outcomes,
            trials,
            p,
            eps,
            reps,
            seed,
        } => commands::distinct(
            DistinctArgs {
                outcomes,
                trials,
                p: &p,
                eps,
                reps,
                seed,
            },
            json,
        )?,
        Command::Verify { suite, seed } => return Ok(report(&verify::run(suite, seed), json)),
    };
    Ok((out, true))
}

fn report(checks: &[verify::Check], json: bool) -> (String, bool) {
    let failed = checks.iter().filter(|c| c.outcome.is_err()).count();
    if json {
        let items: Vec<serde_json::Value> = checks
            .iter()
            .map(|c| {
                let (pass, detail) = match &c.outcome {
                    Ok(m) => (true, m),
                    Err(m) => (false, m),
                };
                serde_json::json!({ "suite": c.suite, "check": c.name, "pass": pass, "detail": detail })
            })
            .collect();
        let doc = serde_json::json!({ "checks": items, "passed": checks.len() - failed, "failed": failed });
        let text = serde_json::to_string_pretty(&doc).expect("json values serialize") + "\n";
        return (text, failed == 0);
    }
    let mut out = String::new();
    for c in checks {
        let (tag, detail) = match &c.outcome {
            Ok(m) => ("PASS", m),
            Err(m) => ("FAIL", m),
        };
        out += &format!("[{tag}] {}/{}: {detail}\n", c.suite, c.name);
    }
    out += &format!("{} passed, {failed} failed\n", checks.len() - failed);
    (out, failed == 0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((out, ok)) => {
            print!("{out}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
