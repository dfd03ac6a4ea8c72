//! `fpset`: batch computations on fixed point sets with text or JSON output.

mod render;

use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use fpset::classify::{all_fps, verify_against_oracle};
use fpset::fps::{broue_oracle, closure, is_closed, is_fixed_point_set, kappa};
use fpset::setalg::{irreducible_factors, PermSet, SqSet};
use fpset::{exec, Caps, Error, Exec};

/// Exit status for each failure class.
mod code {
    pub const OTHER: u8 = 1;
    pub const PARSE: u8 = 3;
    pub const CAP: u8 = 4;
    pub const INCONCLUSIVE: u8 = 5;
    pub const THEOREM: u8 = 6;
    pub const MISMATCH: u8 = 7;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(
    name = "fpset",
    version,
    about = "Fixed point sets of symmetric groups acting on classes of q-cycle products"
)]
struct Cli {
    /// Characteristic of the field.
    #[arg(long, global = true, env = "FPSET_P", default_value_t = 2)]
    p: u32,
    /// Cycle length of the class elements.
    #[arg(long, global = true, env = "FPSET_Q", default_value_t = 2)]
    q: usize,
    /// Number of q-cycles per element (oracle and verify).
    #[arg(long, global = true, env = "FPSET_N", default_value_t = 2)]
    n: usize,
    /// Largest support considered by classify.
    #[arg(long, global = true, env = "FPSET_MAX_DEGREE", default_value_t = 8)]
    max_degree: usize,
    /// Largest group or search result materialised.
    #[arg(
        long,
        global = true,
        env = "FPSET_GROUP_CAP",
        default_value_t = 1_000_000
    )]
    group_cap: u64,
    /// Largest module dimension decomposed.
    #[arg(long, global = true, env = "FPSET_DIM_CAP", default_value_t = 400)]
    dim_cap: usize,
    /// Largest wreath exponent tried when computing kappa.
    #[arg(long, global = true, env = "FPSET_KAPPA_BUDGET", default_value_t = 4)]
    kappa_budget: usize,
    /// Seed for the randomized splitting search.
    #[arg(long, global = true, env = "FPSET_SEED", default_value_t = 0)]
    seed: u64,
    /// Output format.
    #[arg(long, global = true, env = "FPSET_FORMAT", value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads; 1 runs sequentially.
    #[arg(long, global = true, env = "FPSET_JOBS")]
    jobs: Option<usize>,
    /// Read sets from a file, one per line.
    #[arg(long, global = true, env = "FPSET_INPUT")]
    input: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Closure Fix(Q_X) of each set.
    Closure { sets: Vec<String> },
    /// Irreducible factors of each set.
    Factor { sets: Vec<String> },
    /// Full fixed-point-set report for each set.
    IsFps { sets: Vec<String> },
    /// Kappa of each set's M_X-set.
    Kappa { sets: Vec<String> },
    /// Constructive classification up to --max-degree.
    Classify,
    /// Brute-force oracle on the class of --n products of --q-cycles.
    Oracle,
    /// Compare classify and oracle at degree q*n.
    Verify,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) => code::PARSE,
            Error::CapExceeded { .. } => code::CAP,
            Error::DecompositionInconclusive(_) => code::INCONCLUSIVE,
            Error::TheoremViolation(_) => code::THEOREM,
            _ => code::OTHER,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn caps_of(cli: &Cli) -> Caps {
    let exec = if cli.jobs == Some(1) {
        Exec::Sequential
    } else {
        Exec::Parallel
    };
    Caps {
        group_cap: cli.group_cap,
        dim_cap: cli.dim_cap,
        kappa_max_u: cli.kappa_budget,
        seed: cli.seed,
        exec,
        ..Caps::default()
    }
}

fn inputs(cli: &Cli, positional: &[String]) -> Result<Vec<String>, Failure> {
    let mut v: Vec<String> = positional.to_vec();
    if let Some(path) = &cli.input {
        let text = fs::read_to_string(path).map_err(|e| Failure {
            code: code::OTHER,
            message: format!("cannot read {path}: {e}"),
        })?;
        v.extend(
            text.lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .map(String::from),
        );
    }
    if v.is_empty() {
        return Err(Failure {
            code: code::PARSE,
            message: "no input sets given".into(),
        });
    }
    Ok(v)
}

fn sq_sets(cli: &Cli, positional: &[String]) -> Result<Vec<SqSet>, Failure> {
    inputs(cli, positional)?
        .iter()
        .map(|s| SqSet::parse(s, cli.q).map_err(Failure::from))
        .collect()
}

/// One object for one input, an array otherwise.
fn emit_json<T: Serialize>(items: &[T]) -> String {
    let r = if items.len() == 1 {
        serde_json::to_string_pretty(&items[0])
    } else {
        serde_json::to_string_pretty(items)
    };
    r.expect("reports serialize")
}

fn emit<T: Serialize>(format: Format, items: &[T], text: impl Fn(&T) -> String) -> String {
    match format {
        Format::Json => emit_json(items),
        Format::Text => items.iter().map(text).collect::<Vec<_>>().join("\n"),
    }
}

fn run(cli: &Cli) -> Result<(String, u8), Failure> {
    if let Some(j) = cli.jobs {
        if j > 1 {
            exec::set_jobs(j);
        }
    }
    let caps = caps_of(cli);
    let p = cli.p;
    let out = match &cli.command {
        Command::Closure { sets } => {
            let mut rows = Vec::new();
            for x in sq_sets(cli, sets)? {
                let c = closure(&x, p, &caps)?;
                rows.push(render::ClosureOut {
                    closed: is_closed(&x, p, &caps)?,
                    set: x,
                    p,
                    closure: c,
                });
            }
            emit(cli.format, &rows, render::closure)
        }
        Command::Factor { sets } => {
            let mut rows = Vec::new();
            for s in inputs(cli, sets)? {
                let x: PermSet = s.parse()?;
                let factors = irreducible_factors(&x, &caps)?;
                rows.push(render::FactorOut {
                    irreducible: factors.len() == 1,
                    set: x,
                    factors,
                });
            }
            emit(cli.format, &rows, render::factor)
        }
        Command::IsFps { sets } => {
            let mut rows = Vec::new();
            for x in sq_sets(cli, sets)? {
                rows.push(is_fixed_point_set(&x, p, &caps)?);
            }
            emit(cli.format, &rows, render::fps)
        }
        Command::Kappa { sets } => {
            let mut rows = Vec::new();
            for x in sq_sets(cli, sets)? {
                rows.push(render::KappaOut {
                    kappa: kappa(&x, p, &caps)?,
                    q: x.q(),
                    set: x,
                    p,
                });
            }
            emit(cli.format, &rows, render::kappa)
        }
        Command::Classify => {
            let r = all_fps(p, cli.q, cli.max_degree, &caps)?;
            match cli.format {
                Format::Json => emit_json(&[r]),
                Format::Text => r.to_table(),
            }
        }
        Command::Oracle => {
            let r = broue_oracle(p, cli.q, cli.n, &caps)?;
            match cli.format {
                Format::Json => emit_json(&[r]),
                Format::Text => render::oracle(&r),
            }
        }
        Command::Verify => {
            let r = verify_against_oracle(p, cli.q, cli.n, &caps)?;
            let status = if r.agrees() { 0 } else { code::MISMATCH };
            let text = match cli.format {
                Format::Json => emit_json(&[&r]),
                Format::Text => r.to_string(),
            };
            return Ok((text, status));
        }
    };
    Ok((out, 0))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((out, status)) => {
            // a closed pipe (e.g. `| head`) is not an error
            let _ = writeln!(std::io::stdout().lock(), "{}", out.trim_end());
            ExitCode::from(status)
        }
        Err(f) => {
            eprintln!("fpset: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
