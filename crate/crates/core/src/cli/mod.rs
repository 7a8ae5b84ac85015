//! Command-line front end. [`run`] is the whole program minus process I/O, so
//! it can be exercised directly in tests.
//!
//! Exit codes: 0 success, 2 usage or input error, 3 resource bound exceeded,
//! 4 verification failure.

mod commands;
mod report;

use clap::{Parser, Subcommand, ValueEnum};

pub use report::{Report, SCHEMA};

use crate::error::Error;
use crate::limits::Limits;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;
pub const EXIT_VERIFICATION: i32 = 4;

pub const ENV_MAX_N: &str = "FQK_MAX_N";
pub const ENV_MAX_CLASSIFY_N: &str = "FQK_MAX_CLASSIFY_N";
pub const ENV_MAX_SUBSPACES: &str = "FQK_MAX_SUBSPACES";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "fqk",
    version,
    about = "Finite quantum kinematics: classification, Pauli groups, gradings"
)]
struct Cli {
    /// Largest matrix dimension built explicitly [env: FQK_MAX_N, default 64]
    #[arg(long, global = true)]
    max_n: Option<u64>,
    /// Largest N accepted by classification [env: FQK_MAX_CLASSIFY_N, default 1000000]
    #[arg(long, global = true)]
    max_classify_n: Option<u64>,
    /// Largest number of graded pieces [env: FQK_MAX_SUBSPACES, default 4096]
    #[arg(long, global = true)]
    max_subspaces: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List every Abelian group of order N
    Classify { n: u64 },
    /// Print Q and P; with --check verify order, center and commutation
    Pauli {
        n: u64,
        #[arg(long)]
        check: bool,
    },
    /// Certify the Schwinger operator basis
    Weyl { n: u64 },
    /// CRT permutation taking the Z_N system to the prime-power tensor product
    Equiv { n: u64 },
    /// List MAD-groups of inner automorphisms
    Mad { n: u64 },
    /// Build and certify the grading of a MAD-group descriptor such as "2,2,m=1"
    Grading { n: u64, descriptor: String },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Classify { .. } => "classify",
            Command::Pauli { .. } => "pauli",
            Command::Weyl { .. } => "weyl",
            Command::Equiv { .. } => "equiv",
            Command::Mad { .. } => "mad",
            Command::Grading { .. } => "grading",
        }
    }
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Flags override environment variables, which override defaults.
fn resolve_limits(cli: &Cli, env: &dyn Fn(&str) -> Option<String>) -> Result<Limits, String> {
    let pick = |flag: Option<u64>, var: &str, default: u64| -> Result<u64, String> {
        if let Some(v) = flag {
            return Ok(v);
        }
        match env(var) {
            Some(raw) => raw
                .trim()
                .parse()
                .map_err(|_| format!("{var} must be a non-negative integer, got {raw:?}")),
            None => Ok(default),
        }
    };
    Ok(Limits {
        max_matrix_n: pick(cli.max_n, ENV_MAX_N, Limits::DEFAULT_MAX_MATRIX_N)?,
        max_classify_n: pick(
            cli.max_classify_n,
            ENV_MAX_CLASSIFY_N,
            Limits::DEFAULT_MAX_CLASSIFY_N,
        )?,
        max_subspaces: pick(
            cli.max_subspaces,
            ENV_MAX_SUBSPACES,
            Limits::DEFAULT_MAX_SUBSPACES,
        )?,
    })
}

fn exit_code(e: &Error) -> (i32, &'static str) {
    match e {
        Error::InvalidInput(_) | Error::DimensionMismatch { .. } => (EXIT_USAGE, "input"),
        Error::ResourceBound { .. } => (EXIT_RESOURCE, "resource_bound"),
        Error::Verification { .. }
        | Error::ClosureViolation { .. }
        | Error::NonCommuting(_)
        | Error::NumericalSeparation(_) => (EXIT_VERIFICATION, "verification"),
    }
}

pub fn run<I, S>(args: I, env: &dyn Fn(&str) -> Option<String>) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: rendered,
                }
            } else {
                Outcome {
                    code: EXIT_OK,
                    stdout: rendered,
                    stderr: String::new(),
                }
            };
        }
    };
    let name = cli.command.name();
    let fail = |code: i32, kind: &str, message: String| Outcome {
        code,
        stdout: match cli.format {
            Format::Json => report::error_json(name, kind, &message),
            Format::Text => String::new(),
        },
        stderr: format!("error: {message}\n"),
    };
    let limits = match resolve_limits(&cli, env) {
        Ok(l) => l,
        Err(msg) => return fail(EXIT_USAGE, "input", msg),
    };
    let result = match &cli.command {
        Command::Classify { n } => commands::classify(*n, &limits),
        Command::Pauli { n, check } => commands::pauli(*n, *check, &limits),
        Command::Weyl { n } => commands::weyl(*n, &limits),
        Command::Equiv { n } => commands::equiv(*n, &limits),
        Command::Mad { n } => commands::mad(*n, &limits),
        Command::Grading { n, descriptor } => commands::grading(*n, descriptor, &limits),
    };
    match result {
        Ok(report) => {
            let stdout = match cli.format {
                Format::Json => report.render_json(),
                Format::Text => report.render_text(),
            };
            let failed: Vec<&str> = report
                .checks
                .iter()
                .filter(|c| !c.passed)
                .map(|c| c.name.as_str())
                .collect();
            if failed.is_empty() {
                Outcome {
                    code: EXIT_OK,
                    stdout,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code: EXIT_VERIFICATION,
                    stdout,
                    stderr: format!("error: verification failed: {}\n", failed.join("; ")),
                }
            }
        }
        Err(e) => {
            let (code, kind) = exit_code(&e);
            fail(code, kind, e.to_string())
        }
    }
}
