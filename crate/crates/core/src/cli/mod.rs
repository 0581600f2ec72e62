//! The `decalg` command line: argument parsing, input loading, JSON reports
//! and exit codes.

mod commands;
mod reproduce;

pub use reproduce::{reproduce, EXAMPLE_IDS};

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde_json::Value;
use thiserror::Error;

use crate::chartheory::ChartError;
use crate::decomp::DecompError;
use crate::exactlin::{set_tolerance, LinAlgError};
use crate::fpgroup::{FpError, DEFAULT_MAX_COSETS};
use crate::fusion::FusionError;
use crate::miyamoto::{MiyError, DEFAULT_GROUP_CAP};
use crate::permgroup::PermError;
use crate::scheme::SchemeError;

pub const TOLERANCE_ENV: &str = "DECALG_TOLERANCE";

#[derive(Debug, Parser)]
#[command(name = "decalg", version, about = "Fusion laws, decomposition algebras, Miyamoto groups and Norton algebras")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Write the JSON report here instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    /// Scalar field for algebra data.
    #[arg(long, value_enum, default_value_t = Scalars::Auto, global = true)]
    pub scalars: Scalars,
    /// Float tolerance for complex-mode comparisons.
    #[arg(long, env = TOLERANCE_ENV, global = true)]
    pub tolerance: Option<f64>,
    /// Coset limit for Todd–Coxeter enumeration.
    #[arg(long, default_value_t = DEFAULT_MAX_COSETS, global = true)]
    pub max_cosets: usize,
    /// Element limit for matrix group closure.
    #[arg(long, default_value_t = DEFAULT_GROUP_CAP, global = true)]
    pub group_cap: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Scalars {
    /// Exact rationals, falling back to complex floats where needed.
    Auto,
    Rational,
    Complex,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Finest abelian grading of a fusion law.
    Grade {
        law: PathBuf,
        /// Also enumerate the finest (possibly non-abelian) grading group.
        #[arg(long)]
        enumerate: bool,
    },
    /// Class fusion law of a permutation group and its grading.
    Classlaw { group: String },
    /// Representation fusion law of a character table and its grading.
    Replaw { table: PathBuf },
    /// Verify a decomposition algebra.
    Verify { decalg: PathBuf },
    /// Push a decomposition algebra along a fusion-law morphism.
    Pushforward { decalg: PathBuf, morphism: PathBuf },
    /// Miyamoto group, closure and stability of a graded decomposition algebra.
    Miyamoto {
        decalg: PathBuf,
        /// `pm1` for the sign characters of a Z/2 grading, or a JSON file.
        #[arg(long, default_value = "pm1")]
        characters: String,
        /// Include the universal Miyamoto group presentation.
        #[arg(long)]
        universal: bool,
        /// Enumerate the universal group and check the central extension.
        #[arg(long)]
        central_check: bool,
        /// List every group element as a matrix.
        #[arg(long)]
        elements: bool,
    },
    /// Isotypic decomposition of a matrix representation.
    Isotypic { rep: PathBuf, table: PathBuf },
    /// Orbital association scheme of a group action, with its Bose–Mesner algebra.
    Scheme {
        /// A group JSON file or `catalog:NAME`.
        group: String,
        /// `natural`, `subsets:K` or `class:IMAGES` (comma separated).
        #[arg(long, default_value = "natural")]
        domain: String,
        /// Also write the scheme JSON here.
        #[arg(long)]
        scheme_out: Option<PathBuf>,
    },
    /// Norton algebra on an eigenspace of a scheme.
    Norton {
        scheme: PathBuf,
        #[arg(long)]
        eigenspace: usize,
        /// Build and verify the axial decomposition algebra.
        #[arg(long)]
        certify: bool,
        /// Use generalized eigenspaces; never certified.
        #[arg(long)]
        generalized: bool,
    },
    /// Run a named example end to end.
    Reproduce {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(EXAMPLE_IDS))]
        id: String,
    },
}

/// How a run ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Valid,
    Invalid,
    Exhausted,
}

impl Status {
    pub fn code(self) -> i32 {
        match self {
            Status::Valid => 0,
            Status::Invalid => 1,
            Status::Exhausted => 3,
        }
    }

    pub fn from_valid(valid: bool) -> Self {
        if valid {
            Status::Valid
        } else {
            Status::Invalid
        }
    }
}

/// A report and its exit status.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub status: Status,
    pub report: Value,
}

impl Outcome {
    pub fn new(status: Status, report: Value) -> Self {
        Outcome { status, report }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("invalid JSON in {path}: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
    #[error("{0}")]
    Exhausted(String),
    #[error(transparent)]
    Fusion(#[from] FusionError),
    #[error(transparent)]
    Fp(#[from] FpError),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Chart(#[from] ChartError),
    #[error(transparent)]
    Decomp(#[from] DecompError),
    #[error(transparent)]
    Miy(#[from] MiyError),
    #[error(transparent)]
    Scheme(#[from] SchemeError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } | CliError::Json { .. } => 2,
            CliError::Exhausted(_)
            | CliError::Fp(FpError::Exhausted { .. })
            | CliError::Miy(MiyError::Exhausted { .. } | MiyError::GroupExhausted(_)) => 3,
            _ => 1,
        }
    }
}

pub(crate) fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    serde_json::from_str(&text).map_err(|source| CliError::Json { path: path.to_path_buf(), source })
}

/// Writes `text` to a sibling temporary file and renames it into place.
fn write_atomically(path: &Path, text: &str) -> std::io::Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(text.as_bytes())?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)
}

pub(crate) fn write_json(path: &Path, value: &impl serde::Serialize) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).expect("serializable") + "\n";
    write_atomically(path, &text).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

/// Runs a parsed command and returns its outcome without printing.
pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    if let Some(eps) = cli.global.tolerance {
        if !(eps > 0.0 && eps.is_finite()) {
            return Err(CliError::Usage(format!("tolerance must be positive, got {eps}")));
        }
        set_tolerance(eps);
    }
    commands::dispatch(&cli.command, &cli.global)
}

/// Parses `args` (including the program name) and runs the command.
pub fn execute_args<I, T>(args: I) -> Result<Outcome, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| CliError::Usage(e.to_string()))?;
    execute(&cli)
}

/// Parses `args` (including the program name), runs the command, writes the
/// report and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let (code, report) = match execute(&cli) {
        Ok(outcome) => (outcome.status.code(), outcome.report),
        Err(e) => {
            eprintln!("error: {e}");
            (e.code(), serde_json::json!({ "error": e.to_string(), "exit_code": e.code() }))
        }
    };
    match &cli.global.output {
        Some(path) => {
            if let Err(e) = write_json(path, &report) {
                eprintln!("error: {e}");
                return 2;
            }
        }
        None => {
            let text = serde_json::to_string_pretty(&report).expect("serializable");
            let _ = writeln!(std::io::stdout().lock(), "{text}");
        }
    }
    code
}
