//! Command-line front end. [`run`] is the whole program; `main` only wires
//! it to the process streams.
//!
//! Exit codes: 0 success or pass, 1 verification failure, 2 usage or
//! invalid input, 3 disagreement between methods.

mod cache;
mod compute;
mod manifest;
mod table;
mod verify;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::error::Error;
use crate::query::{HurwitzQuery, InsertionList};

pub use compute::{compute, ComputeOutput, Method};
pub use manifest::{Manifest, ManifestEntry};
pub use table::{table_csv, TableArgs, TableMethod};
pub use verify::{run_verify, CurveArgs, OracleArgs, PolynomialityArgs, VerifyRequest, WallCrossingArgs};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;

/// Environment variable naming the compute cache directory.
pub const CACHE_ENV: &str = "LEAKY_HURWITZ_CACHE_DIR";

#[derive(Debug, Parser)]
#[command(name = "leaky-hurwitz", version, about = "Exact leaky completed-cycles double Hurwitz numbers")]
pub struct Cli {
    /// Worker threads for tables, sweeps and manifests.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,

    /// Directory for cached compute results.
    #[arg(long, global = true, env = CACHE_ENV)]
    pub cache_dir: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute one value.
    Compute(ComputeArgs),
    /// Tabulate one-part or two-part orbifold numbers as CSV.
    Table(TableArgs),
    /// Run a verification suite and print its report.
    Verify {
        #[command(subcommand)]
        suite: VerifyRequest,
    },
    /// Write every tropical cover of a query to a JSON file.
    ExportCovers(ExportArgs),
    /// Re-sum an exported cover file and compare with its total.
    CheckCovers {
        #[arg(long)]
        file: PathBuf,
    },
    /// Run a batch of queries and verifications from a JSON manifest.
    Manifest {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        out_dir: PathBuf,
    },
}

#[derive(Debug, Clone, Args)]
pub struct QueryArgs {
    /// Parts of μ, comma separated.
    #[arg(long, default_value = "")]
    pub mu: String,
    /// Parts of ν, comma separated.
    #[arg(long, default_value = "")]
    pub nu: String,
    /// Insertions `k:r[,k:r…]`, left to right.
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["k", "r", "s"])]
    pub ins: Option<String>,
    /// Uniform leak; with --r and --s expands to s equal insertions.
    #[arg(long, allow_hyphen_values = true, requires_all = ["r", "s"])]
    pub k: Option<i64>,
    #[arg(long, requires_all = ["k", "s"])]
    pub r: Option<u32>,
    #[arg(long, requires_all = ["k", "r"])]
    pub s: Option<usize>,
    /// Count connected covers only.
    #[arg(long)]
    pub connected: bool,
}

impl QueryArgs {
    pub fn query(&self) -> Result<HurwitzQuery, Error> {
        let insertions = match (&self.ins, self.k, self.r, self.s) {
            (Some(text), ..) => text.parse()?,
            (None, Some(k), Some(r), Some(s)) => {
                let list = InsertionList::uniform(k, r, s);
                list.validate()?;
                list
            }
            _ => InsertionList::default(),
        };
        Ok(HurwitzQuery::new(
            self.mu.parse()?,
            self.nu.parse()?,
            insertions,
            self.connected,
        ))
    }
}

#[derive(Debug, Clone, Args)]
pub struct ComputeArgs {
    #[command(flatten)]
    pub query: QueryArgs,
    #[arg(long, value_enum, default_value_t = Method::Auto)]
    pub method: Method,
}

#[derive(Debug, Clone, Args)]
pub struct ExportArgs {
    #[command(flatten)]
    pub query: QueryArgs,
    #[arg(long)]
    pub out: PathBuf,
}

/// Why a command stopped early.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Mismatch(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Mismatch(_) => EXIT_MISMATCH,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

pub(crate) type CmdResult = Result<i32, Failure>;

pub(crate) fn write_json<T: serde::Serialize>(out: &mut dyn Write, value: &T) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value)?;
    writeln!(out, "{text}")?;
    Ok(())
}

/// Parses `args` (program name first) and runs the command. Returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(f) => {
            let msg = match &f {
                Failure::Usage(m) => format!("error: {m}"),
                Failure::Mismatch(m) => format!("mismatch: {m}"),
            };
            let _ = writeln!(err, "{msg}");
            f.code()
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> CmdResult {
    let jobs = cli.jobs.max(1);
    match &cli.command {
        Command::Compute(args) => {
            let q = args.query.query()?;
            let result = compute::compute_cached(&q, args.method, cli.cache_dir.as_deref())?;
            write_json(out, &result)?;
            Ok(EXIT_OK)
        }
        Command::Table(args) => {
            let text = table_csv(args, jobs)?;
            match &args.out {
                Some(path) => std::fs::write(path, text).map_err(|e| Error::io(path, e))?,
                None => write!(out, "{text}")?,
            }
            Ok(EXIT_OK)
        }
        Command::Verify { suite } => {
            let report = run_verify(suite, jobs)?;
            write_json(out, &report)?;
            Ok(if report.passed() { EXIT_OK } else { EXIT_FAIL })
        }
        Command::ExportCovers(args) => {
            let q = args.query.query()?;
            q.insertions.validate()?;
            let file = crate::tropical::cover_file(&q);
            crate::tropical::write_cover_file(&file, &args.out)?;
            write_json(
                out,
                &serde_json::json!({
                    "out": args.out,
                    "covers": file.covers.len(),
                    "total": file.total,
                }),
            )?;
            Ok(EXIT_OK)
        }
        Command::CheckCovers { file } => {
            let (sum, total) = crate::tropical::check_cover_file(file)?;
            let ok = sum == total;
            write_json(
                out,
                &serde_json::json!({
                    "file": file,
                    "sum": crate::exactmath::format_rational(&sum),
                    "total": crate::exactmath::format_rational(&total),
                    "status": crate::report::Status::from_bool(ok),
                }),
            )?;
            Ok(if ok { EXIT_OK } else { EXIT_FAIL })
        }
        Command::Manifest { file, out_dir } => manifest::run_manifest(file, out_dir, jobs, cli.cache_dir.as_deref(), out),
    }
}
