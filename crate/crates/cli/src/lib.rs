//! `lucky`: simulation, tables, verification suites, Dyck-path bijections,
//! column-sum fits and sequence export on top of `lucky_core`.
//!
//! Exit codes: 0 success, 1 negative result (not a parking function, a
//! failed check, an input outside a map's domain), 2 usage error.

pub mod commands;
pub mod config;
pub mod data;
pub mod render;
pub mod verify;

use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use lucky_core::Error;

#[derive(Debug, Parser)]
#[command(name = "lucky", version, about = "Lucky cars and lucky spots in parking functions")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Default, Args)]
pub struct GlobalOpts {
    /// Worker threads for enumeration (default: all cores)
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Raise enumeration limits (n <= 11 unrestricted, n <= 18 monotone)
    #[arg(long, global = true)]
    pub allow_long: bool,
    /// Cache directory (overrides LUCKY_CACHE_DIR and the config file)
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Neither read nor write the cache
    #[arg(long, global = true)]
    pub no_cache: bool,
    /// TOML config file (default: $LUCKY_CONFIG if set)
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the parking process on one preference vector
    Simulate {
        /// Preferences, space or comma separated
        #[arg(required = true)]
        prefs: Vec<String>,
        #[arg(long, value_enum, default_value_t = SimFormat::Text)]
        format: SimFormat,
    },
    /// Print a lucky table, its column sums or the lucky-count distribution
    Table {
        #[arg(value_enum)]
        kind: TableKind,
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long, value_enum, default_value_t = Source::Both)]
        source: Source,
        /// Variant for `columns` and `distribution`
        #[arg(long, value_enum, default_value_t = VariantArg::All)]
        variant: VariantArg,
        /// Tag every cell with where its value came from
        #[arg(long)]
        provenance: bool,
    },
    /// Check a family of identities against enumeration for n up to NMAX
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        nmax: usize,
    },
    /// Apply a Dyck-path bijection
    Bijection {
        #[arg(value_enum)]
        direction: Direction,
        /// Preferences or path strings; `-` is the empty path
        #[arg(required = true)]
        input: Vec<String>,
        #[arg(long)]
        column: Option<usize>,
        /// Also draw the path
        #[arg(long)]
        grid: bool,
    },
    /// Fit the correction polynomial for spot J's lucky count
    Fit {
        j: usize,
        /// Largest n taken from enumeration; larger n use stored values
        #[arg(long, default_value_t = 9)]
        oracle_nmax: usize,
    },
    /// Write an integer sequence
    Export {
        /// subdiagonal, total-lucky or column-J
        #[arg(value_parser = parse_sequence)]
        name: Sequence,
        nmax: usize,
        #[arg(long, value_enum, default_value_t = ExportFormat::Bfile)]
        format: ExportFormat,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long)]
        provenance: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SimFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableKind {
    Q,
    Qinc,
    Qdec,
    Columns,
    Distribution,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExportFormat {
    Bfile,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Source {
    Oracle,
    Closed,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    All,
    Inc,
    Dec,
}

impl From<VariantArg> for lucky_core::Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::All => lucky_core::Variant::All,
            VariantArg::Inc => lucky_core::Variant::WeaklyIncreasing,
            VariantArg::Dec => lucky_core::Variant::WeaklyDecreasing,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Borders,
    RowSums,
    SpotLucky,
    Restricted,
    Distribution,
    Moments,
    Partial,
    SpotCatalan,
    Decreasing,
    Increasing,
    Narayana,
    Bijections,
    ColumnPeaks,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Direction {
    Inc2path,
    Dec2path,
    Path2inc,
    Path2dec,
    Split,
    Merge,
    Reflect,
    Peaks,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sequence {
    Subdiagonal,
    TotalLucky,
    Column(usize),
}

impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sequence::Subdiagonal => f.write_str("subdiagonal"),
            Sequence::TotalLucky => f.write_str("total-lucky"),
            Sequence::Column(j) => write!(f, "column-{j}"),
        }
    }
}

fn parse_sequence(s: &str) -> Result<Sequence, String> {
    match s {
        "subdiagonal" => Ok(Sequence::Subdiagonal),
        "total-lucky" => Ok(Sequence::TotalLucky),
        _ => s
            .strip_prefix("column-")
            .and_then(|j| j.parse().ok())
            .filter(|&j| j >= 1)
            .map(Sequence::Column)
            .ok_or_else(|| format!("unknown sequence {s:?} (subdiagonal, total-lucky, column-J)")),
    }
}

/// Failure with its exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError { code: 2, message: message.into() }
    }

    pub fn negative(message: impl Into<String>) -> Self {
        CliError { code: 1, message: message.into() }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidArgument(_)
            | Error::InvalidPath(_)
            | Error::LimitExceeded { .. }
            | Error::NoClosedForm { .. }
            | Error::DuplicateNode(_) => 2,
            _ => 1,
        };
        CliError { code, message: e.to_string() }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::negative(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// What a command produced: text for stdout and the exit code.
pub struct Outcome {
    pub stdout: String,
    pub code: u8,
}

impl Outcome {
    pub fn ok(stdout: String) -> Self {
        Outcome { stdout, code: 0 }
    }
}

pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match execute(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.stdout.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

pub fn execute(cli: &Cli) -> CliResult<Outcome> {
    let settings = config::Settings::resolve(&cli.global)?;
    let data = data::Data::new(settings);
    commands::dispatch(&cli.command, &data)
}
