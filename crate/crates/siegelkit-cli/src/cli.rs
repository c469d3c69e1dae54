//! Argument parsing and dispatch.

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::commands;
use crate::config::{Overrides, OutputFormat, RunConfig, PRECISION_CAP_ENV};
use crate::report::{Report, Verdict};

#[derive(Debug, Parser)]
#[command(name = "siegelkit", version, about = "Certified effective irrationality measures and Thue-equation tools")]
pub struct Cli {
    /// JSON file with run settings; flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub output: Option<Format>,
    /// Starting working precision in bits.
    #[arg(long, global = true)]
    pub precision_start: Option<u32>,
    /// Precision cap in bits (also settable through SIEGELKIT_PRECISION_CAP).
    #[arg(long, global = true)]
    pub precision_cap: Option<u32>,
    /// Largest search box accepted.
    #[arg(long, global = true)]
    pub box_cap: Option<u64>,
    #[arg(long, global = true)]
    pub memory_cap: Option<u64>,
    /// Seed for the randomized suites.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Include wall time in the report (makes it run-dependent).
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Irreducibility-measure constants.
    #[command(subcommand)]
    Measure(MeasureCmd),
    /// Construct and certify an auxiliary polynomial.
    Aux(AuxArgs),
    /// Root portrait of a family member `(t - a) Q(t) + P(t)`.
    Roots(RootsArgs),
    /// Thue equations of the two families.
    #[command(subcommand)]
    Thue(ThueCmd),
    /// The solution count for the circular form.
    #[command(subcommand)]
    Count(CountCmd),
    /// Check a measure on continued-fraction convergents.
    Validate(ValidateArgs),
    /// Run acceptance criteria.
    Suite(SuiteArgs),
}

#[derive(Debug, Subcommand)]
pub enum MeasureCmd {
    /// κ and C for a real algebraic target from an anchor p0/q0.
    Compute(ComputeArgs),
    /// The constants worksheet for a family member.
    Worksheet(WorksheetArgs),
    /// Closed-form constants for a one-parameter family.
    Corollary(CorollaryArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
pub enum FamilyKind {
    Bombieri,
    Circular,
}

#[derive(Debug, Args)]
pub struct TargetArgs {
    /// Minimal polynomial, e.g. "t^3-5*t^2+1" or "[1,0,-5,1]".
    #[arg(long)]
    pub minpoly: String,
    /// Rational near the wanted real root.
    #[arg(long, allow_hyphen_values = true)]
    pub near: String,
}

#[derive(Debug, Args)]
pub struct ComputeArgs {
    #[command(flatten)]
    pub target: TargetArgs,
    #[arg(long)]
    pub e: u64,
    /// Rational, or "sqrt2-1".
    #[arg(long)]
    pub epsilon: String,
    #[arg(long, allow_hyphen_values = true)]
    pub p0: String,
    #[arg(long, default_value = "1")]
    pub q0: String,
}

#[derive(Debug, Args)]
pub struct WorksheetArgs {
    #[arg(long, value_enum)]
    pub family: FamilyKind,
    #[arg(long)]
    pub d: usize,
    /// Accepts powers such as "2^27508".
    #[arg(long, allow_hyphen_values = true)]
    pub a: String,
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    pub sign: i64,
    #[arg(long)]
    pub eta: String,
}

#[derive(Debug, Args)]
pub struct CorollaryArgs {
    #[arg(long, value_enum)]
    pub variant: FamilyKind,
    #[arg(long)]
    pub d: u64,
    #[arg(long)]
    pub eta: String,
}

#[derive(Debug, Args)]
pub struct AuxArgs {
    #[command(flatten)]
    pub target: TargetArgs,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub e: usize,
    #[arg(long, default_value = "1/2")]
    pub epsilon: String,
    /// Also report the nonvanishing index at this rational ξ.
    #[arg(long, requires = "eta_point", allow_hyphen_values = true)]
    pub xi: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub eta_point: Option<String>,
}

#[derive(Debug, Args)]
pub struct RootsArgs {
    #[arg(long)]
    pub minpoly: String,
    /// Defaults to minus the coefficient of `t^{d-1}`.
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum ThueCmd {
    /// Bound on max(|x|, |y|).
    Bound(ThueArgs),
    /// Exhaustive search in a box.
    Search(ThueSearchArgs),
}

#[derive(Debug, Args)]
pub struct ThueArgs {
    #[arg(long, value_enum, default_value = "bombieri")]
    pub form: FamilyKind,
    #[arg(long)]
    pub d: u64,
    #[arg(long, allow_hyphen_values = true)]
    pub a: String,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub m: String,
}

#[derive(Debug, Args)]
pub struct ThueSearchArgs {
    #[command(flatten)]
    pub thue: ThueArgs,
    #[arg(long = "box")]
    pub bound: u64,
    #[arg(long, default_value_t = 8)]
    pub shards: usize,
    /// Also run the anti-lexicographic scan and compare.
    #[arg(long)]
    pub dual: bool,
}

#[derive(Debug, Subcommand)]
pub enum CountCmd {
    /// The exponent inequalities behind the count bound.
    Ledger(CountLedgerArgs),
    /// Search the circular form and check the ± pairing.
    Search(CountSearchArgs),
}

#[derive(Debug, Args)]
pub struct CountLedgerArgs {
    #[arg(long)]
    pub d: u64,
    /// Defaults to -2^{164 d}.
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
}

#[derive(Debug, Args)]
pub struct CountSearchArgs {
    #[arg(long)]
    pub d: u64,
    #[arg(long, allow_hyphen_values = true)]
    pub a: String,
    #[arg(long = "box")]
    pub bound: u64,
    #[arg(long, default_value_t = 8)]
    pub shards: usize,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    #[command(flatten)]
    pub target: TargetArgs,
    /// Exponent κ of the measure under test.
    #[arg(long, conflicts_with = "liouville")]
    pub kappa: Option<String>,
    /// log2 C of the measure under test.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub log2c: String,
    /// Use the Liouville pair of the target.
    #[arg(long)]
    pub liouville: bool,
    #[arg(long, default_value_t = 15)]
    pub depth: usize,
    /// Write (q, log2 slack) pairs as CSV.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SuiteArgs {
    /// Criteria to run (default: all).
    #[arg(long = "criterion", value_parser = clap::value_parser!(u32).range(1..=10))]
    pub criteria: Vec<u32>,
}

/// What `main` prints and returns.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `argv` (program name first) and runs the command. The
/// environment variable is passed in so callers control it.
pub fn run<I, T>(argv: I, env_cap: Option<String>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome { code: 0, stdout: text, stderr: String::new() },
                _ => Outcome { code: Verdict::Usage.exit_code(), stdout: String::new(), stderr: text },
            };
        }
    };
    let cfg = match resolve_config(&cli, env_cap.as_deref()) {
        Ok(c) => c,
        Err(msg) => {
            let mut r = Report::new("config");
            r.verdict = Verdict::Usage;
            r.error = Some(msg.clone());
            return Outcome { code: 3, stdout: r.to_json(), stderr: msg };
        }
    };
    let start = Instant::now();
    let mut report = dispatch(&cli.command, &cfg);
    if cli.timing {
        report.timing_ms = Some(start.elapsed().as_millis() as u64);
    }
    let stdout = match cfg.output {
        OutputFormat::Json => report.to_json() + "\n",
        OutputFormat::Text => report.to_text(),
    };
    Outcome { code: report.verdict.exit_code(), stdout, stderr: String::new() }
}

fn resolve_config(cli: &Cli, env_cap: Option<&str>) -> Result<RunConfig, String> {
    let base = match &cli.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    let o = Overrides {
        precision_bits_start: cli.precision_start,
        precision_bits_cap: cli.precision_cap,
        search_box_cap: cli.box_cap,
        memory_cap_bytes: cli.memory_cap,
        output: cli.output.map(|f| match f {
            Format::Json => OutputFormat::Json,
            Format::Text => OutputFormat::Text,
        }),
        seed: cli.seed,
    };
    base.resolve(env_cap, &o)
}

/// Reads the precision-cap override from the process environment.
pub fn env_precision_cap() -> Option<String> {
    std::env::var(PRECISION_CAP_ENV).ok()
}

fn dispatch(cmd: &Command, cfg: &RunConfig) -> Report {
    match cmd {
        Command::Measure(MeasureCmd::Compute(a)) => commands::measure_compute(a, cfg),
        Command::Measure(MeasureCmd::Worksheet(a)) => commands::measure_worksheet(a, cfg),
        Command::Measure(MeasureCmd::Corollary(a)) => commands::measure_corollary(a, cfg),
        Command::Aux(a) => commands::aux(a, cfg),
        Command::Roots(a) => commands::roots(a, cfg),
        Command::Thue(ThueCmd::Bound(a)) => commands::thue_bound(a, cfg),
        Command::Thue(ThueCmd::Search(a)) => commands::thue_search(a, cfg),
        Command::Count(CountCmd::Ledger(a)) => commands::count_ledger(a, cfg),
        Command::Count(CountCmd::Search(a)) => commands::count_search(a, cfg),
        Command::Validate(a) => commands::validate(a, cfg),
        Command::Suite(a) => commands::suite(a, cfg),
    }
}
