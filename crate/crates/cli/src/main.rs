//! `regulator-lab`: runs the verification suites and writes reports.

mod config;
mod report;
mod suites;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use config::RunConfig;
use report::Report;
use suites::{run_suite, SUITES};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed run file: {0}")]
    Json(#[from] serde_json::Error),
}

const EXIT_SUITE_FAILURE: u8 = 2;
const EXIT_CONFIG: u8 = 3;
const EXIT_PRECISION: u8 = 4;

#[derive(Parser, Debug)]
#[command(name = "regulator-lab", version, about = "Exact verification suites for Lie, Weil and Lazard computations")]
struct Cli {
    /// Where the last run is stored for `report`.
    #[arg(long, global = true, default_value = ".regulator-lab/last-run.json")]
    run_file: PathBuf,
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Debug)]
struct Knobs {
    /// Matrix size of gl_N.
    #[arg(long = "N", default_value_t = 2)]
    size: usize,
    /// Odd prime.
    #[arg(long, default_value_t = 5)]
    p: u64,
    /// p-adic precision in digits.
    #[arg(long, default_value_t = 6)]
    m: u32,
    /// Degree bound of the truncated group algebra.
    #[arg(long = "D", default_value_t = 10)]
    degree_bound: u32,
    /// Total degree bound of the Weil algebra slice.
    #[arg(long, default_value_t = 6)]
    weil_degree: usize,
    /// Highest cosimplicial level; clamped to the model's size limit.
    #[arg(long, default_value_t = 4)]
    max_level: usize,
    #[arg(long, default_value_t = 20240601)]
    seed: u64,
}

impl Knobs {
    fn config(&self) -> Result<RunConfig, CliError> {
        RunConfig::new(self.size, self.p, self.m, self.degree_bound, self.weil_degree, self.max_level, self.seed)
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Suite {
    Ce,
    Weil,
    Suspension,
    Normalization,
    PhiPsi,
    Lazard,
    All,
}

impl Suite {
    fn names(self) -> Vec<&'static str> {
        match self {
            Suite::Ce => vec!["ce"],
            Suite::Weil => vec!["weil"],
            Suite::Suspension => vec!["suspension"],
            Suite::Normalization => vec!["normalization"],
            Suite::PhiPsi => vec!["phi-psi"],
            Suite::Lazard => vec!["lazard"],
            Suite::All => SUITES.to_vec(),
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run one verification suite, or all of them.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[command(flatten)]
        knobs: Knobs,
    },
    /// The degree-one regulator: log_p det on 1 + pM_N(Z_p).
    Shadow {
        #[arg(long = "N", default_value_t = 2)]
        size: usize,
        #[arg(long, default_value_t = 5)]
        p: u64,
        #[arg(long, default_value_t = 6)]
        m: u32,
        #[arg(long, default_value_t = 20240601)]
        seed: u64,
    },
    /// Write the last run as JSON or TSV.
    Report {
        #[arg(long, value_enum)]
        format: Format,
        #[arg(long)]
        out: PathBuf,
    },
}

fn run_suites(names: &[&str], config: RunConfig, run_file: &Path) -> Result<u8, CliError> {
    let mut report = Report::empty();
    let mut exhausted = false;
    for name in names {
        let outcome = run_suite(name, &config);
        exhausted |= outcome.precision_exhausted;
        let r = &outcome.report;
        println!("{}: {:?} ({} ms)", r.suite, r.status, r.timings.elapsed_ms);
        for c in &r.checks {
            let detail = if c.detail.is_empty() { String::new() } else { format!(": {}", c.detail) };
            println!("  [{:?}] {}{detail}", c.status, c.name);
        }
        report.suites.push(outcome.report);
    }
    report.config = Some(config);
    report.save(run_file)?;
    Ok(exit_code(&report, exhausted))
}

/// Precision exhaustion outranks ordinary suite failures.
fn exit_code(report: &Report, precision_exhausted: bool) -> u8 {
    if precision_exhausted {
        EXIT_PRECISION
    } else if report.failed() {
        EXIT_SUITE_FAILURE
    } else {
        0
    }
}

fn execute(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Verify { suite, knobs } => run_suites(&suite.names(), knobs.config()?, &cli.run_file),
        Command::Shadow { size, p, m, seed } => {
            if size > 2 {
                return Err(CliError::Config(format!("shadow supports N <= 2, got {size}")));
            }
            let knobs = Knobs { size, p, m, degree_bound: 10, weil_degree: 6, max_level: 4, seed };
            run_suites(&["shadow"], knobs.config()?, &cli.run_file)
        }
        Command::Report { format, out } => {
            let report = Report::load(&cli.run_file)?;
            let text = match format {
                Format::Json => report.to_json(),
                Format::Tsv => report.to_tsv(),
            };
            std::fs::write(out, text)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e @ CliError::Config(_)) => {
            eprintln!("{e}");
            ExitCode::from(EXIT_CONFIG)
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::FAILURE
        }
    }
}
