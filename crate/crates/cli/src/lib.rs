//! Command-line front end: problem files, suites and reports.

pub mod run;
pub mod schema;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use hrrcheck_core::homological::EngineOptions;
use hrrcheck_core::verify::Level;

pub use run::{render_json, render_text, run_random, run_verify, RunConfig, RunResult, Severity};
pub use schema::{parse_field_flag, InputError, ProblemFile, Suite};

#[derive(Debug, Parser)]
#[command(name = "hrrcheck", version, about = "Exact verification of Euler form identities for finite-dimensional algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, clap::Args)]
pub struct Common {
    /// Suite to run: all, hrr, lefschetz, corollaries or lemmas.
    #[arg(long, value_parser = |s: &str| s.parse::<Suite>())]
    pub suite: Option<Suite>,
    /// Restrict identities to one level: module, bimodule, complex or bimodule-complex.
    #[arg(long, value_parser = |s: &str| s.parse::<Level>().map_err(|e| e.to_string()))]
    pub level: Option<Level>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub samples: Option<usize>,
    /// Cap on projective resolution length.
    #[arg(long = "max-resolution-length")]
    pub max_resolution_length: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Override the file's field: Q, F<p> or <p>.
    #[arg(long, value_parser = |s: &str| parse_field_flag(s))]
    pub field: Option<hrrcheck_core::linalg::FieldSpec>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the checks declared in a problem file, or the selected suite.
    Verify {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Seeded random HRR and Lefschetz checks over the algebras of a file.
    Random {
        #[arg(long)]
        algebra: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Print the canonical form of a problem file.
    Emit { file: PathBuf },
}

/// What a command produced: text for stdout, text for stderr and the exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

fn load(path: &PathBuf, field: Option<hrrcheck_core::linalg::FieldSpec>) -> Result<ProblemFile, Output> {
    let fail = |msg: String| Output { stdout: String::new(), stderr: msg + "\n", code: 2 };
    let text = std::fs::read_to_string(path).map_err(|e| fail(format!("{}: {e}", path.display())))?;
    ProblemFile::parse(&text, field).map_err(|e| fail(format!("{}: {e}", path.display())))
}

fn config(c: &Common, default_samples: usize) -> RunConfig {
    RunConfig {
        suite: c.suite,
        level: c.level,
        seed: c.seed,
        samples: c.samples.unwrap_or(default_samples),
        cap: c.max_resolution_length.unwrap_or(EngineOptions::default().cap),
    }
}

fn report(res: Result<RunResult, hrrcheck_core::Error>, format: Format) -> Output {
    match res {
        Ok(r) => Output {
            stdout: match format {
                Format::Json => render_json(&r),
                Format::Text => render_text(&r),
            },
            stderr: String::new(),
            code: r.exit_code(),
        },
        Err(e) => Output { stdout: String::new(), stderr: format!("{e}\n"), code: Severity::of_error(&e).exit_code() },
    }
}

pub fn execute(cli: &Cli) -> Output {
    match &cli.command {
        Command::Verify { file, common } => match load(file, common.field) {
            Ok(f) => report(run_verify(&f, &config(common, 10)), common.format),
            Err(o) => o,
        },
        Command::Random { algebra, common } => match load(algebra, common.field) {
            Ok(f) => report(run_random(&f, &config(common, 24)), common.format),
            Err(o) => o,
        },
        Command::Emit { file } => match load(file, None) {
            Ok(f) => Output { stdout: f.emit_string(), stderr: String::new(), code: 0 },
            Err(o) => o,
        },
    }
}
