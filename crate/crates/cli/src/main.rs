//! `twist`: twisted Alexander invariants, Seifert-matrix invariants and the
//! fibredness obstruction from the command line.

mod commands;
mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;
use thiserror::Error;

use commands::{SeifertArgs, Source};
use twist_core::obstruction::Verdict;

const DEFAULT_MAX_MINORS: u128 = 1_000_000;
const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Core(#[from] twist_core::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Core(twist_core::Error::UnknownFixture(_)) => 64,
            CliError::Core(e) if e.is_size_cap() => 65,
            CliError::Io { source, .. } if source.kind() == std::io::ErrorKind::NotFound => 66,
            _ => 1,
        }
    }
}

#[derive(Parser)]
#[command(name = "twist", version, about = "Twisted Alexander invariants and fibredness obstructions")]
struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Input {
    /// Input file.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Built-in fixture name.
    #[arg(long)]
    fixture: Option<String>,
}

impl Input {
    fn source(&self) -> Source {
        match (&self.file, &self.fixture) {
            (Some(p), _) => Source::File(p.clone()),
            (None, Some(name)) => Source::Fixture(name.clone()),
            (None, None) => unreachable!("clap requires one of --file and --fixture"),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Twisted invariants of a monodromy over a finite cover.
    Monodromy {
        #[command(flatten)]
        input: Input,
        /// Cover degree of the mapping torus.
        #[arg(long)]
        d: u32,
        /// Homomorphism file, or inline `Z/r:x=a,y=b`.
        #[arg(long)]
        alpha: String,
    },
    /// Alexander polynomial and branched-cover homology of a Seifert matrix.
    Seifert {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        d: Option<u32>,
        /// Look for a character onto Z/r and its jump (needs --d).
        #[arg(long)]
        r: Option<u64>,
        /// Print H and det(H^n - I).
        #[arg(long)]
        n: Option<u32>,
        /// Print R_d for d = 2..DMAX.
        #[arg(long, value_name = "DMAX")]
        sweep: Option<u32>,
    },
    /// Resultant of a polynomial with t^d - 1.
    Resultant {
        #[arg(long, conflicts_with_all = ["file", "fixture"])]
        poly: Option<String>,
        #[arg(long, conflicts_with = "fixture")]
        file: Option<PathBuf>,
        #[arg(long)]
        fixture: Option<String>,
        #[arg(long, conflicts_with = "sweep")]
        d: Option<u32>,
        #[arg(long, value_name = "DMAX", num_args = 0..=1, default_missing_value = "30")]
        sweep: Option<u32>,
    },
    /// Check that a permutation assignment kills every relator.
    Homcheck {
        #[arg(long, conflicts_with_all = ["presentation", "hom"])]
        fixture: Option<String>,
        #[arg(long, requires = "hom")]
        presentation: Option<PathBuf>,
        #[arg(long, requires = "presentation")]
        hom: Option<PathBuf>,
    },
    /// Evaluate the fibredness obstruction on a Lambda presentation matrix.
    Report {
        #[arg(long)]
        presentation: PathBuf,
    },
    /// Reproduce the fixture numbers and run a small randomized batch.
    Selftest {
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn max_minors() -> Result<u128, CliError> {
    match std::env::var("TWIST_MAX_MINORS") {
        Err(_) => Ok(DEFAULT_MAX_MINORS),
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("TWIST_MAX_MINORS must be a nonnegative integer, got `{v}`"))),
    }
}

fn run(cli: &Cli) -> Result<(output::Output, u8), CliError> {
    match &cli.command {
        Command::Monodromy { input, d, alpha } => {
            Ok((commands::monodromy(&input.source(), *d, alpha, max_minors()?)?, 0))
        }
        Command::Seifert { input, d, r, n, sweep } => {
            let args = SeifertArgs { d: *d, r: *r, n: *n, sweep: *sweep };
            Ok((commands::seifert(&input.source(), &args)?, 0))
        }
        Command::Resultant { poly, file, fixture, d, sweep } => {
            let source = match (file, fixture) {
                (Some(p), _) => Some(Source::File(p.clone())),
                (None, Some(f)) => Some(Source::Fixture(f.clone())),
                (None, None) => None,
            };
            Ok((commands::resultant(poly.as_deref(), source.as_ref(), *d, *sweep)?, 0))
        }
        Command::Homcheck { fixture, presentation, hom } => {
            let (out, ok) = commands::homcheck(fixture.as_deref(), presentation.as_deref(), hom.as_deref())?;
            Ok((out, if ok { 0 } else { 2 }))
        }
        Command::Report { presentation } => {
            let (out, r) = commands::report(presentation, max_minors()?)?;
            let code = match r.verdict {
                Verdict::ConsistentWithFibred => 0,
                Verdict::NotFibred => 2,
                Verdict::Inconclusive if r.hit_size_cap() => 65,
                Verdict::Inconclusive => 3,
            };
            Ok((out, code))
        }
        Command::Selftest { seed } => {
            let seed = match seed {
                Some(s) => *s,
                None => std::env::var("TWIST_SEED").ok().and_then(|v| v.parse().ok()).unwrap_or(DEFAULT_SEED),
            };
            let (out, ok) = commands::selftest(seed)?;
            Ok((out, if ok { 0 } else { 1 }))
        }
    }
}

fn main() -> ExitCode {
    let json = std::env::args().any(|a| a == "--json");
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 64 } else { 0 };
            if code == 64 && json {
                let body = json!({"error": "usage", "message": e.kind().to_string(), "exit_code": 64});
                println!("{}", serde_json::to_string_pretty(&body).expect("JSON values serialize"));
            } else {
                let _ = e.print();
            }
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok((out, code)) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.render(cli.json).as_bytes());
            ExitCode::from(code)
        }
        Err(e) => {
            let code = e.exit_code();
            if cli.json {
                let body = json!({"error": e.to_string(), "exit_code": code});
                println!("{}", serde_json::to_string_pretty(&body).expect("JSON values serialize"));
            } else {
                eprintln!("twist: {e}");
            }
            ExitCode::from(code)
        }
    }
}
