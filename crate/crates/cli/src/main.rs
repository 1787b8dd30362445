//! `zpl`: command-line driver for the zero-statistics laboratory.
//!
//! Exit codes: 0 success, 2 usage or domain error, 3 table coverage,
//! 4 numerical failure.

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use config::{Command, RunConfig, Settings};
use zpl_core::Error;

#[derive(Debug)]
pub struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        Self { code: 2, message: message.into() }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Coverage { .. } => 3,
        Error::NoConvergence { .. } | Error::Numerical(_) | Error::Pole => 4,
        Error::Sample { source, .. } => exit_code(source),
        Error::Domain(_) | Error::Parse { .. } | Error::InsufficientData(_) | Error::Io(_) => 2,
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        Self { code: exit_code(&e), message: e.to_string() }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::usage(e.to_string())
    }
}

#[derive(Parser)]
#[command(name = "zpl", version, about = "Gap statistics of zeta zeros, ζ′ zeros and unit-circle polynomials")]
struct Cli {
    #[command(flatten)]
    flags: Flags,
    #[command(subcommand)]
    command: Top,
}

#[derive(Args, Default)]
struct Flags {
    /// Zero table: one ordinate per line, '#' comments
    #[arg(long, global = true, value_name = "PATH")]
    table: Option<String>,
    /// Height range T0:T1
    #[arg(long, global = true, value_name = "T0:T1", allow_hyphen_values = true)]
    range: Option<String>,
    #[arg(long, global = true)]
    eps: Option<String>,
    #[arg(long, global = true)]
    cstar: Option<String>,
    /// Constant C of the zero-count condition
    #[arg(long, global = true)]
    c: Option<String>,
    /// Constant A of the height offset |t − γ′| ≤ A/log γ′
    #[arg(long, global = true)]
    a: Option<String>,
    /// Base seed; sample i uses seed + i
    #[arg(long, global = true)]
    seed: Option<String>,
    #[arg(long, global = true)]
    samples: Option<String>,
    /// Polynomial degree or matrix dimension N
    #[arg(long, global = true)]
    degree: Option<String>,
    /// quarter, half, full, or START:END in radians
    #[arg(long, global = true, allow_hyphen_values = true)]
    arc: Option<String>,
    /// Fit window for m̂ (for arc: the ν grid of m̂′)
    #[arg(long, global = true, value_name = "LO:HI")]
    fit: Option<String>,
    /// Fit window for m̂′
    #[arg(long, global = true, value_name = "LO:HI")]
    fit_prime: Option<String>,
    /// Distance window INNER:OUTER of the neighbor sum
    #[arg(long, global = true)]
    window: Option<String>,
    /// Single 0-based ordinate index for msum
    #[arg(long, global = true)]
    index: Option<String>,
    /// Comma-separated ν values for the hypothesis counter
    #[arg(long, global = true)]
    nu: Option<String>,
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<String>,
    /// Cache directory for ζ′ zero searches (default $ZPL_CACHE)
    #[arg(long, global = true, value_name = "DIR")]
    cache: Option<String>,
    /// key = value file; flags override its entries
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
}

impl Flags {
    fn settings(&self) -> Settings {
        let mut s = Settings::default();
        let pairs = [
            ("table", &self.table),
            ("range", &self.range),
            ("eps", &self.eps),
            ("cstar", &self.cstar),
            ("c", &self.c),
            ("a", &self.a),
            ("seed", &self.seed),
            ("samples", &self.samples),
            ("degree", &self.degree),
            ("arc", &self.arc),
            ("fit", &self.fit),
            ("fit_prime", &self.fit_prime),
            ("window", &self.window),
            ("index", &self.index),
            ("nu", &self.nu),
            ("out", &self.out),
            ("cache", &self.cache),
        ];
        for (k, v) in pairs {
            if let Some(v) = v {
                s.set(k, v.clone());
            }
        }
        s
    }
}

#[derive(Subcommand)]
enum Top {
    /// Zeros equally spaced on an arc, their derivative zeros, unrolled
    Arc,
    /// CUE eigenangle ensemble: pooled λ and λ′ with power-law fits
    Cue,
    /// Statistics on a table of zeta ordinates
    Zeta {
        #[command(subcommand)]
        what: Zeta,
    },
}

#[derive(Subcommand)]
enum Zeta {
    /// Normalized gaps λ_j
    Gaps,
    /// Neighbor sums M(γ_j) and their truncated form
    Msum,
    /// Well-spaced ordinates
    Filter,
    /// Zeros of ζ′ in the range, with pairing data
    Dzeros,
    /// Moment residuals of the ζ′ zeros
    Residuals,
    /// Counts of small λ′ and of small gaps
    Hypothesis,
}

fn run(cli: Cli) -> Result<(), CliError> {
    let command = match cli.command {
        Top::Arc => Command::Arc,
        Top::Cue => Command::Cue,
        Top::Zeta { what } => match what {
            Zeta::Gaps => Command::Gaps,
            Zeta::Msum => Command::Msum,
            Zeta::Filter => Command::Filter,
            Zeta::Dzeros => Command::Dzeros,
            Zeta::Residuals => Command::Residuals,
            Zeta::Hypothesis => Command::Hypothesis,
        },
    };
    let base = match &cli.flags.config {
        Some(p) => Settings::load(p)?,
        None => Settings::default(),
    };
    let settings = base.overlay(cli.flags.settings());
    let env_cache = std::env::var_os("ZPL_CACHE").filter(|v| !v.is_empty()).map(PathBuf::from);
    let cfg = RunConfig::resolve(command, &settings, env_cache)?;
    commands::run(&cfg)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("zpl: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
