//! Argument parsing and dispatch, separated from `main` so it can be
//! driven in-process.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::commands::{self, Command};
use crate::config::RunConfig;

#[derive(Debug, Parser)]
#[command(
    name = "nclab",
    version,
    about = "Noncommutative 2-D oscillator: constants, dynamics, energies, Wigner functions"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// JSON configuration file; flags override its keys.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory [default: $NCLAB_OUT or ./nclab-out].
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(flatten)]
    flags: RunConfig,
}

#[derive(Debug, Clone, Copy, Subcommand)]
enum Cmd {
    /// Derived constants and consistency checks.
    Constants,
    /// Phase-space trajectory, analytic and/or RK4.
    Simulate,
    /// Sector energy series.
    Xi,
    /// Wigner function slice, star-genvalue residuals, normalization.
    Wigner,
    /// Data behind the sector-energy figures.
    Figure,
    /// First-order error over a grid of γ/Ω.
    Sweep,
}

impl From<Cmd> for Command {
    fn from(c: Cmd) -> Self {
        match c {
            Cmd::Constants => Command::Constants,
            Cmd::Simulate => Command::Simulate,
            Cmd::Xi => Command::Xi,
            Cmd::Wigner => Command::Wigner,
            Cmd::Figure => Command::Figure,
            Cmd::Sweep => Command::Sweep,
        }
    }
}

/// Exit code plus what would have gone to stdout and stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs one invocation. `default_out` stands in for `NCLAB_OUT`.
pub fn run<I, T>(args: I, default_out: Option<PathBuf>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            let code = e.exit_code();
            let (stdout, stderr) = if e.use_stderr() {
                (String::new(), text)
            } else {
                (text, String::new())
            };
            return Outcome {
                code,
                stdout,
                stderr,
            };
        }
    };
    let out = cli
        .out
        .or(default_out)
        .unwrap_or_else(|| PathBuf::from("nclab-out"));
    let mut stdout = String::new();
    let result = RunConfig::resolve(cli.config.as_deref(), cli.flags)
        .and_then(|cfg| commands::run(cli.command.into(), &cfg, &out))
        .and_then(|report| {
            stdout.push_str(&report.table);
            report.into_result()
        });
    match result {
        Ok(_) => Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout,
            stderr: format!("error: {e}\n"),
        },
    }
}
