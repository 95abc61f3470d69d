//! Library side of the `dirac-bands` binary: argument parsing, the five
//! subcommands and artifact formatting.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;

use clap::{Parser, Subcommand};

use crate::commands::Outcome;
use crate::config::CommonArgs;
use crate::error::{CliError, Result};

#[derive(Debug, Parser)]
#[command(
    name = "dirac-bands",
    version,
    about = "Band structure of the periodic one-soliton Dirac potential"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Copy, Subcommand)]
pub enum Command {
    /// Periodized potential S₁(x) over --periods periods (`x,s1`)
    Potential,
    /// Lyapunov function D(E) on [emin, emax] (`e,d,regime`)
    Lyapunov,
    /// Band edges and bands with |E| up to max(|emin|, |emax|)
    Bands,
    /// Dispersion K(E) of the allowed band --band-index (`k,e`)
    Dispersion,
    /// Self-check suite; exits 3 if any check fails
    Verify,
}

pub fn execute(cli: &Cli) -> Result<Outcome> {
    let args = &cli.common;
    match cli.command {
        Command::Potential => commands::potential(args),
        Command::Lyapunov => commands::lyapunov(args),
        Command::Bands => commands::bands(args),
        Command::Dispersion => commands::dispersion_cmd(args),
        Command::Verify => commands::verify(args),
    }
}

/// Runs a parsed command line and writes its artifact. The artifact is written
/// even when a verification inside it fails; that case returns
/// [`CliError::Verification`].
pub fn run(cli: &Cli) -> Result<()> {
    let outcome = execute(cli)?;
    let text = outcome.artifact.render(outcome.config.format, &outcome.config.params)?;
    output::emit(&text, outcome.config.out.as_deref())?;
    match outcome.failure {
        Some(why) => Err(CliError::Verification(why)),
        None => Ok(()),
    }
}
