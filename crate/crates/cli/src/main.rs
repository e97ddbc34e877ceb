//! `kronbound`: entry bounds for inverses of Kronecker sums, checked against
//! a dense oracle.
//!
//! Exit codes: 0 success, 1 property violation (`verify`), 2 configuration
//! error, 3 matrix not SPD, 4 quadrature did not converge.

mod commands;
mod csv;
mod source;
mod sweep;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use kronbound::Error;

const EXIT_VIOLATION: u8 = 1;
const EXIT_CONFIG: u8 = 2;
const EXIT_NOT_SPD: u8 = 3;
const EXIT_QUADRATURE: u8 = 4;

#[derive(Debug, Parser)]
#[command(name = "kronbound", version, about = "Entry bounds for inverses of Kronecker sums of banded SPD matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write exact entries and all bounds for selected columns of S^{-1} as CSV.
    Bounds(commands::BoundsArgs),
    /// Check the bounds against the exact inverse; exits 1 on any violation.
    Verify(commands::VerifyArgs),
    /// Write the data behind one of the example figures as CSV.
    Figure(commands::FigureArgs),
}

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.chain().find_map(|c| c.downcast_ref::<Error>()) {
        Some(
            Error::NotPositiveDefinite { .. } | Error::NonPositivePivot { .. } | Error::NonPositiveDiagonal { .. },
        ) => EXIT_NOT_SPD,
        Some(Error::QuadratureNotConverged { .. }) => EXIT_QUADRATURE,
        _ => EXIT_CONFIG,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Bounds(args) => commands::bounds(args).map(|()| true),
        Command::Verify(args) => commands::verify(args),
        Command::Figure(args) => commands::figure(args).map(|()| true),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_VIOLATION),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
