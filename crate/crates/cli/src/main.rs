//! Command-line front end for the `expfrac` library.
//!
//! Exit codes: 0 on success, 1 for validation problems (bad flags, specs,
//! or inputs the library rejects), 2 when `verify` finds failing checks.

mod commands;
mod output;
mod parse;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use commands::{DerivArgs, Figure1Args, HeatflowArgs, LaplaceArgs, VerifyArgs};

#[derive(Debug, Parser)]
#[command(
    name = "expfrac",
    version,
    about = "Fractional-order derivatives with a bounded exponential memory kernel",
    long_about = "Applies exponential-kernel fractional-derivative operators to closed-form \
                  functions on uniform grids, checks them against their Laplace-domain symbols, \
                  solves a steady fractional heat-flow model, and ships a self-verification \
                  suite. All output is deterministic; identical invocations produce \
                  byte-identical artifacts."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Apply a fractional-derivative operator to a function on a grid
    Deriv(DerivArgs),
    /// Compare the numerical Laplace transform of the derivative with the
    /// operator's rational symbol
    Laplace(LaplaceArgs),
    /// Solve the steady heat-flow model for one or more orders
    Heatflow(HeatflowArgs),
    /// Emit the three reference temperature profiles (orders 0.3, 0.6, and
    /// the classical law)
    Figure1(Figure1Args),
    /// Run the library's invariant suite and report each check
    Verify(VerifyArgs),
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    let result = match &cli.command {
        Command::Deriv(args) => commands::deriv(args),
        Command::Laplace(args) => commands::laplace(args),
        Command::Heatflow(args) => commands::heatflow(args),
        Command::Figure1(args) => commands::figure1(args),
        Command::Verify(args) => commands::run_verify(args),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
