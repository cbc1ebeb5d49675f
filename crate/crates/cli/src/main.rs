//! `caecc`: encode, decode, simulate and analyse composite asymmetric
//! error-correcting codes from the command line.

mod code_args;
mod commands;
mod error;
mod grid;
mod output;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use commands::analysis::{BoundsArgs, StatsCommand, VerifyArgs};
use commands::codec::{CorrectArgs, DecodeArgs, EncodeArgs, ParamsArgs};
use commands::simulate::{ReadsCommand, SimulateArgs};
use error::{CliError, CliResult};

#[derive(Debug, Parser)]
#[command(
    name = "caecc",
    version,
    about = "Composite asymmetric error-correcting codes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Derived parameters of a code.
    Params(ParamsArgs),
    /// Payload file to codeword file.
    Encode(EncodeArgs),
    /// Received word file to payload file.
    Decode(DecodeArgs),
    /// Received word file to corrected codeword file.
    Correct(CorrectArgs),
    /// Monte Carlo decoding over the deletion channel.
    Simulate(SimulateArgs),
    /// Sample or aggregate sequencing reads.
    #[command(subcommand)]
    Reads(ReadsCommand),
    /// Redundancy bounds over a parameter grid.
    Bounds(BoundsArgs),
    /// Read-depth statistics.
    #[command(subcommand)]
    Stats(StatsCommand),
    /// Exhaustive checks of a small code.
    Verify(VerifyArgs),
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Params(args) => commands::codec::params(&args),
        Command::Encode(args) => commands::codec::encode(&args),
        Command::Decode(args) => commands::codec::decode(&args),
        Command::Correct(args) => commands::codec::correct(&args),
        Command::Simulate(args) => commands::simulate::simulate(&args),
        Command::Reads(command) => commands::simulate::reads(&command),
        Command::Bounds(args) => commands::analysis::bounds(&args),
        Command::Stats(command) => commands::analysis::stats(&command),
        Command::Verify(args) => commands::analysis::verify(&args),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err)
            if matches!(
                err.kind(),
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion
            ) =>
        {
            let _ = err.print();
            return ExitCode::SUCCESS;
        }
        Err(err) => {
            let err = CliError::usage(err.render().to_string().trim_end());
            eprintln!("{}", err.to_json());
            return ExitCode::from(err.exit);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("{}", err.to_json());
            ExitCode::from(err.exit)
        }
    }
}
