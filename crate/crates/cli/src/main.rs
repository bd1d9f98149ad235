//! `mosaic`: generation, verification and security analysis of design mosaics.
//!
//! Every command prints one JSON document embedding its parameters and a
//! content hash of its inputs. Exit status is 2 for invalid input and 1 when
//! a checked property fails; the error itself is printed as JSON on stderr.

mod args;
mod commands;
mod output;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Gen(a) => commands::gen(a),
        Command::Verify(a) => commands::verify(a),
        Command::Rates(a) => commands::rates(a),
        Command::Bounds(a) => commands::bounds(a),
        Command::Exact(a) => commands::exact(a),
        Command::Hashprops(a) => commands::hashprops(a),
        Command::Simulate(a) => commands::simulate(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("{}", f.to_json());
            ExitCode::from(f.exit_code())
        }
    }
}
