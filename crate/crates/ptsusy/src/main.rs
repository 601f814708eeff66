use clap::Parser;
use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(ptsusy::cli::run(ptsusy::cli::Cli::parse()))
}
