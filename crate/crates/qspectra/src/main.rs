use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = qspectra::cli::Cli::parse();
    ExitCode::from(qspectra::cli::run(&cli))
}
