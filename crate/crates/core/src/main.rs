use std::process::ExitCode;

use clap::Parser;
use kneser_lab::cli::{exit_code, run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(&cli);
    if let Err(e) = &outcome {
        eprintln!("kneser-lab: {e}");
    }
    ExitCode::from(exit_code(&outcome))
}
