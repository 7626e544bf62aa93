use std::process::ExitCode;

use clap::Parser;
use dvcity::cli::{run, Cli};

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("dvcity: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
