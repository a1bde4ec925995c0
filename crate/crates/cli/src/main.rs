use std::process::ExitCode;

use anyon_cli::{run, Cli};
use clap::Parser;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("anyon: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
