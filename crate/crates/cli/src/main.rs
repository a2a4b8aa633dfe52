use std::process::ExitCode;

use clap::Parser;

use specrad_cli::app::{self, Cli, RunError};

fn main() -> ExitCode {
    let cli = Cli::parse(); // clap reports usage errors with exit code 2
    let mut stdout = std::io::stdout();
    match app::run(&cli, &mut stdout) {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(app::EXIT_COUNTEREXAMPLE),
        Err(RunError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(app::EXIT_USAGE)
        }
        Err(RunError::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(app::EXIT_DOMAIN_ERROR)
        }
    }
}
