use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

mod cli;
mod commands;
mod output;

use cli::Cli;
use commands::Failure;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(outcome) => {
            let mut stdout = std::io::stdout().lock();
            if let Err(e) = output::emit(&outcome, cli.format, &mut stdout).and_then(|_| stdout.flush()) {
                eprintln!("error: writing output: {e}");
                return ExitCode::from(1);
            }
            if outcome.passed {
                ExitCode::SUCCESS
            } else {
                eprintln!("validation failed");
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}\n\nFor more information, try '--help'.");
            ExitCode::from(2)
        }
        Err(Failure::Run(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
