use std::process::ExitCode;

use clap::Parser;

mod args;
mod commands;
mod report;

use args::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli.command) {
        Ok(report) => {
            let out = if cli.json {
                report.to_json()
            } else {
                report.to_text(cli.approx)
            };
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
