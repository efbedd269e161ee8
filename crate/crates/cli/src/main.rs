use std::process::ExitCode;

use clap::Parser;
use sylowkit_cli::args::Cli;
use sylowkit_cli::{run, Exit};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let common = cli.command.common();
    let outcome = run(&cli.command);
    let text = outcome.text(common.timing);
    print!("{text}");
    let mut exit = outcome.exit;
    let report_path = match &cli.command {
        sylowkit_cli::args::Command::Construct { .. } => None,
        _ => common.out.as_ref(),
    };
    if let Some(path) = report_path {
        if let Err(e) = std::fs::write(path, &text) {
            eprintln!("cannot write report to {}: {e}", path.display());
            exit = Exit::Io;
        }
    }
    ExitCode::from(exit as u8)
}
