use std::process::ExitCode;

use clap::Parser;
use mfill_cli::args::Format;
use mfill_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let text = match cli.common.format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    };
    match &cli.common.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    let failed = report.failures();
    if failed > 0 {
        eprintln!("{failed} of {} verdicts failed", report.verdicts.len());
        return ExitCode::from(1);
    }
    ExitCode::SUCCESS
}
