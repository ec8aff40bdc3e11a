//! `dml`: exact moments, reconstruction and Monte Carlo runs with JSON/CSV artifacts.

mod artifact;
mod commands;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use serde_json::json;

use artifact::{error_record, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => e.exit(),
        Err(e) if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => e.exit(),
        Err(e) => {
            let record = json!({
                "tool": "dml",
                "version": env!("CARGO_PKG_VERSION"),
                "error": { "code": "usage", "message": e.to_string().trim() },
            });
            eprintln!("{record}");
            return ExitCode::from(2);
        }
    };
    if let Some(t) = cli.global.threads {
        // only fails if a pool already exists
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    match commands::execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", error_record(&cli, &e));
            ExitCode::from(1)
        }
    }
}
