use std::process::ExitCode;

use clap::Parser;

use slopelab::commands::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(payload) => {
            print!("{payload}");
            ExitCode::SUCCESS
        }
        Err(err) => {
            let diagnostic = serde_json::json!({
                "error": err.to_string(),
                "causes": err.chain().skip(1).map(|c| c.to_string()).collect::<Vec<_>>(),
            });
            eprintln!("{diagnostic:#}");
            ExitCode::FAILURE
        }
    }
}
