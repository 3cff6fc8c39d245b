use std::process::ExitCode;

use clap::Parser;
use gk_cli::{run, Cli};

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            print!("{}", outcome.summary);
            for f in &outcome.files {
                println!("wrote {}", f.display());
            }
            if outcome.verified {
                ExitCode::SUCCESS
            } else {
                eprintln!("{}", serde_json::json!({ "error": { "kind": "verification", "exit_code": 1 } }));
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("{}", e.diagnostic());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
