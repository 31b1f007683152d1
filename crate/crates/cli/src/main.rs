mod commands;
mod config;
mod error;
mod output;

use std::process::ExitCode;

use config::{parse_config, Parsed};

fn main() -> ExitCode {
    let result = parse_config(std::env::args_os()).and_then(|parsed| match parsed {
        Parsed::Info(text) => {
            print!("{text}");
            Ok(())
        }
        Parsed::Run(cfg) => commands::run(&cfg),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code())
        }
    }
}
