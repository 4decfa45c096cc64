//! `motiondet` command-line front end.
//!
//! Exit codes: 0 on success, 1 on an I/O failure during processing, 2 on a
//! usage, configuration or unreadable-input error.

use std::process::ExitCode;

use clap::Parser;
use thiserror::Error;

mod args;
mod commands;
mod pipeline;
mod report;

use args::{Cli, Command};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Runtime(String),
    /// Processing stopped part way; `footer` is the summary flagged incomplete.
    #[error("{message}")]
    Incomplete { message: String, footer: String },
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Input(_) => 2,
            CliError::Runtime(_) | CliError::Incomplete { .. } => 1,
        }
    }
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Run(args) => {
            let cfg = pipeline::PipelineConfig::from_args(&args)?;
            if args.print_config {
                println!("{}", serde_json::to_string_pretty(&cfg).expect("config serialises"));
                return Ok(());
            }
            let outcome = pipeline::run(&cfg)?;
            let t = outcome.timing;
            eprintln!(
                "timing: {} frames, detection {:.3} s, {:.1} frames/s",
                t.frames, t.detect_seconds, t.fps
            );
            println!("{}", outcome.footer_json);
        }
        Command::Synth(args) => {
            let n = commands::synth(&args)?;
            eprintln!("wrote {n} frames to {}", args.out.display());
        }
        Command::Eval(args) => {
            println!("{}", commands::eval(&args)?);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            if let CliError::Incomplete { footer, .. } = &err {
                println!("{footer}");
            }
            eprintln!("motiondet: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
