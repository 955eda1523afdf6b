use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use pentacode::cli::{render, Cli, CommandSpec, RunConfig, EXIT_USAGE};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match cli.into_config() {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    match cfg.command {
        CommandSpec::Verify { quick, seed } => {
            ExitCode::from(pentacode::cli::run_verify(quick, seed))
        }
        _ => match run_emit(&cfg) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(EXIT_USAGE)
            }
        },
    }
}

fn run_emit(cfg: &RunConfig) -> Result<(), Box<dyn std::error::Error>> {
    let bytes = render(cfg)?;
    match &cfg.out {
        Some(path) => std::fs::write(path, bytes)?,
        None => std::io::stdout().write_all(&bytes)?,
    }
    Ok(())
}
