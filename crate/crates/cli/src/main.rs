mod args;
mod commands;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use serde::Serialize;
use sha2::{Digest, Sha256};

use args::{Cli, Command};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Lib(#[from] permlab::Error),
    #[error("{0}")]
    Usage(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

/// Everything needed to reproduce an output byte for byte.
#[derive(Serialize)]
struct RunManifest<'a> {
    command: &'a str,
    parameters: &'a Command,
    seed: u64,
    version: &'a str,
    output_sha256: String,
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("PERMLAB_THREADS") else {
        return Ok(());
    };
    let n: usize = raw.trim().parse().map_err(|_| CliError::Usage(format!("PERMLAB_THREADS must be a number, got {raw:?}")))?;
    if n > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<bool, CliError> {
    configure_threads()?;
    let cmd = &cli.command;
    let out = match cmd {
        Command::Expectation(a) => commands::expectation(a)?,
        Command::Series(a) => commands::series(a)?,
        Command::Enumerate(a) => commands::enumerate(a)?,
        Command::Sample(a) => commands::sample(a)?,
        Command::Biject(a) => commands::biject(a)?,
        Command::Verify(a) => commands::verify(a)?,
    };
    let common = cmd.common();
    match &common.out {
        Some(path) => std::fs::write(path, &out.body)?,
        None => std::io::stdout().lock().write_all(out.body.as_bytes())?,
    }
    if let Some(path) = &common.manifest {
        let manifest = RunManifest {
            command: cmd.name(),
            parameters: cmd,
            seed: common.seed,
            version: env!("CARGO_PKG_VERSION"),
            output_sha256: hex::encode(Sha256::digest(out.body.as_bytes())),
        };
        let mut text = serde_json::to_string_pretty(&manifest).expect("manifest is plain data");
        text.push('\n');
        std::fs::write(path, text)?;
    }
    Ok(out.failed)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
