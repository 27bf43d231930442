mod commands;
mod config;

use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use gapn_core::Error;
use serde_json::Value;

use crate::config::{Cli, CommandKind, RunConfig};

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::GuardExceeded(_) | Error::TooLarge { .. } => 3,
        Error::HypothesisFailed(_) => 4,
        Error::VerificationFailed(_) => 5,
        Error::NotPrime(_)
        | Error::Reducible(_)
        | Error::BadModulus(_)
        | Error::BadParameters(_)
        | Error::SpecMismatch
        | Error::Parse(_) => 2,
        _ => 1,
    }
}

fn fail(err: &Error) -> ExitCode {
    eprintln!("gapn: {err}");
    ExitCode::from(exit_code(err))
}

fn emit(config: &RunConfig, report: &Value) -> Result<(), Error> {
    let text = serde_json::to_string_pretty(report).expect("reports serialize");
    match writeln!(io::stdout().lock(), "{text}") {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => return Err(Error::Parse(format!("stdout: {e}"))),
        _ => {}
    }
    if let Some(path) = &config.output {
        fs::write(path, format!("{text}\n")).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn run(config: &RunConfig) -> Result<(), Error> {
    match config.command {
        CommandKind::Check => emit(config, &commands::check(config)?),
        CommandKind::Search => {
            let stdout = io::stdout();
            let mut out: Box<dyn Write> = match &config.output {
                Some(path) => Box::new(io::BufWriter::new(
                    fs::File::create(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?,
                )),
                None => Box::new(stdout.lock()),
            };
            commands::search(config, &mut out)?;
            out.flush().map_err(|e| Error::Parse(format!("flushing output: {e}")))
        }
        CommandKind::Dualarc { munu } => {
            let (report, verdict) = commands::dualarc(config, munu)?;
            emit(config, &report)?;
            verdict
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let config = match RunConfig::from_cli(Cli::parse()) {
        Ok(c) => c,
        Err(e) => return fail(&e),
    };
    if let Some(n) = config.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("gapn: {e}");
            return ExitCode::from(2);
        }
    }
    log::debug!("running {:?} over {}", config.command, config.field);
    match run(&config) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(&e),
    }
}
