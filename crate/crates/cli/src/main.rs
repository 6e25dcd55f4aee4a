//! `flatnorm` command-line tool.
//!
//! Exit codes: 0 success, 1 self-test failure, 2 invalid input or flags,
//! 3 solver resource limit. Set `FLATNORM_THREADS` to cap parallelism.

mod args;
mod commands;
mod io;
mod lambdas;
mod plot;
mod selftest;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use io::{emit, CliError, CliResult, Output};

fn init_threads() -> CliResult<()> {
    let Ok(v) = std::env::var("FLATNORM_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::invalid(format!("FLATNORM_THREADS must be a positive integer, got {v:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::invalid(format!("thread pool: {e}")))
}

fn run(cli: &Cli) -> CliResult<()> {
    init_threads()?;
    match &cli.command {
        Command::Compute(a) => commands::compute(a),
        Command::Distance(a) => commands::distance(a),
        Command::Sweep(a) => commands::sweep(a),
        Command::Rasterize(a) => commands::rasterize_cmd(a),
        Command::Selftest(a) => {
            let report = selftest::run(a.seed, a.cases);
            emit(&[Output::new(&a.out, report.text)])?;
            if report.passed {
                Ok(())
            } else {
                Err(CliError::SuiteFailed)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = if cli.quiet { "error" } else { "info" };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level))
        .format_timestamp(None)
        .target(env_logger::Target::Stderr)
        .init();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.report());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
