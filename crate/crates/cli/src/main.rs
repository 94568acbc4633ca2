mod args;
mod commands;
mod selftest;

use std::ffi::OsString;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command, Config};
use commands::{CliError, Exit};

fn config(cmd: &Command) -> &Config {
    match cmd {
        Command::Compute { config, .. }
        | Command::Tensor { config, .. }
        | Command::Decompose { config, .. }
        | Command::Selftest { config, .. }
        | Command::Bench { config, .. } => config,
    }
}

fn run(cli: Cli) -> Result<Exit, CliError> {
    if let Some(t) = config(&cli.command).threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t as usize)
            .build_global()
            .map_err(|e| CliError::input(e.to_string()))?;
    }
    match cli.command {
        Command::Compute {
            lambda,
            mu,
            nu,
            verify,
            config,
        } => commands::compute(lambda, mu, nu, verify, &config),
        Command::Tensor {
            factors,
            target,
            config,
        } => commands::tensor(factors, target, &config),
        Command::Decompose {
            lambda,
            mu,
            verify,
            config,
        } => commands::decompose(lambda, mu, verify, &config),
        Command::Selftest {
            suite,
            max_rank,
            seed,
            config,
        } => Ok(selftest::run(&suite, max_rank, seed, &config)),
        Command::Bench {
            rank,
            levels,
            config,
        } => commands::bench(rank, levels, &config),
    }
}

/// clap reads `-1,0` as a short flag; a leading space keeps a negative
/// partition positional (parsing trims it).
fn protect_negative(args: impl Iterator<Item = OsString>) -> Vec<OsString> {
    args.map(|a| match a.to_str() {
        Some(s) if s.len() > 1 && s.starts_with('-') && s.as_bytes()[1].is_ascii_digit() => {
            format!(" {s}").into()
        }
        _ => a,
    })
    .collect()
}

fn main() -> ExitCode {
    let exit = match run(Cli::parse_from(protect_negative(std::env::args_os()))) {
        Ok(exit) => exit,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit
        }
    };
    ExitCode::from(exit as u8)
}
