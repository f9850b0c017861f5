//! `groupie` command-line front end.
//!
//! Exit status: 0 on success, 1 on runtime or I/O failure (including a
//! failed verification suite), 2 on usage errors.

mod args;
mod commands;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use commands::{Failure, RUNTIME};

fn dispatch(command: &Command) -> Result<(String, bool), Failure> {
    let ok = |text: String| (text, true);
    match command {
        Command::Generate(a) => commands::generate_cmd(a).map(ok),
        Command::Analyze(a) => commands::analyze_cmd(a).map(ok),
        Command::Simulate(a) => commands::simulate_cmd(a).map(ok),
        Command::Moments(m) => commands::moments_cmd(m).map(ok),
        Command::Limit(l) => commands::limit_cmd(l).map(ok),
        Command::Sweep(a) => commands::sweep_cmd(a).map(ok),
        Command::Verify(a) => commands::verify_cmd(a),
    }
}

fn run(cli: &Cli) -> Result<(String, bool), Failure> {
    match cli.threads {
        None => dispatch(&cli.command),
        Some(0) => Err(Failure::usage("--threads must be at least 1")),
        Some(threads) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .map_err(|e| Failure::runtime(e.to_string()))?;
            pool.install(|| dispatch(&cli.command))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((text, passed)) => {
            let mut stdout = std::io::stdout().lock();
            if !text.is_empty() {
                let ends_with_newline = text.ends_with('\n');
                if stdout.write_all(text.as_bytes()).is_err()
                    || (!ends_with_newline && stdout.write_all(b"\n").is_err())
                {
                    return ExitCode::from(RUNTIME as u8);
                }
            }
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(RUNTIME as u8)
            }
        }
        Err(Failure { code, message }) => {
            eprintln!("error: {message}");
            ExitCode::from(code as u8)
        }
    }
}
