//! The `lpa` command-line tool: subcommands, reports, graph export and the
//! HTTP API behind `lpa serve`.

pub mod args;
pub mod commands;
pub mod context;
pub mod export;
pub mod render;
pub mod report;
pub mod serve;

use std::ffi::OsString;

use clap::Parser;

pub use args::Cli;
use args::Command;
use context::Failure;

/// Runs the tool and returns the exit status: 0 on success, 1 when a check
/// fails or the computation does, 2 on usage errors.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    if let Command::Serve = cli.command {
        let rt = match tokio::runtime::Runtime::new() {
            Ok(rt) => rt,
            Err(e) => {
                eprintln!("error: {e}");
                return 1;
            }
        };
        return match rt.block_on(serve::serve(cli.port, cli.workers)) {
            Ok(()) => 0,
            Err(e) => {
                eprintln!("error: {e}");
                1
            }
        };
    }
    match commands::execute(&cli) {
        Ok(outcome) => {
            if let Err(f) = write_output(&cli, &outcome.output) {
                eprintln!("error: {f}");
                return f.exit_code();
            }
            match outcome.failure {
                Some(f) => {
                    eprintln!("error: {f}");
                    f.exit_code()
                }
                None => 0,
            }
        }
        Err(f) => {
            eprintln!("error: {f}");
            f.exit_code()
        }
    }
}

fn write_output(cli: &Cli, text: &str) -> Result<(), Failure> {
    match &cli.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::Runtime(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
