//! `rbg`: batch front end for the rbgroups engine.
//!
//! Every command prints one canonical JSON document (sorted keys, one line)
//! on standard output. Exit codes: 0 success, 2 validation failure, 3 cap or
//! gate, 64 usage error, 65 malformed input.

mod commands;
mod config;
mod manifest;

use std::process::ExitCode;
use std::time::Instant;

use clap::{error::ErrorKind, Parser};
use rbgroups::io::{to_canonical_json, FORMAT};
use rbgroups::Error;
use serde_json::json;

use crate::commands::{Cli, Inputs};

const EXIT_VALIDATION: u8 = 2;
const EXIT_LIMIT: u8 = 3;
const EXIT_USAGE: u8 = 64;
const EXIT_MALFORMED: u8 = 65;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::MalformedInput(_) => EXIT_MALFORMED,
        e if e.is_limit() => EXIT_LIMIT,
        _ => EXIT_VALIDATION,
    }
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let settings = match config::Settings::load(&cli.global) {
        Ok(s) => s,
        Err(e) => return fail(&e),
    };
    if let Some(jobs) = settings.jobs {
        // only fails if a pool already exists, which cannot happen here
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    }
    let inputs = Inputs::default();
    let start = Instant::now();
    let report = match commands::run(&cli.command, &settings, &inputs) {
        Ok(r) => r,
        Err(e) => return fail(&e),
    };
    let text = to_canonical_json(&report);
    if let Some(dir) = &cli.global.runs_dir {
        let m = manifest::RunManifest::new(&argv, &inputs, &settings, start.elapsed(), &text);
        if let Err(e) = m.persist(dir, &text) {
            eprintln!("cannot persist run under {}: {e}", dir.display());
            return ExitCode::from(1);
        }
    }
    print!("{text}");
    ExitCode::SUCCESS
}

fn fail(e: &Error) -> ExitCode {
    let report = json!({
        "format": FORMAT,
        "error": { "kind": e.kind(), "message": e.to_string() },
    });
    print!("{}", to_canonical_json(&report));
    ExitCode::from(exit_code(e))
}
