// Copyright 2026 The gausscollide Authors
// SPDX-License-Identifier: Apache-2.0

//! Command-line front end producing deterministic CSV or JSON-lines tables.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod format;
pub mod parse;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};

use clap::error::ErrorKind;
use clap::Parser;

use crate::args::{Cli, Command};
use crate::config::ConfigFile;
use crate::error::{CliError, CliResult, EXIT_OK, EXIT_USAGE};
use crate::format::Format;

pub use crate::error::{EXIT_IO, EXIT_NUMERICAL};

pub fn run(cli: &Cli) -> CliResult<()> {
    let cfg = match &cli.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };
    let format = cfg
        .resolve(cli.format, "format", |s| <Format as clap::ValueEnum>::from_str(s, true))?
        .unwrap_or_default();
    let out_path = cli.out.clone().or_else(|| cfg.get("out").map(Into::into));
    let out: Box<dyn Write> = match &out_path {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    match &cli.command {
        Command::Evolve(a) => commands::evolve(a, &cfg, out, format).map(drop),
        Command::Scan(a) => {
            let (_, report) = commands::scan(a, &cfg, out, format)?;
            eprintln!(
                "scan: {} cells, {} skipped divisibility steps in {} cells",
                report.cells, report.skipped_steps, report.cells_with_skips
            );
            Ok(())
        }
        Command::Transport(a) => commands::transport(a, &cfg, out, format).map(drop),
        Command::Thresholds(a) => commands::thresholds(a, &cfg, out, format).map(drop),
    }
}

/// Parses `argv`, runs the command and returns the process exit status.
pub fn main_with<I, T>(argv: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
        }
    };
    match run(&cli) {
        Ok(()) => EXIT_OK,
        Err(CliError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
