// Copyright 2026 The gausscollide Authors
// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::format::Format;
use crate::parse::{parse_angle, parse_float, parse_mode};

#[derive(Debug, Parser)]
#[command(name = "gausscollide", version, about = "Gaussian collision-model simulator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Defaults file with `key = value` lines.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write to FILE instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Per-step trajectory of one configuration.
    Evolve(EvolveArgs),
    /// Non-Markovianity measures over an r1-r2 grid.
    Scan(ScanArgs),
    /// Steering of the ancilla by the system and by environment modes.
    Transport(TransportArgs),
    /// Closed-form steering thresholds over a parameter sweep.
    Thresholds(ThresholdArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EnvFamily {
    Vacuum,
    Thermal,
    Squeezed,
    SqueezedThermal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ThresholdFamily {
    SToAn,
    AnToSThermal,
    AnToSSqueezed,
}

/// Physical parameters shared by the simulation commands.
#[derive(Debug, Clone, Default, Args)]
pub struct ModelArgs {
    #[arg(long, value_parser = parse_float)]
    pub r1: Option<f64>,
    #[arg(long, value_parser = parse_float)]
    pub r2: Option<f64>,
    /// Phase shift on the system port, radians or e.g. `pi/2`.
    #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
    pub phi: Option<f64>,
    /// Two-mode squeezing of the ancilla/system input.
    #[arg(long, value_parser = parse_float)]
    pub xi: Option<f64>,
    /// Mean photon number of each environment mode.
    #[arg(long, value_parser = parse_float)]
    pub n: Option<f64>,
    /// Squeezing of each environment mode.
    #[arg(long, value_parser = parse_float)]
    pub zeta: Option<f64>,
    #[arg(long = "phi-env", value_parser = parse_angle, allow_hyphen_values = true)]
    pub phi_env: Option<f64>,
    /// Number of collision rounds.
    #[arg(long = "L", value_name = "L")]
    pub rounds: Option<usize>,
    /// Environment family; inferred from --n/--zeta/--phi-env when omitted.
    #[arg(long, value_enum)]
    pub env: Option<EnvFamily>,
}

#[derive(Debug, Clone, Args)]
pub struct EvolveArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Take steering from the full-chain propagation.
    #[arg(long)]
    pub oracle: bool,
}

#[derive(Debug, Clone, Args)]
pub struct ScanArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// r1 values, `start:stop:count` or `a,b,c`.
    #[arg(long = "grid-r1")]
    pub grid_r1: Option<String>,
    #[arg(long = "grid-r2")]
    pub grid_r2: Option<String>,
    /// Worker threads.
    #[arg(long, env = "GAUSSCOLLIDE_JOBS")]
    pub jobs: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct TransportArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Environment modes `k` to report, e.g. `2,4,6`.
    #[arg(long, value_delimiter = ',', value_parser = parse_mode)]
    pub modes: Vec<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct ThresholdArgs {
    #[arg(long, value_enum)]
    pub family: Option<ThresholdFamily>,
    /// Occupations, `start:stop:count` or `a,b,c`.
    #[arg(long)]
    pub n: Option<String>,
    #[arg(long)]
    pub xi: Option<String>,
    #[arg(long)]
    pub zeta: Option<String>,
}
