// Copyright 2026 The gausscollide Authors
// SPDX-License-Identifier: Apache-2.0

use std::io::Write;

use clap::ValueEnum;
use gausscollide_core::{
    divisibility_series, evaluate, steerability, threshold_an_to_s_squeezed_vac, threshold_an_to_s_thermal,
    threshold_s_to_an, Direction, EnvironmentSpec, Error, Evolution, JointSpec, NonMarkovianity, Scenario,
    SimulationConfig, StepDivisibility,
};
use rayon::prelude::*;

use crate::args::{EnvFamily, EvolveArgs, ModelArgs, ScanArgs, ThresholdArgs, ThresholdFamily, TransportArgs};
use crate::config::ConfigFile;
use crate::error::{CliError, CliResult};
use crate::format::{Cell, Format, TableWriter};
use crate::parse::{parse_angle, parse_bool, parse_float, parse_modes, parse_values};

pub const DEFAULT_XI: f64 = 1.0;
pub const DEFAULT_ROUNDS: usize = 250;
pub const DEFAULT_GRID: &str = "0.05:0.95:19";
pub const DEFAULT_THRESHOLD_N: &str = "0,0.5,1,2";
pub const DEFAULT_THRESHOLD_XI: &str = "1";
pub const DEFAULT_THRESHOLD_ZETA: &str = "0:1.5:7";

/// Resolved parameters other than the reflectivities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Model {
    pub phi: f64,
    pub xi: f64,
    pub env: EnvironmentSpec,
    pub rounds: usize,
}

impl Model {
    pub fn config(&self, r1: f64, r2: f64) -> CliResult<SimulationConfig> {
        Ok(SimulationConfig::new(
            r1,
            r2,
            self.phi,
            JointSpec::new(self.xi)?,
            self.env,
            self.rounds,
        )?)
    }
}

fn parse_env_family(s: &str) -> Result<EnvFamily, String> {
    EnvFamily::from_str(s, true)
}

/// Merges flags with the config file and applies defaults.
///
/// `r1` and `r2` are returned separately; `scan` ignores them.
pub fn resolve_model(args: &ModelArgs, cfg: &ConfigFile) -> CliResult<(Option<f64>, Option<f64>, Model)> {
    let r1 = cfg.resolve(args.r1, "r1", parse_float)?;
    let r2 = cfg.resolve(args.r2, "r2", parse_float)?;
    let phi = cfg.resolve(args.phi, "phi", parse_angle)?.unwrap_or(0.0);
    let xi = cfg.resolve(args.xi, "xi", parse_float)?.unwrap_or(DEFAULT_XI);
    let n = cfg.resolve(args.n, "n", parse_float)?.unwrap_or(0.0);
    let zeta = cfg.resolve(args.zeta, "zeta", parse_float)?.unwrap_or(0.0);
    let phi_env = cfg.resolve(args.phi_env, "phi-env", parse_angle)?.unwrap_or(0.0);
    let rounds = cfg
        .resolve(args.rounds, "L", |s| {
            s.trim().parse::<usize>().map_err(|e| format!("invalid L `{s}`: {e}"))
        })?
        .unwrap_or(DEFAULT_ROUNDS);
    let family = cfg.resolve(args.env, "env", parse_env_family)?;
    let env = environment(family, n, zeta, phi_env)?;
    Ok((r1, r2, Model { phi, xi, env, rounds }))
}

/// Checks that parameters outside the chosen family are zero.
pub fn environment(family: Option<EnvFamily>, n: f64, zeta: f64, phi_env: f64) -> CliResult<EnvironmentSpec> {
    let conflicts: &[(&str, f64)] = match family {
        None | Some(EnvFamily::SqueezedThermal) => &[],
        Some(EnvFamily::Vacuum) => &[("n", n), ("zeta", zeta), ("phi-env", phi_env)],
        Some(EnvFamily::Thermal) => &[("zeta", zeta), ("phi-env", phi_env)],
        Some(EnvFamily::Squeezed) => &[("n", n)],
    };
    if let Some((name, _)) = conflicts.iter().find(|(_, v)| *v != 0.0) {
        let family = family
            .and_then(|f| f.to_possible_value())
            .map(|v| v.get_name().to_string());
        return Err(CliError::usage(format!(
            "--{name} must be 0 for --env {}",
            family.unwrap_or_default()
        )));
    }
    Ok(EnvironmentSpec::new(n, zeta, phi_env)?)
}

fn require(value: Option<f64>, name: &str) -> CliResult<f64> {
    value.ok_or_else(|| CliError::usage(format!("--{name} is required")))
}

fn steering_pair(joint: &gausscollide_core::CovarianceMatrix) -> CliResult<(f64, f64)> {
    Ok((
        steerability(joint, Scenario::SystemToAncilla.direction())?.value,
        steerability(joint, Scenario::AncillaToSystem.direction())?.value,
    ))
}

pub const EVOLVE_COLUMNS: &[&str] = &[
    "j",
    "re_c22",
    "im_c22",
    "abs_c22_sq",
    "G_S_to_An",
    "G_An_to_S",
    "nu_set_min",
    "nu_set_max",
    "ratio",
    "skip_flag",
];

pub fn evolve<W: Write>(args: &EvolveArgs, cfg: &ConfigFile, out: W, format: Format) -> CliResult<W> {
    let (r1, r2, model) = resolve_model(&args.model, cfg)?;
    let oracle = args.oracle || cfg.resolve(None, "oracle", parse_bool)?.unwrap_or(false);
    let config = model
        .config(require(r1, "r1")?, require(r2, "r2")?)?
        .with_oracle(oracle);
    let mut table = TableWriter::new(out, format, columns(EVOLVE_COLUMNS))?;
    let mut prev = None;
    for step in Evolution::new(config)? {
        let step = step?;
        let joint = if oracle {
            step.oracle_joint_cm()?
        } else {
            step.joint_cm.clone()
        };
        let (g_s_an, g_an_s) = steering_pair(&joint)?;
        let division = match prev.take() {
            None => None,
            Some(p) => divisibility_series(&[p, step.coeffs.clone()], &config.env)?.pop(),
        };
        let (min, max, ratio, skipped) = match division {
            Some(StepDivisibility::Evaluated(r)) => (Some(r.min()), Some(r.max()), Some(r.ratio), false),
            Some(StepDivisibility::Skipped { .. }) => (None, None, None, true),
            None => (None, None, None, false),
        };
        let c = step.coeffs.c22;
        table.row(&[
            Cell::Int(step.j as u64),
            c.re.into(),
            c.im.into(),
            step.coeffs.c22_norm_sqr().into(),
            g_s_an.into(),
            g_an_s.into(),
            min.into(),
            max.into(),
            ratio.into(),
            Cell::Flag(skipped),
        ])?;
        prev = Some(step.coeffs);
    }
    Ok(table.finish()?)
}

pub const SCAN_COLUMNS: &[&str] = &["r1", "r2", "N_GS_SAn", "N_GS_AnS", "N_CPTP"];

/// Summary of a finished scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanReport {
    pub cells: usize,
    pub skipped_steps: usize,
    pub cells_with_skips: usize,
}

fn grid(flag: &Option<String>, cfg: &ConfigFile, key: &str) -> CliResult<Vec<f64>> {
    let spec = flag.clone().or_else(|| cfg.get(key).map(str::to_string));
    let values =
        parse_values(spec.as_deref().unwrap_or(DEFAULT_GRID)).map_err(|e| CliError::usage(format!("--{key}: {e}")))?;
    if values.len() < 2 {
        return Err(CliError::usage(format!("--{key} needs at least 2 points")));
    }
    Ok(values)
}

pub fn resolve_jobs(flag: Option<usize>, cfg: &ConfigFile) -> CliResult<usize> {
    let jobs = cfg.resolve(flag, "jobs", |s| {
        s.trim()
            .parse::<usize>()
            .map_err(|e| format!("invalid jobs `{s}`: {e}"))
    })?;
    match jobs {
        Some(0) => Err(CliError::usage("--jobs must be at least 1")),
        Some(j) => Ok(j),
        None => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
    }
}

pub fn scan<W: Write>(args: &ScanArgs, cfg: &ConfigFile, out: W, format: Format) -> CliResult<(W, ScanReport)> {
    let (_, _, model) = resolve_model(&args.model, cfg)?;
    if model.rounds < 2 {
        return Err(CliError::usage("scan needs --L >= 2"));
    }
    let r1s = grid(&args.grid_r1, cfg, "grid-r1")?;
    let r2s = grid(&args.grid_r2, cfg, "grid-r2")?;
    let configs = r1s
        .iter()
        .flat_map(|&r1| r2s.iter().map(move |&r2| (r1, r2)))
        .map(|(r1, r2)| model.config(r1, r2))
        .collect::<CliResult<Vec<_>>>()?;
    let jobs = resolve_jobs(args.jobs, cfg)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError::usage(format!("cannot start {jobs} workers: {e}")))?;
    let results: Vec<gausscollide_core::Result<NonMarkovianity>> =
        pool.install(|| configs.par_iter().map(evaluate).collect());

    let mut table = TableWriter::new(out, format, columns(SCAN_COLUMNS))?;
    let mut report = ScanReport {
        cells: configs.len(),
        skipped_steps: 0,
        cells_with_skips: 0,
    };
    for (cfg, res) in configs.iter().zip(results) {
        let nm = res?;
        let skipped = nm.cptp.skipped_steps.len();
        report.skipped_steps += skipped;
        report.cells_with_skips += usize::from(skipped > 0);
        table.row(&[
            cfg.r1.into(),
            cfg.r2.into(),
            nm.gs_s_to_an.into(),
            nm.gs_an_to_s.into(),
            nm.cptp.value.into(),
        ])?;
    }
    Ok((table.finish()?, report))
}

pub fn transport<W: Write>(args: &TransportArgs, cfg: &ConfigFile, out: W, format: Format) -> CliResult<W> {
    let (r1, r2, model) = resolve_model(&args.model, cfg)?;
    let modes = match args.modes.as_slice() {
        [] => cfg
            .resolve(None, "modes", parse_modes)?
            .ok_or_else(|| CliError::usage("--modes is required"))?,
        given => given.to_vec(),
    };
    let config = model.config(require(r1, "r1")?, require(r2, "r2")?)?.with_oracle(true);
    let n_env = config.n_env();
    if let Some(&k) = modes.iter().find(|&&k| k > n_env) {
        return Err(Error::Index {
            what: "environment mode",
            index: k,
            valid: format!("1..={n_env}"),
        }
        .into());
    }
    let mut cols = vec!["j".to_string(), "G_S_to_An".to_string()];
    cols.extend(modes.iter().map(|k| format!("G_E{k}_to_An")));
    let mut table = TableWriter::new(out, format, cols)?;
    for step in Evolution::new(config)? {
        let step = step?;
        let mut cells = vec![
            Cell::Int(step.j as u64),
            steerability(&step.oracle_joint_cm()?, Scenario::SystemToAncilla.direction())?
                .value
                .into(),
        ];
        for &k in &modes {
            cells.push(steerability(&step.env_ancilla_cm(k)?, Direction::AtoB)?.value.into());
        }
        table.row(&cells)?;
    }
    Ok(table.finish()?)
}

fn sweep(flag: &Option<String>, cfg: &ConfigFile, key: &str, default: &str) -> CliResult<Vec<f64>> {
    let spec = flag.clone().or_else(|| cfg.get(key).map(str::to_string));
    parse_values(spec.as_deref().unwrap_or(default)).map_err(|e| CliError::usage(format!("--{key}: {e}")))
}

fn threshold_cell(value: gausscollide_core::Result<f64>) -> CliResult<Cell> {
    match value {
        Ok(v) => Ok(v.into()),
        Err(Error::UndefinedThreshold(_)) => Ok(Cell::Missing),
        Err(e) => Err(e.into()),
    }
}

pub fn thresholds<W: Write>(args: &ThresholdArgs, cfg: &ConfigFile, out: W, format: Format) -> CliResult<W> {
    let family = cfg
        .resolve(args.family, "family", |s| ThresholdFamily::from_str(s, true))?
        .ok_or_else(|| CliError::usage("--family is required"))?;
    let rows: Vec<Vec<Cell>> = match family {
        ThresholdFamily::SToAn => sweep(&args.n, cfg, "n", DEFAULT_THRESHOLD_N)?
            .into_iter()
            .map(|n| Ok(vec![n.into(), threshold_cell(threshold_s_to_an(n))?]))
            .collect::<CliResult<_>>()?,
        ThresholdFamily::AnToSThermal => {
            let xis = sweep(&args.xi, cfg, "xi", DEFAULT_THRESHOLD_XI)?;
            let mut rows = Vec::new();
            for n in sweep(&args.n, cfg, "n", DEFAULT_THRESHOLD_N)? {
                for &xi in &xis {
                    rows.push(vec![
                        n.into(),
                        xi.into(),
                        threshold_cell(threshold_an_to_s_thermal(n, xi))?,
                    ]);
                }
            }
            rows
        }
        ThresholdFamily::AnToSSqueezed => {
            let zetas = sweep(&args.zeta, cfg, "zeta", DEFAULT_THRESHOLD_ZETA)?;
            let mut rows = Vec::new();
            for xi in sweep(&args.xi, cfg, "xi", DEFAULT_THRESHOLD_XI)? {
                for &zeta in &zetas {
                    rows.push(vec![
                        xi.into(),
                        zeta.into(),
                        threshold_cell(threshold_an_to_s_squeezed_vac(xi, zeta))?,
                    ]);
                }
            }
            rows
        }
    };
    let cols: &[&str] = match family {
        ThresholdFamily::SToAn => &["n", "threshold"],
        ThresholdFamily::AnToSThermal => &["n", "xi", "threshold"],
        ThresholdFamily::AnToSSqueezed => &["xi", "zeta", "threshold"],
    };
    let mut table = TableWriter::new(out, format, columns(cols))?;
    for row in &rows {
        table.row(row)?;
    }
    Ok(table.finish()?)
}

fn columns(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn environment_conflicts_are_usage_errors() {
        assert!(environment(Some(EnvFamily::Vacuum), 0.0, 0.0, 0.0).unwrap().is_vacuum());
        assert!(matches!(
            environment(Some(EnvFamily::Vacuum), 1.0, 0.0, 0.0),
            Err(CliError::Usage(_))
        ));
        assert!(matches!(
            environment(Some(EnvFamily::Thermal), 1.0, 0.2, 0.0),
            Err(CliError::Usage(_))
        ));
        assert!(matches!(
            environment(Some(EnvFamily::Squeezed), 0.5, 0.2, 0.0),
            Err(CliError::Usage(_))
        ));
        let e = environment(None, 0.5, 0.2, 1.0).unwrap();
        assert_eq!((e.n(), e.zeta(), e.phi_env()), (0.5, 0.2, 1.0));
        assert_eq!(
            environment(None, -1.0, 0.0, 0.0).unwrap_err().exit_code(),
            crate::error::EXIT_USAGE
        );
    }

    #[test]
    fn config_supplies_defaults_and_flags_override() {
        let cfg = ConfigFile::parse("r1 = 0.4\nr2 = 0.3\nxi = 0.5\nL = 12\nenv = thermal\nn = 1\n").unwrap();
        let args = ModelArgs {
            xi: Some(1.5),
            ..ModelArgs::default()
        };
        let (r1, r2, m) = resolve_model(&args, &cfg).unwrap();
        assert_eq!(
            (r1, r2, m.xi, m.rounds, m.env.n()),
            (Some(0.4), Some(0.3), 1.5, 12, 1.0)
        );
        let (_, _, d) = resolve_model(&ModelArgs::default(), &ConfigFile::default()).unwrap();
        assert_eq!((d.xi, d.phi, d.rounds), (DEFAULT_XI, 0.0, DEFAULT_ROUNDS));
        assert!(d.env.is_vacuum());
    }

    #[test]
    fn jobs_precedence() {
        let cfg = ConfigFile::parse("jobs = 3").unwrap();
        assert_eq!(resolve_jobs(Some(5), &cfg).unwrap(), 5);
        assert_eq!(resolve_jobs(None, &cfg).unwrap(), 3);
        assert!(resolve_jobs(Some(0), &cfg).is_err());
        assert!(resolve_jobs(None, &ConfigFile::default()).unwrap() >= 1);
    }
}
