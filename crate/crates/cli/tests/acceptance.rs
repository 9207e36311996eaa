// Copyright 2026 The gausscollide Authors
// SPDX-License-Identifier: Apache-2.0

//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on failure.

use std::f64::consts::PI;
use std::process::{Command, ExitCode};
use std::time::Instant;

use gausscollide_core::{
    divisibility_series, evaluate, run, steering_pair, threshold_s_to_an, EnvironmentSpec, JointSpec, SimulationConfig,
    StepDivisibility, Trajectory,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn cfg(r1: f64, r2: f64, phi: f64, xi: f64, env: EnvironmentSpec, rounds: usize) -> SimulationConfig {
    SimulationConfig::new(r1, r2, phi, JointSpec::new(xi).unwrap(), env, rounds).unwrap()
}

fn traj(c: &SimulationConfig) -> Trajectory {
    run(c).unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn initial_steering() -> Check {
    let mut worst: f64 = 0.0;
    for xi in [0.5, 1.0, 2.0] {
        let (a, b) = steering_pair(&traj(&cfg(0.4, 0.3, 0.0, xi, EnvironmentSpec::vacuum(), 1))).unwrap();
        let want = xi.cosh().ln();
        for g in [a.values[0], b.values[0]] {
            worst = worst.max((g - want).abs());
        }
    }
    ensure(worst < 1e-12, || format!("max deviation {worst:e}"))?;
    Ok(format!("max |G(0) - ln cosh xi| = {worst:.1e}"))
}

fn markovian_line() -> Check {
    let mut worst: f64 = 0.0;
    for r1 in [0.1, 0.3, 0.5, 0.7, 0.9] {
        let t = traj(&cfg(r1, 1.0, 0.0, 1.0, EnvironmentSpec::vacuum(), 250));
        let nm = gausscollide_core::witnesses(&t).unwrap();
        worst = worst.max(nm.gs_s_to_an).max(nm.gs_an_to_s).max(nm.cptp.value);
        let (a, b) = steering_pair(&t).unwrap();
        for s in [&a, &b] {
            let rise = s
                .values
                .windows(2)
                .map(|w| w[1] - w[0])
                .fold(f64::NEG_INFINITY, f64::max);
            ensure(rise <= 1e-10, || format!("r1 = {r1}: steering increases by {rise:e}"))?;
        }
    }
    ensure(worst < 1e-10, || format!("largest measure {worst:e}"))?;
    Ok(format!("largest measure on r2 = 1 is {worst:.1e}"))
}

fn random_env(rng: &mut ChaCha8Rng, family: usize) -> EnvironmentSpec {
    let n = rng.gen_range(0.0..2.0);
    let zeta = rng.gen_range(0.0..0.8);
    let phi_env = rng.gen_range(0.0..2.0 * PI);
    match family % 4 {
        0 => EnvironmentSpec::vacuum(),
        1 => EnvironmentSpec::thermal(n).unwrap(),
        2 => EnvironmentSpec::squeezed_vacuum(zeta, phi_env).unwrap(),
        _ => EnvironmentSpec::new(n, zeta, phi_env).unwrap(),
    }
}

fn random_network(rng: &mut ChaCha8Rng) -> (f64, f64, f64) {
    (
        rng.gen_range(0.05..0.95),
        rng.gen_range(0.05..0.95),
        rng.gen_range(0.0..2.0 * PI),
    )
}

fn oracle_equivalence() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6a55_c011);
    let mut worst: f64 = 0.0;
    for i in 0..50 {
        let (r1, r2, phi) = random_network(&mut rng);
        let xi = rng.gen_range(0.2..1.5);
        let env = random_env(&mut rng, i);
        let t = traj(&cfg(r1, r2, phi, xi, env, 25).with_oracle(true));
        for s in &t.steps {
            let d = (s.oracle_joint_cm().unwrap().matrix() - s.joint_cm.matrix()).amax();
            worst = worst.max(d);
        }
    }
    ensure(worst < 1e-10, || format!("max elementwise deviation {worst:e}"))?;
    Ok(format!("50 configs, max elementwise deviation {worst:.1e}"))
}

fn threshold_equivalence() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7e5e_0001);
    let mut checked = 0usize;
    for n in [0.0, 0.5, 1.0, 2.0] {
        let env = if n == 0.0 {
            EnvironmentSpec::vacuum()
        } else {
            EnvironmentSpec::thermal(n).unwrap()
        };
        let threshold = threshold_s_to_an(n).unwrap();
        for _ in 0..20 {
            let (r1, r2, phi) = random_network(&mut rng);
            let xi = rng.gen_range(0.2..1.5);
            let t = traj(&cfg(r1, r2, phi, xi, env, 100));
            let (s_an, an_s) = steering_pair(&t).unwrap();
            for (j, x) in t.c22_norm_sqr().into_iter().enumerate() {
                if (x - threshold).abs() > 1e-9 {
                    checked += 1;
                    ensure((s_an.values[j] > 0.0) == (x > threshold), || {
                        format!(
                            "n = {n}, ({r1}, {r2}, {phi}), step {j}: |C22|^2 = {x}, G = {}",
                            s_an.values[j]
                        )
                    })?;
                }
                if n == 0.0 && x > 1e-9 {
                    ensure(an_s.values[j] > 0.0, || {
                        format!("({r1}, {r2}, {phi}), step {j}: An -> S vanished at {x}")
                    })?;
                }
            }
        }
    }
    Ok(format!("{checked} steps agree with the threshold sign"))
}

fn vacuum_eigenvalues() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0e16_0005);
    let (mut zero_dev, mut other_dev): (f64, f64) = (0.0, 0.0);
    let mut evaluated = 0usize;
    for _ in 0..20 {
        let (r1, r2, phi) = random_network(&mut rng);
        let t = traj(&cfg(r1, r2, phi, 1.0, EnvironmentSpec::vacuum(), 60));
        let coeffs: Vec<_> = t.steps.iter().map(|s| s.coeffs.clone()).collect();
        for step in divisibility_series(&coeffs, &EnvironmentSpec::vacuum()).unwrap() {
            let StepDivisibility::Evaluated(rec) = step else {
                continue;
            };
            evaluated += 1;
            let other = 1.0 - rec.ratio;
            let [lo, hi] = rec.eigenvalues;
            // Pair the eigenvalue nearest zero with 0 and the other with 1 - ratio.
            let (z, o) = if lo.abs() <= hi.abs() { (lo, hi) } else { (hi, lo) };
            let (z, o) = if (o - other).abs() <= (z - other).abs() {
                (z, o)
            } else {
                (o, z)
            };
            zero_dev = zero_dev.max(z.abs());
            other_dev = other_dev.max((o - other).abs());
        }
    }
    ensure(zero_dev < 1e-12 && other_dev < 1e-10, || {
        format!("zero eigenvalue off by {zero_dev:e}, other off by {other_dev:e}")
    })?;
    Ok(format!(
        "{evaluated} steps, deviations {zero_dev:.1e} / {other_dev:.1e}"
    ))
}

fn scale_law() -> Check {
    let mut worst: f64 = 0.0;
    for &(r1, r2, phi) in &[(0.4, 0.3, 0.0), (0.4, 0.8, 0.0), (0.75, 0.15, PI), (0.6, 0.5, PI)] {
        let vac = evaluate(&cfg(r1, r2, phi, 1.0, EnvironmentSpec::vacuum(), 250))
            .unwrap()
            .cptp
            .value;
        for (n, zeta) in [(0.5, 0.0), (0.0, 0.4), (1.0, 0.3)] {
            let env = EnvironmentSpec::new(n, zeta, 0.0).unwrap();
            let got = evaluate(&cfg(r1, r2, phi, 1.0, env, 250)).unwrap().cptp.value;
            let want = (2.0 * n + 1.0) * zeta.cosh() * vac;
            let rel = (got - want).abs() / want.abs();
            ensure(rel < 1e-9, || {
                format!("({r1}, {r2}, {phi}) (n, zeta) = ({n}, {zeta}): {got} vs {want}")
            })?;
            worst = worst.max(rel);
        }
    }
    Ok(format!("max relative deviation {worst:.1e}"))
}

fn sudden_death_and_birth() -> Check {
    let c = cfg(0.4, 0.3, 0.0, 1.0, EnvironmentSpec::vacuum(), 10).with_oracle(true);
    let t = traj(&c);
    let (s_an, _) = steering_pair(&t).unwrap();
    let g = &s_an.values;
    let zeros_between = (1..g.len() - 1)
        .filter(|&j| g[j] == 0.0 && g[..j].iter().any(|&v| v > 0.0) && g[j + 1..].iter().any(|&v| v > 0.0))
        .count();
    ensure(zeros_between >= 2, || {
        format!("only {zeros_between} interior zeros in {g:?}")
    })?;
    let x = t.c22_norm_sqr();
    let crossings = x[..=6]
        .windows(2)
        .filter(|w| (w[0] - 0.5).signum() != (w[1] - 0.5).signum())
        .count();
    ensure(crossings >= 2, || format!("|C22|^2 crosses 1/2 only {crossings} times"))?;
    let e2 = gausscollide_core::steerability(
        &t.steps[1].env_ancilla_cm(2).unwrap(),
        gausscollide_core::Direction::AtoB,
    )
    .unwrap()
    .value;
    ensure(e2 > 0.0 && g[1] == 0.0, || {
        format!("after round 1: G(E2 -> An) = {e2}, G(S -> An) = {}", g[1])
    })?;
    Ok(format!(
        "{zeros_between} death intervals, {crossings} crossings, G(E2 -> An)(1) = {e2:.4}"
    ))
}

fn directional_asymmetry() -> Check {
    let mut parts = Vec::new();
    for xi in [0.5, 1.0, 1.5] {
        let t = traj(&cfg(0.4, 0.8, 0.0, xi, EnvironmentSpec::vacuum(), 250));
        let nm = gausscollide_core::witnesses(&t).unwrap();
        let (s_an, _) = steering_pair(&t).unwrap();
        let revived = s_an.values.iter().skip(2).any(|&v| v > 0.0);
        ensure(nm.gs_s_to_an == 0.0 && !revived, || {
            format!("xi = {xi}: S -> An measure {}", nm.gs_s_to_an)
        })?;
        ensure(nm.gs_an_to_s > 1e-6 && nm.cptp.value > 1e-6, || {
            format!("xi = {xi}: An -> S {}, CPTP {}", nm.gs_an_to_s, nm.cptp.value)
        })?;
        parts.push(format!("{:.3}", nm.gs_an_to_s));
    }
    Ok(format!("N_GS(S -> An) = 0, N_GS(An -> S) = {}", parts.join("/")))
}

fn phase_shifted_revival() -> Check {
    let t = traj(&cfg(0.75, 0.15, PI, 1.0, EnvironmentSpec::vacuum(), 120));
    let (s_an, _) = steering_pair(&t).unwrap();
    let g = &s_an.values;
    let mut run_len = 0;
    let mut revivals = 0;
    for &v in g {
        if v == 0.0 {
            run_len += 1;
        } else {
            if run_len >= 2 {
                revivals += 1;
            }
            run_len = 0;
        }
    }
    ensure(revivals >= 1, || {
        "no zero-run of length >= 2 followed by a revival".into()
    })?;
    Ok(format!("{revivals} death intervals of length >= 2 followed by rebirth"))
}

fn grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

fn boundary_agreement() -> Check {
    let axis = grid(0.05, 0.95, 21);
    let cells: Vec<(f64, f64)> = axis.iter().flat_map(|&a| axis.iter().map(move |&b| (a, b))).collect();
    let agree: usize = cells
        .par_iter()
        .map(|&(r1, r2)| {
            let nm = evaluate(&cfg(r1, r2, 0.0, 1.0, EnvironmentSpec::vacuum(), 250)).unwrap();
            usize::from((nm.cptp.value > 1e-8) == (nm.gs_an_to_s > 1e-8))
        })
        .sum();
    let frac = agree as f64 / cells.len() as f64;
    ensure(frac >= 0.95, || format!("agreement {:.1}%", 100.0 * frac))?;
    Ok(format!(
        "indicators agree on {agree}/{} cells ({:.1}%)",
        cells.len(),
        100.0 * frac
    ))
}

fn monotone_in_r2() -> Check {
    let values: Vec<f64> = (0..10)
        .map(|i| {
            let r2 = 0.05 + 0.1 * i as f64;
            evaluate(&cfg(0.4, r2, 0.0, 1.0, EnvironmentSpec::vacuum(), 250))
                .unwrap()
                .cptp
                .value
        })
        .collect();
    for (i, w) in values.windows(2).enumerate() {
        ensure(w[1] <= w[0] + 1e-9, || {
            format!("increase between sweep points {i} and {}: {values:?}", i + 1)
        })?;
    }
    Ok(format!(
        "N_CPTP from {:.4} down to {:.2e}",
        values[0],
        values[values.len() - 1]
    ))
}

fn deterministic_scan() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut outputs = Vec::new();
    for jobs in ["1", "8"] {
        let path = dir.path().join(format!("scan_{jobs}.csv"));
        let status = Command::new(env!("CARGO_BIN_EXE_gausscollide"))
            .args(["scan", "--L", "100", "--jobs", jobs, "--out"])
            .arg(&path)
            .env_remove("GAUSSCOLLIDE_JOBS")
            .output()
            .map_err(|e| e.to_string())?;
        ensure(status.status.success(), || {
            format!("--jobs {jobs} exited with {}", status.status)
        })?;
        outputs.push(std::fs::read(&path).map_err(|e| e.to_string())?);
    }
    ensure(outputs[0] == outputs[1], || "outputs differ".into())?;
    let rows = outputs[0].iter().filter(|&&b| b == b'\n').count() - 1;
    Ok(format!("{rows} rows, {} bytes identical", outputs[0].len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("initial steering equals ln cosh xi", initial_steering),
        ("Markovian line r2 = 1", markovian_line),
        ("closed form matches full propagation", oracle_equivalence),
        ("S -> An threshold equivalence", threshold_equivalence),
        ("vacuum eigenvalue structure", vacuum_eigenvalues),
        ("Gaussian-environment scale law", scale_law),
        ("sudden death and birth at P_a", sudden_death_and_birth),
        ("directional asymmetry at P_c", directional_asymmetry),
        ("phase-shifted revival pattern", phase_shifted_revival),
        ("boundary agreement on 21 x 21 grid", boundary_agreement),
        ("N_CPTP non-increasing in r2", monotone_in_r2),
        ("scan byte-identical for --jobs 1 and 8", deterministic_scan),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({secs:.1}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
