// Copyright 2026 The gausscollide Authors
// SPDX-License-Identifier: Apache-2.0

//! Non-Markovianity from violations of CPTP divisibility of the system's
//! one-mode Gaussian channel `sigma_S(j) = X_j sigma_in X_j^T + Y_j`.
//!
//! `X_j` and `Y_j` are given in covariance units where the vacuum is `I`.
//! The intermediate map `Phi_{j,j-1}` is CPTP iff
//!
//! ```text
//! F_j = 1/2 Y_{j,j-1} - i/2 Omega + i/2 X_{j,j-1} Omega X_{j,j-1}^T >= 0,
//! X_{j,j-1} = X_j X_{j-1}^-1,   Y_{j,j-1} = Y_j - X_{j,j-1} Y_{j-1} X_{j,j-1}^T.
//! ```
//!
//! The `1/2` converts `Y` to units where the vacuum is `I/2`. With a vacuum
//! environment the eigenvalues of `F_j` are then exactly
//! `{0, 1 - |C22(j)|^2 / |C22(j-1)|^2}`.

use nalgebra::Matrix2;
use num_complex::Complex64;

use crate::engine::{Trajectory, NORMALIZATION_TOL};
use crate::error::{Error, Result};
use crate::gaussian::EnvironmentSpec;
use crate::linalg::CCoefficients;

/// Steps whose previous `|C22|^2` falls below this are skipped.
pub const SINGULAR_TOL: f64 = 1e-14;

/// `(X_j, Y_j)` of the dynamical map after `step` rounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelPair {
    pub step: usize,
    pub x: Matrix2<f64>,
    pub y: Matrix2<f64>,
    /// `|C22(j)|^2 = det X_j`.
    pub c22_norm_sqr: f64,
}

impl ChannelPair {
    /// Image `X sigma X^T + Y` of a one-mode input.
    pub fn apply(&self, sigma_in: &Matrix2<f64>) -> Matrix2<f64> {
        self.x * sigma_in * self.x.transpose() + self.y
    }
}

pub fn channel_xy(coeffs: &CCoefficients, env: &EnvironmentSpec) -> Result<ChannelPair> {
    coeffs.check_normalized(NORMALIZATION_TOL)?;
    // Heisenberg-picture system amplitude S_22 = conj(C22).
    let s = coeffs.c22.conj();
    let x = Matrix2::new(s.re, -s.im, s.im, s.re);

    let loss = 1.0 - coeffs.c22_norm_sqr();
    let (big_n, big_m) = (env.noise_n(), env.noise_m());
    let c_me = coeffs.env_square_sum();
    let (c, sn) = (env.phi_env().cos(), env.phi_env().sin());
    let cos_pattern = Matrix2::new(c_me.re, -c_me.im, -c_me.im, -c_me.re);
    let sin_pattern = Matrix2::new(c_me.im, c_me.re, c_me.re, -c_me.im);
    let y = Matrix2::identity() * (big_n * loss) + cos_pattern * (big_m * c) + sin_pattern * (big_m * sn);

    Ok(ChannelPair {
        step: coeffs.step,
        x,
        y,
        c22_norm_sqr: coeffs.c22_norm_sqr(),
    })
}

fn omega2() -> Matrix2<f64> {
    Matrix2::new(0.0, 1.0, -1.0, 0.0)
}

/// `F_j` from consecutive channel pairs.
pub fn intermediate_f(pair_j: &ChannelPair, pair_jm1: &ChannelPair) -> Result<Matrix2<Complex64>> {
    let prev = pair_jm1.x.determinant();
    if prev.is_nan() || prev.abs() < SINGULAR_TOL {
        return Err(Error::SingularIntermediate {
            step: pair_j.step,
            c22_sq: prev.abs(),
        });
    }
    // X_{j-1} is |C22| times a rotation, so its inverse is X^T / det.
    let inv = pair_jm1.x.transpose() / prev;
    let xm = pair_j.x * inv;
    let ym = pair_j.y - xm * pair_jm1.y * xm.transpose();
    let omega = omega2();
    let imag = (xm * omega * xm.transpose() - omega) * 0.5;
    let real = ym * 0.5;
    let mut f = Matrix2::from_fn(|r, c| Complex64::new(real[(r, c)], imag[(r, c)]));
    // Hermitian by construction; remove rounding asymmetry.
    let off = 0.5 * (f[(0, 1)] + f[(1, 0)].conj());
    f[(0, 1)] = off;
    f[(1, 0)] = off.conj();
    f[(0, 0)].im = 0.0;
    f[(1, 1)].im = 0.0;
    Ok(f)
}

/// Eigenvalues of a Hermitian 2x2 matrix, ascending.
pub fn hermitian_eigenvalues(f: &Matrix2<Complex64>) -> [f64; 2] {
    let (a, d) = (f[(0, 0)].re, f[(1, 1)].re);
    let mean = 0.5 * (a + d);
    let half_gap = (0.25 * (a - d) * (a - d) + f[(0, 1)].norm_sqr()).sqrt();
    [mean - half_gap, mean + half_gap]
}

/// Closed-form eigenvalues `1/2 (N +- sqrt(M^2 + 1)) (1 - ratio)`, returned
/// as `(nu_plus, nu_minus)`.
///
/// Exact for thermal environments and, for squeezed ones, whenever the
/// network is real (phase shift 0 or pi). The labels follow the formula
/// branch, not the ordering.
pub fn eigenvalues_nu(big_n: f64, big_m: f64, ratio: f64) -> (f64, f64) {
    let root = (big_m * big_m + 1.0).sqrt();
    let scale = 0.5 * (1.0 - ratio);
    ((big_n + root) * scale, (big_n - root) * scale)
}

/// Divisibility data of one evaluated step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DivisibilityRecord {
    pub step: usize,
    /// Eigenvalues of `F_j`, ascending.
    pub eigenvalues: [f64; 2],
    /// `|C22(j)|^2 / |C22(j-1)|^2`.
    pub ratio: f64,
}

impl DivisibilityRecord {
    pub fn min(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max(&self) -> f64 {
        self.eigenvalues[1]
    }

    /// `sum_m (|nu_m| - nu_m) / 2`.
    pub fn violation(&self) -> f64 {
        self.eigenvalues.iter().map(|&v| 0.5 * (v.abs() - v)).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StepDivisibility {
    Evaluated(DivisibilityRecord),
    /// `|C22(j-1)|^2 < SINGULAR_TOL`; the intermediate map does not exist.
    Skipped {
        step: usize,
    },
}

impl StepDivisibility {
    pub fn step(&self) -> usize {
        match self {
            StepDivisibility::Evaluated(r) => r.step,
            StepDivisibility::Skipped { step } => *step,
        }
    }

    pub fn record(&self) -> Option<&DivisibilityRecord> {
        match self {
            StepDivisibility::Evaluated(r) => Some(r),
            StepDivisibility::Skipped { .. } => None,
        }
    }
}

/// Divisibility of every intermediate map `Phi_{j,j-1}`, `j = 1..`, from a
/// coefficient sequence starting at step 0.
pub fn divisibility_series(coeffs: &[CCoefficients], env: &EnvironmentSpec) -> Result<Vec<StepDivisibility>> {
    let pairs = coeffs.iter().map(|c| channel_xy(c, env)).collect::<Result<Vec<_>>>()?;
    pairs
        .windows(2)
        .map(|w| match intermediate_f(&w[1], &w[0]) {
            Ok(f) => Ok(StepDivisibility::Evaluated(DivisibilityRecord {
                step: w[1].step,
                eigenvalues: hermitian_eigenvalues(&f),
                ratio: w[1].c22_norm_sqr / w[0].c22_norm_sqr,
            })),
            Err(Error::SingularIntermediate { step, .. }) => Ok(StepDivisibility::Skipped { step }),
            Err(e) => Err(e),
        })
        .collect()
}

/// Value of the divisibility measure plus the steps that could not be evaluated.
#[derive(Debug, Clone, PartialEq)]
pub struct CptpMeasure {
    pub value: f64,
    pub skipped_steps: Vec<usize>,
}

/// `sum_{j=2}^{L} sum_m (|nu_{j,m}| - nu_{j,m}) / 2` over a coefficient sequence.
pub fn nm_cptp_from_coefficients(coeffs: &[CCoefficients], env: &EnvironmentSpec) -> Result<CptpMeasure> {
    if coeffs.len() < 3 {
        return Err(Error::Domain {
            name: "L",
            value: coeffs.len().saturating_sub(1) as f64,
            domain: "L >= 2",
        });
    }
    let mut value = 0.0;
    let mut skipped_steps = Vec::new();
    for step in divisibility_series(coeffs, env)? {
        if step.step() < 2 {
            continue;
        }
        match step {
            StepDivisibility::Evaluated(r) => value += r.violation(),
            StepDivisibility::Skipped { step } => skipped_steps.push(step),
        }
    }
    Ok(CptpMeasure { value, skipped_steps })
}

pub fn nm_cptp(traj: &Trajectory) -> Result<CptpMeasure> {
    let coeffs: Vec<CCoefficients> = traj.steps.iter().map(|s| s.coeffs.clone()).collect();
    nm_cptp_from_coefficients(&coeffs, &traj.config.env)
}
