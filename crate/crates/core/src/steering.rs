// Copyright 2026 The gausscollide Authors
// SPDX-License-Identifier: Apache-2.0

//! Gaussian steerability of one mode by another and the steering-based
//! non-Markovianity measure.
//!
//! For a two-mode covariance matrix `sigma = [[V_A, C], [C^T, V_B]]`,
//! `G(A -> B) = max{0, 1/2 ln(det V_A / det sigma)}` (nats).

use crate::engine::Trajectory;
use crate::error::{Error, Result};
use crate::gaussian::CovarianceMatrix;

/// Raw values at or below this are reported as exactly zero.
pub const ZERO_STEERING: f64 = 1e-12;
/// Smallest `det sigma` accepted before declaring numerical degeneracy.
pub const DET_FLOOR: f64 = 1e-300;

/// Which party steers, given a two-mode matrix ordered `(A, B)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    /// A steers B; uses `det V_A`.
    AtoB,
    /// B steers A; uses `det V_B`.
    BtoA,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SteeringValue {
    pub direction: Direction,
    pub value: f64,
}

impl SteeringValue {
    pub fn is_steerable(&self) -> bool {
        self.value > 0.0
    }
}

pub fn steerability(cm: &CovarianceMatrix, direction: Direction) -> Result<SteeringValue> {
    if cm.n_modes() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: cm.n_modes(),
        });
    }
    let det = cm.determinant();
    if !det.is_finite() || det < DET_FLOOR {
        return Err(Error::Degenerate(format!("det sigma = {det:e}")));
    }
    let steering_block = match direction {
        Direction::AtoB => cm.block(0, 0),
        Direction::BtoA => cm.block(1, 1),
    };
    let det_v = steering_block.determinant();
    if !det_v.is_finite() || det_v < DET_FLOOR {
        return Err(Error::Degenerate(format!("det V = {det_v:e}")));
    }
    let raw = 0.5 * (det_v.ln() - det.ln());
    let value = if raw <= ZERO_STEERING { 0.0 } else { raw };
    Ok(SteeringValue { direction, value })
}

/// Steering scenario on the ancilla/system pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scenario {
    /// `G(S -> An)`: the system steers the ancilla.
    SystemToAncilla,
    /// `G(An -> S)`: the ancilla steers the system.
    AncillaToSystem,
}

impl Scenario {
    /// Direction on a matrix ordered `(An, S)`.
    pub fn direction(self) -> Direction {
        match self {
            Scenario::SystemToAncilla => Direction::BtoA,
            Scenario::AncillaToSystem => Direction::AtoB,
        }
    }
}

/// Steering values indexed by step `j = 0..=L`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SteeringSeries {
    pub values: Vec<f64>,
}

impl SteeringSeries {
    pub fn new(values: Vec<f64>) -> Self {
        Self { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

impl FromIterator<f64> for SteeringSeries {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        Self {
            values: iter.into_iter().collect(),
        }
    }
}

/// Steering of the joint ancilla/system state at every step.
pub fn steering_series(traj: &Trajectory, scenario: Scenario) -> Result<SteeringSeries> {
    traj.steps
        .iter()
        .map(|s| steerability(&s.joint_cm, scenario.direction()).map(|v| v.value))
        .collect()
}

/// Accumulated increases `sum_{j>=1} max{0, G(j) - G(j-1)}`.
pub fn nm_from_steering(series: &SteeringSeries) -> f64 {
    series.values.windows(2).map(|w| (w[1] - w[0]).max(0.0)).sum()
}

fn check_occupation(n: f64) -> Result<()> {
    if n >= 0.0 && n.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain {
            name: "n",
            value: n,
            domain: "[0, inf)",
        })
    }
}

/// `1 - 1/(2(n+1))`: `G(S -> An) > 0` iff `|C22|^2` exceeds it.
///
/// Holds for any squeezing when the network is real (phase shift 0 or pi),
/// and for any phase shift when the environment is thermal.
pub fn threshold_s_to_an(n: f64) -> Result<f64> {
    check_occupation(n)?;
    Ok(1.0 - 1.0 / (2.0 * (n + 1.0)))
}

/// `2n cosh xi / ((2n+1) cosh xi - 1)` for thermal environments.
pub fn threshold_an_to_s_thermal(n: f64, xi: f64) -> Result<f64> {
    check_occupation(n)?;
    let ch = xi.cosh();
    let den = (2.0 * n + 1.0) * ch - 1.0;
    if den.is_nan() || den <= 0.0 {
        return Err(Error::UndefinedThreshold(format!(
            "(2n+1) cosh xi - 1 = {den:e} for n = {n}, xi = {xi}"
        )));
    }
    Ok(2.0 * n * ch / den)
}

/// Minimal `|C22|^2` above which the ancilla steers the system in a
/// squeezed-vacuum environment.
///
/// The closed form `2 cosh xi (cosh xi - cosh zeta) / (1 - 2 cosh zeta cosh xi + cosh^2 xi)`
/// is the threshold only while `2 cosh zeta cosh xi - cosh^2 xi - 1 > 0`.
/// Otherwise the steering condition holds for every `|C22|^2 > 0` and the
/// threshold is 0; this covers `zeta = 0` and `xi = zeta`.
pub fn threshold_an_to_s_squeezed_vac(xi: f64, zeta: f64) -> Result<f64> {
    if !xi.is_finite() || xi <= 0.0 || !zeta.is_finite() {
        return Err(Error::UndefinedThreshold(format!(
            "no initial steering at xi = {xi} (zeta = {zeta})"
        )));
    }
    let (ch, cz) = (xi.cosh(), zeta.cosh());
    let slope = 2.0 * cz * ch - ch * ch - 1.0;
    if slope <= 0.0 {
        return Ok(0.0);
    }
    let closed = 2.0 * ch * (ch - cz) / (1.0 - 2.0 * cz * ch + ch * ch);
    Ok(closed.max(0.0))
}
