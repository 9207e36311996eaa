// Copyright 2026 The gausscollide Authors
// SPDX-License-Identifier: Apache-2.0

//! The L-round collision simulation.
//!
//! Every step yields the C-coefficients and the ancilla/system covariance
//! matrix in closed form. With the oracle enabled the full `(L+3)`-mode
//! covariance matrix is also propagated symplectically, round by round,
//! starting from `TMSV (+) (L+1) x squeezed thermal`.

use nalgebra::{DMatrix, Matrix2};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gaussian::{reduce_to_modes, squeezed_thermal_cm, tmsv_cm, CovarianceMatrix, EnvironmentSpec, JointSpec};
use crate::linalg::{
    env_mode, passive_symplectic, round_modes, CCoefficients, CollisionNetwork, NetworkComposer, ANCILLA, SYSTEM,
};

/// Tolerance on `|C22|^2 + sum |C_l2|^2 = 1` accepted by the closed forms.
pub const NORMALIZATION_TOL: f64 = 1e-10;

/// Physical and numerical parameters of one run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimulationConfig {
    pub r1: f64,
    pub r2: f64,
    pub phi_shift: f64,
    pub joint: JointSpec,
    pub env: EnvironmentSpec,
    /// Number of collision rounds `L`.
    pub rounds: usize,
    pub oracle_enabled: bool,
}

impl SimulationConfig {
    pub fn new(
        r1: f64,
        r2: f64,
        phi_shift: f64,
        joint: JointSpec,
        env: EnvironmentSpec,
        rounds: usize,
    ) -> Result<Self> {
        let config = Self {
            r1,
            r2,
            phi_shift,
            joint,
            env,
            rounds,
            oracle_enabled: false,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn with_oracle(mut self, enabled: bool) -> Self {
        self.oracle_enabled = enabled;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.rounds == 0 {
            return Err(Error::Domain {
                name: "L",
                value: 0.0,
                domain: "positive integers",
            });
        }
        self.network().map(|_| ())
    }

    pub fn network(&self) -> Result<CollisionNetwork> {
        CollisionNetwork::new(self.r1, self.r2, self.phi_shift, self.rounds)
    }

    /// Number of environment modes, `L + 1`.
    pub fn n_env(&self) -> usize {
        self.rounds + 1
    }
}

/// One collision step.
#[derive(Debug, Clone, PartialEq)]
pub struct StepRecord {
    pub j: usize,
    pub coeffs: CCoefficients,
    /// Ancilla first, system second.
    pub joint_cm: CovarianceMatrix,
    /// All `L + 3` modes; present only on the oracle path.
    pub full_cm: Option<CovarianceMatrix>,
}

impl StepRecord {
    /// Ancilla/system reduction of the full-chain matrix.
    pub fn oracle_joint_cm(&self) -> Result<CovarianceMatrix> {
        let full = self.full_cm.as_ref().ok_or(Error::OracleDisabled)?;
        reduce_to_modes(full, &[ANCILLA, SYSTEM])
    }

    /// `(E_k, An)` covariance matrix, `E_k` first.
    pub fn env_ancilla_cm(&self, k: usize) -> Result<CovarianceMatrix> {
        env_ancilla_cm(self.full_cm.as_ref().ok_or(Error::OracleDisabled)?, k)
    }
}

/// Reduces the full-chain covariance matrix to `(E_k, An)`, `k >= 1`.
pub fn env_ancilla_cm(full_cm: &CovarianceMatrix, k: usize) -> Result<CovarianceMatrix> {
    let n_env = full_cm.n_modes().saturating_sub(2);
    if k == 0 || k > n_env {
        return Err(Error::Index {
            what: "environment mode",
            index: k,
            valid: format!("1..={n_env}"),
        });
    }
    reduce_to_modes(full_cm, &[env_mode(k), ANCILLA])
}

/// A finished run, steps `j = 0..=L`.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub config: SimulationConfig,
    pub steps: Vec<StepRecord>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// `|C22(j)|^2` for every step.
    pub fn c22_norm_sqr(&self) -> Vec<f64> {
        self.steps.iter().map(|s| s.coeffs.c22_norm_sqr()).collect()
    }
}

/// Closed form of the ancilla/system covariance matrix from the `C` coefficients.
pub fn joint_cm_closed_form(
    coeffs: &CCoefficients,
    joint: &JointSpec,
    env: &EnvironmentSpec,
) -> Result<CovarianceMatrix> {
    coeffs.check_normalized(NORMALIZATION_TOL)?;
    let x = coeffs.c22_norm_sqr();
    let (ch_xi, sh_xi) = (joint.xi().cosh(), joint.xi().sinh());
    let (ch_z, sh_z) = (env.zeta().cosh(), env.zeta().sinh());
    let half = env.n() + 0.5;
    let c_me = coeffs.env_square_sum();
    let c_me_conj = c_me.conj();
    let e = Complex64::from_polar(1.0, env.phi_env());
    let i = Complex64::new(0.0, 1.0);

    let sum = e * c_me_conj + e.conj() * c_me;
    let diff = (e * c_me_conj - e.conj() * c_me) / i;
    let diag = ch_xi * x + 2.0 * half * ch_z * (1.0 - x);
    let sxx = half * sh_z * sum.re + diag;
    let sxp = half * sh_z * diff.re;
    let spp = -half * sh_z * sum.re + diag;

    let cs = coeffs.c22.conj();
    let v_j = Matrix2::new(sh_xi * cs.re, sh_xi * cs.im, sh_xi * cs.im, -sh_xi * cs.re);

    let mut m = DMatrix::zeros(4, 4);
    m.fixed_view_mut::<2, 2>(0, 0).copy_from(&(Matrix2::identity() * ch_xi));
    m.fixed_view_mut::<2, 2>(0, 2).copy_from(&v_j);
    m.fixed_view_mut::<2, 2>(2, 0).copy_from(&v_j.transpose());
    m.fixed_view_mut::<2, 2>(2, 2)
        .copy_from(&Matrix2::new(sxx, sxp, sxp, spp));
    Ok(CovarianceMatrix::from_raw(m))
}

/// Lazily-evaluated run: yields `StepRecord`s for `j = 0..=L`.
#[derive(Debug, Clone)]
pub struct Evolution {
    config: SimulationConfig,
    composer: NetworkComposer,
    round_symplectic: DMatrix<f64>,
    full: Option<CovarianceMatrix>,
    emitted_initial: bool,
}

impl Evolution {
    pub fn new(config: SimulationConfig) -> Result<Self> {
        config.validate()?;
        let network = config.network()?;
        let full = config.oracle_enabled.then(|| initial_full_cm(&config));
        Ok(Self {
            config,
            composer: network.composer(),
            round_symplectic: passive_symplectic(&network.round_block()),
            full,
            emitted_initial: false,
        })
    }

    pub fn config(&self) -> &SimulationConfig {
        &self.config
    }

    fn record(&self) -> Result<StepRecord> {
        let coeffs = self.composer.coefficients();
        let joint_cm = joint_cm_closed_form(&coeffs, &self.config.joint, &self.config.env)?;
        Ok(StepRecord {
            j: self.composer.step(),
            coeffs,
            joint_cm,
            full_cm: self.full.clone(),
        })
    }
}

impl Iterator for Evolution {
    type Item = Result<StepRecord>;

    fn next(&mut self) -> Option<Self::Item> {
        if !self.emitted_initial {
            self.emitted_initial = true;
            return Some(self.record());
        }
        let j = self.composer.advance()?;
        if let Some(full) = self.full.as_mut() {
            if let Err(e) = full.transform_modes(&self.round_symplectic, &round_modes(j)) {
                return Some(Err(e));
            }
        }
        Some(self.record())
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = self.config.rounds - self.composer.step() + usize::from(!self.emitted_initial);
        (left, Some(left))
    }
}

fn initial_full_cm(config: &SimulationConfig) -> CovarianceMatrix {
    let joint = tmsv_cm(&config.joint);
    let env = squeezed_thermal_cm(&config.env);
    let mut parts = vec![&joint];
    parts.extend(std::iter::repeat_n(&env, config.n_env()));
    CovarianceMatrix::direct_sum(&parts)
}

/// Runs the whole trajectory.
pub fn run(config: &SimulationConfig) -> Result<Trajectory> {
    let steps = Evolution::new(*config)?.collect::<Result<Vec<_>>>()?;
    Ok(Trajectory { config: *config, steps })
}
