// Copyright 2026 The gausscollide Authors
// SPDX-License-Identifier: Apache-2.0

//! Zero-mean Gaussian states as covariance matrices.
//!
//! Quadratures are `q = a + a^dag`, `p = -i (a - a^dag)`, so the vacuum has
//! `sigma = I` and physical states satisfy `sigma + i Omega >= 0`. Rows are
//! interleaved `(q1, p1, q2, p2, ...)`.

use nalgebra::{DMatrix, Matrix2, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{symplectic_form, SymplecticMatrix};

const SYMMETRY_TOL: f64 = 1e-12;
/// Smallest admissible eigenvalue of `sigma + i Omega`.
pub const PHYSICALITY_TOL: f64 = 1e-10;

/// Real symmetric `2N x 2N` second-moment matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceMatrix {
    matrix: DMatrix<f64>,
}

impl CovarianceMatrix {
    pub fn new(matrix: DMatrix<f64>) -> Result<Self> {
        if !matrix.is_square() || matrix.nrows() == 0 || !matrix.nrows().is_multiple_of(2) {
            return Err(Error::DimensionMismatch {
                expected: 2 * (matrix.nrows() / 2).max(1),
                found: matrix.ncols(),
            });
        }
        let defect = asymmetry(&matrix);
        if defect > SYMMETRY_TOL * matrix.amax().max(1.0) {
            return Err(Error::NotSymmetric(defect));
        }
        Ok(Self { matrix })
    }

    /// `n`-mode vacuum.
    pub fn vacuum(n_modes: usize) -> Self {
        Self {
            matrix: DMatrix::identity(2 * n_modes, 2 * n_modes),
        }
    }

    pub(crate) fn from_raw(matrix: DMatrix<f64>) -> Self {
        Self { matrix }
    }

    pub fn n_modes(&self) -> usize {
        self.matrix.nrows() / 2
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<f64> {
        self.matrix
    }

    /// The 2x2 block between modes `a` and `b`.
    pub fn block(&self, a: usize, b: usize) -> Matrix2<f64> {
        self.matrix.fixed_view::<2, 2>(2 * a, 2 * b).into_owned()
    }

    pub fn determinant(&self) -> f64 {
        self.matrix.clone().determinant()
    }

    /// Block-diagonal direct sum, modes in the given order.
    pub fn direct_sum(parts: &[&CovarianceMatrix]) -> Self {
        let dim: usize = parts.iter().map(|p| p.matrix.nrows()).sum();
        let mut m = DMatrix::zeros(dim, dim);
        let mut off = 0;
        for p in parts {
            let d = p.matrix.nrows();
            m.view_mut((off, off), (d, d)).copy_from(&p.matrix);
            off += d;
        }
        Self { matrix: m }
    }

    /// `S sigma S^T` for a symplectic acting on every mode.
    pub fn transformed(&self, s: &SymplecticMatrix) -> Result<Self> {
        if s.n_modes() != self.n_modes() {
            return Err(Error::DimensionMismatch {
                expected: self.n_modes(),
                found: s.n_modes(),
            });
        }
        let m = s.matrix() * &self.matrix * s.matrix().transpose();
        Ok(Self { matrix: symmetrized(m) })
    }

    /// Applies a `2k x 2k` symplectic `local` to the listed `k` modes in place,
    /// leaving the rest untouched. Costs `O(N k^2)`.
    pub fn transform_modes(&mut self, local: &DMatrix<f64>, modes: &[usize]) -> Result<()> {
        let k = modes.len();
        if local.nrows() != 2 * k || local.ncols() != 2 * k {
            return Err(Error::DimensionMismatch {
                expected: 2 * k,
                found: local.nrows(),
            });
        }
        check_modes(modes, self.n_modes())?;
        let idx: Vec<usize> = modes.iter().flat_map(|&m| [2 * m, 2 * m + 1]).collect();
        let dim = self.matrix.nrows();

        // Rows: sigma[R, :] <- local * sigma[R, :]
        let mut rows = DMatrix::zeros(2 * k, dim);
        for (a, &ra) in idx.iter().enumerate() {
            rows.row_mut(a).copy_from(&self.matrix.row(ra));
        }
        let rows = local * rows;
        for (a, &ra) in idx.iter().enumerate() {
            self.matrix.row_mut(ra).copy_from(&rows.row(a));
        }
        // Columns: sigma[:, R] <- sigma[:, R] * local^T
        let mut cols = DMatrix::zeros(dim, 2 * k);
        for (a, &ca) in idx.iter().enumerate() {
            cols.column_mut(a).copy_from(&self.matrix.column(ca));
        }
        let cols = cols * local.transpose();
        for (a, &ca) in idx.iter().enumerate() {
            self.matrix.column_mut(ca).copy_from(&cols.column(a));
        }
        for &ra in &idx {
            for &cb in &idx {
                let avg = 0.5 * (self.matrix[(ra, cb)] + self.matrix[(cb, ra)]);
                self.matrix[(ra, cb)] = avg;
                self.matrix[(cb, ra)] = avg;
            }
        }
        Ok(())
    }

    pub fn physicality(&self) -> Physicality {
        physicality_of(&self.matrix)
    }
}

fn asymmetry(m: &DMatrix<f64>) -> f64 {
    (m - m.transpose()).amax()
}

fn symmetrized(m: DMatrix<f64>) -> DMatrix<f64> {
    let t = m.transpose();
    (m + t) * 0.5
}

fn check_modes(modes: &[usize], n_modes: usize) -> Result<()> {
    for (i, &m) in modes.iter().enumerate() {
        if m >= n_modes {
            return Err(Error::Index {
                what: "mode",
                index: m,
                valid: format!("0..{n_modes}"),
            });
        }
        if modes[..i].contains(&m) {
            return Err(Error::DuplicateMode(m));
        }
    }
    Ok(())
}

/// Environment input of every collision round: a squeezed thermal state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnvironmentSpec {
    n: f64,
    zeta: f64,
    phi_env: f64,
}

impl EnvironmentSpec {
    pub fn new(n: f64, zeta: f64, phi_env: f64) -> Result<Self> {
        if !(n >= 0.0 && n.is_finite()) {
            return Err(Error::Domain {
                name: "n",
                value: n,
                domain: "[0, inf)",
            });
        }
        for (name, v) in [("zeta", zeta), ("phi_env", phi_env)] {
            if !v.is_finite() {
                return Err(Error::Domain {
                    name,
                    value: v,
                    domain: "finite reals",
                });
            }
        }
        Ok(Self { n, zeta, phi_env })
    }

    pub fn vacuum() -> Self {
        Self {
            n: 0.0,
            zeta: 0.0,
            phi_env: 0.0,
        }
    }

    pub fn thermal(n: f64) -> Result<Self> {
        Self::new(n, 0.0, 0.0)
    }

    pub fn squeezed_vacuum(zeta: f64, phi_env: f64) -> Result<Self> {
        Self::new(0.0, zeta, phi_env)
    }

    /// Mean thermal photon number.
    pub fn n(&self) -> f64 {
        self.n
    }

    pub fn zeta(&self) -> f64 {
        self.zeta
    }

    pub fn phi_env(&self) -> f64 {
        self.phi_env
    }

    /// `N = (2n + 1) cosh(zeta)`.
    pub fn noise_n(&self) -> f64 {
        (2.0 * self.n + 1.0) * self.zeta.cosh()
    }

    /// `M = (2n + 1) sinh(zeta)`.
    pub fn noise_m(&self) -> f64 {
        (2.0 * self.n + 1.0) * self.zeta.sinh()
    }

    pub fn is_vacuum(&self) -> bool {
        self.n == 0.0 && self.zeta == 0.0
    }
}

/// Two-mode squeezed vacuum preparing the ancilla and system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointSpec {
    xi: f64,
    theta: f64,
}

impl JointSpec {
    pub fn new(xi: f64) -> Result<Self> {
        Self::with_angle(xi, 0.0)
    }

    /// Only `theta = 0` is supported; the closed forms assume it.
    pub fn with_angle(xi: f64, theta: f64) -> Result<Self> {
        if !(xi >= 0.0 && xi.is_finite()) {
            return Err(Error::Domain {
                name: "xi",
                value: xi,
                domain: "[0, inf)",
            });
        }
        if theta != 0.0 {
            return Err(Error::Unsupported(format!(
                "two-mode squeezing angle theta = {theta} (only 0 is supported)"
            )));
        }
        Ok(Self { xi, theta })
    }

    pub fn xi(&self) -> f64 {
        self.xi
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }
}

/// `[[cosh xi I, sinh xi Z], [sinh xi Z, cosh xi I]]` with `Z = diag(1, -1)`.
pub fn tmsv_cm(spec: &JointSpec) -> CovarianceMatrix {
    let (ch, sh) = (spec.xi.cosh(), spec.xi.sinh());
    #[rustfmt::skip]
    let m = DMatrix::from_row_slice(4, 4, &[
        ch, 0.0, sh, 0.0,
        0.0, ch, 0.0, -sh,
        sh, 0.0, ch, 0.0,
        0.0, -sh, 0.0, ch,
    ]);
    CovarianceMatrix::from_raw(m)
}

/// Single-mode squeezed thermal state,
/// `(2n+1) [cosh zeta I + sinh zeta [[cos phi, sin phi], [sin phi, -cos phi]]]`.
pub fn squeezed_thermal_cm(spec: &EnvironmentSpec) -> CovarianceMatrix {
    let m = squeezed_thermal_block(spec);
    CovarianceMatrix::from_raw(DMatrix::from_iterator(2, 2, m.iter().copied()))
}

pub(crate) fn squeezed_thermal_block(spec: &EnvironmentSpec) -> Matrix2<f64> {
    let scale = 2.0 * spec.n + 1.0;
    let (ch, sh) = (spec.zeta.cosh(), spec.zeta.sinh());
    let (c, s) = (spec.phi_env.cos(), spec.phi_env.sin());
    Matrix2::new(
        scale * (ch + sh * c),
        scale * sh * s,
        scale * sh * s,
        scale * (ch - sh * c),
    )
}

/// Sub-covariance of the listed modes, in the requested order.
pub fn reduce_to_modes(cm: &CovarianceMatrix, modes: &[usize]) -> Result<CovarianceMatrix> {
    check_modes(modes, cm.n_modes())?;
    let k = modes.len();
    let mut m = DMatrix::zeros(2 * k, 2 * k);
    for (a, &ma) in modes.iter().enumerate() {
        for (b, &mb) in modes.iter().enumerate() {
            m.fixed_view_mut::<2, 2>(2 * a, 2 * b)
                .copy_from(&cm.matrix.fixed_view::<2, 2>(2 * ma, 2 * mb));
        }
    }
    Ok(CovarianceMatrix { matrix: m })
}

/// Outcome of the uncertainty-relation test `sigma + i Omega >= 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Physicality {
    pub physical: bool,
    pub min_eigenvalue: f64,
}

/// Checks `sigma + i Omega >= -1e-10` for an arbitrary real matrix.
pub fn physicality_check(matrix: &DMatrix<f64>) -> Result<Physicality> {
    Ok(CovarianceMatrix::new(matrix.clone())?.physicality())
}

fn physicality_of(m: &DMatrix<f64>) -> Physicality {
    let n = m.nrows() / 2;
    let omega = symplectic_form(n);
    let herm = DMatrix::from_fn(m.nrows(), m.ncols(), |i, k| Complex64::new(m[(i, k)], omega[(i, k)]));
    let eig = SymmetricEigen::new(herm);
    let min = eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
    Physicality {
        physical: min >= -PHYSICALITY_TOL,
        min_eigenvalue: min,
    }
}
