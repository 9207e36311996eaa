// Copyright 2026 The gausscollide Authors
// SPDX-License-Identifier: Apache-2.0

//! Scattering unitaries of the beam-splitter collision network.
//!
//! A network with `L` collision rounds carries `L + 3` optical modes. The
//! documentation (and the physics literature) numbers them from 1; the code
//! indexes from 0:
//!
//! | mode            | documented row/column | code index        |
//! |-----------------|-----------------------|-------------------|
//! | ancilla `An`    | 1                     | [`ANCILLA`] = 0   |
//! | system `S`      | 2                     | [`SYSTEM`] = 1    |
//! | environment E_k | k + 2                 | [`env_mode`]`(k)` |
//!
//! Round `j` mixes the system with `E_j` (reflectivity `r1`, followed by a
//! phase shift on the system) and then `E_j` with `E_{j+1}` (reflectivity
//! `r2`). Only documented rows `{2, j+2, j+3}` change.

use std::ops::Mul;

use nalgebra::{DMatrix, Matrix3};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Code index of the ancilla mode.
pub const ANCILLA: usize = 0;
/// Code index of the system mode.
pub const SYSTEM: usize = 1;

/// Code index of environment mode `E_k` (`k >= 1`).
#[inline]
pub const fn env_mode(k: usize) -> usize {
    k + 1
}

/// Number of optical modes for a network of `rounds` collisions.
#[inline]
pub const fn network_dim(rounds: usize) -> usize {
    rounds + 3
}

const UNITARY_TOL: f64 = 1e-10;
const SYMPLECTIC_TOL: f64 = 1e-10;

/// Complex unitary acting on annihilation operators, `a_out = U a_in`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeUnitary {
    matrix: DMatrix<Complex64>,
}

impl ModeUnitary {
    /// Wraps a square matrix, rejecting it unless `max |U U^dag - I| < 1e-10`.
    pub fn new(matrix: DMatrix<Complex64>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch {
                expected: matrix.nrows(),
                found: matrix.ncols(),
            });
        }
        let defect = unitarity_defect(&matrix);
        if defect >= UNITARY_TOL {
            return Err(Error::NotUnitary(defect));
        }
        Ok(Self { matrix })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            matrix: DMatrix::identity(dim, dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<Complex64> {
        self.matrix
    }

    /// Entry at code indices `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.matrix[(row, col)]
    }

    pub fn unitarity_defect(&self) -> f64 {
        unitarity_defect(&self.matrix)
    }

    pub fn adjoint(&self) -> Self {
        Self {
            matrix: self.matrix.adjoint(),
        }
    }
}

impl Mul for &ModeUnitary {
    type Output = ModeUnitary;

    fn mul(self, rhs: &ModeUnitary) -> ModeUnitary {
        ModeUnitary {
            matrix: &self.matrix * &rhs.matrix,
        }
    }
}

fn unitarity_defect(m: &DMatrix<Complex64>) -> f64 {
    let n = m.nrows();
    let prod = m * m.adjoint();
    let mut worst = 0.0f64;
    for i in 0..n {
        for k in 0..n {
            let target = if i == k { 1.0 } else { 0.0 };
            worst = worst.max((prod[(i, k)] - target).norm());
        }
    }
    worst
}

fn check_reflectivity(name: &'static str, r: f64) -> Result<()> {
    if (0.0..=1.0).contains(&r) {
        Ok(())
    } else {
        Err(Error::Domain {
            name,
            value: r,
            domain: "[0, 1]",
        })
    }
}

/// Beam-splitter settings shared by every round of the network.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CollisionNetwork {
    r1: f64,
    r2: f64,
    phi: f64,
    rounds: usize,
}

impl CollisionNetwork {
    pub fn new(r1: f64, r2: f64, phi: f64, rounds: usize) -> Result<Self> {
        check_reflectivity("r1", r1)?;
        check_reflectivity("r2", r2)?;
        if !phi.is_finite() {
            return Err(Error::Domain {
                name: "phi",
                value: phi,
                domain: "finite radians",
            });
        }
        Ok(Self { r1, r2, phi, rounds })
    }

    pub fn r1(&self) -> f64 {
        self.r1
    }

    pub fn r2(&self) -> f64 {
        self.r2
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn rounds(&self) -> usize {
        self.rounds
    }

    pub fn dim(&self) -> usize {
        network_dim(self.rounds)
    }

    /// Non-negative transmissivity of the system/environment splitter.
    pub fn t1(&self) -> f64 {
        (1.0 - self.r1 * self.r1).max(0.0).sqrt()
    }

    /// Non-negative transmissivity of the environment/environment splitter.
    pub fn t2(&self) -> f64 {
        (1.0 - self.r2 * self.r2).max(0.0).sqrt()
    }

    /// The 3x3 block of a round acting on `(S, E_j, E_{j+1})`.
    pub fn round_block(&self) -> Matrix3<Complex64> {
        let (r1, r2, t1, t2) = (self.r1, self.r2, self.t1(), self.t2());
        let phase = Complex64::from_polar(1.0, self.phi);
        let re = |x: f64| Complex64::new(x, 0.0);
        Matrix3::new(
            phase * r1,
            phase * t1,
            re(0.0),
            re(-r2 * t1),
            re(r1 * r2),
            re(t2),
            re(t1 * t2),
            re(-r1 * t2),
            re(r2),
        )
    }

    /// Full `(L+3)`-dimensional scattering matrix of round `j` (1-based).
    pub fn unitary(&self, j: usize) -> Result<ModeUnitary> {
        self.check_round(j)?;
        let dim = self.dim();
        let block = self.round_block();
        let idx = round_modes(j);
        let mut m = DMatrix::<Complex64>::identity(dim, dim);
        for (a, &ra) in idx.iter().enumerate() {
            for (b, &cb) in idx.iter().enumerate() {
                m[(ra, cb)] = block[(a, b)];
            }
        }
        Ok(ModeUnitary { matrix: m })
    }

    /// Incremental composer starting from the identity (step 0).
    pub fn composer(&self) -> NetworkComposer {
        NetworkComposer {
            network: *self,
            step: 0,
            current: ModeUnitary::identity(self.dim()),
        }
    }

    fn check_round(&self, j: usize) -> Result<()> {
        if j == 0 || j > self.rounds {
            return Err(Error::Index {
                what: "collision round",
                index: j,
                valid: format!("1..={}", self.rounds),
            });
        }
        Ok(())
    }
}

/// Code indices of the three modes touched by round `j`.
#[inline]
pub fn round_modes(j: usize) -> [usize; 3] {
    [SYSTEM, env_mode(j), env_mode(j + 1)]
}

/// The `j`-th scattering matrix of an `L`-round network.
pub fn collision_unitary(j: usize, rounds: usize, r1: f64, r2: f64, phi: f64) -> Result<ModeUnitary> {
    CollisionNetwork::new(r1, r2, phi, rounds)?.unitary(j)
}

/// Product of `unitaries` in chronological order: the first element acts
/// first (rightmost factor). An empty slice yields the `dim`-identity.
pub fn compose_chronological(dim: usize, unitaries: &[ModeUnitary]) -> Result<ModeUnitary> {
    let mut acc = DMatrix::<Complex64>::identity(dim, dim);
    for u in unitaries {
        if u.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: u.dim(),
            });
        }
        acc = &u.matrix * acc;
    }
    Ok(ModeUnitary { matrix: acc })
}

/// Composes the network one round at a time, touching three rows per round.
#[derive(Debug, Clone)]
pub struct NetworkComposer {
    network: CollisionNetwork,
    step: usize,
    current: ModeUnitary,
}

impl NetworkComposer {
    pub fn step(&self) -> usize {
        self.step
    }

    pub fn network(&self) -> &CollisionNetwork {
        &self.network
    }

    /// Composed unitary `S(j)` after the rounds applied so far.
    pub fn unitary(&self) -> &ModeUnitary {
        &self.current
    }

    /// Applies the next round. Returns its index, or `None` once all rounds ran.
    pub fn advance(&mut self) -> Option<usize> {
        if self.step >= self.network.rounds {
            return None;
        }
        let j = self.step + 1;
        let block = self.network.round_block();
        let idx = round_modes(j);
        let m = &mut self.current.matrix;
        let cols = m.ncols();
        for col in 0..cols {
            let old = [m[(idx[0], col)], m[(idx[1], col)], m[(idx[2], col)]];
            if old.iter().all(|z| *z == Complex64::new(0.0, 0.0)) {
                continue;
            }
            for (a, &row) in idx.iter().enumerate() {
                m[(row, col)] = block[(a, 0)] * old[0] + block[(a, 1)] * old[1] + block[(a, 2)] * old[2];
            }
        }
        self.step = j;
        Some(j)
    }

    pub fn coefficients(&self) -> CCoefficients {
        coefficients_from_row(&self.current, self.step)
    }
}

/// Elements `C_{l,2}` of the inverse scattering matrix after `step` rounds.
///
/// `env_column[k - 1]` holds `C_{E_k,2}`. The ancilla entry is identically 0.
#[derive(Debug, Clone, PartialEq)]
pub struct CCoefficients {
    pub step: usize,
    pub c22: Complex64,
    pub env_column: Vec<Complex64>,
}

impl CCoefficients {
    /// Coefficients of the untouched network (`S(0) = I`).
    pub fn identity(n_env: usize) -> Self {
        Self {
            step: 0,
            c22: Complex64::new(1.0, 0.0),
            env_column: vec![Complex64::new(0.0, 0.0); n_env],
        }
    }

    /// `|C_{2,2}|^2`.
    pub fn c22_norm_sqr(&self) -> f64 {
        self.c22.norm_sqr()
    }

    /// `sum_l |C_{l,2}|^2` over environment modes.
    pub fn env_weight(&self) -> f64 {
        self.env_column.iter().map(|c| c.norm_sqr()).sum()
    }

    /// `C_m.e. = sum_l C_{l,2}^2` (no conjugation).
    pub fn env_square_sum(&self) -> Complex64 {
        self.env_column.iter().map(|c| c * c).sum()
    }

    pub fn normalization_defect(&self) -> f64 {
        (self.c22_norm_sqr() + self.env_weight() - 1.0).abs()
    }

    pub fn check_normalized(&self, tol: f64) -> Result<()> {
        let d = self.normalization_defect();
        if d.is_finite() && d < tol {
            Ok(())
        } else {
            Err(Error::Unnormalized(d))
        }
    }
}

fn coefficients_from_row(s: &ModeUnitary, step: usize) -> CCoefficients {
    let dim = s.dim();
    CCoefficients {
        step,
        c22: s.get(SYSTEM, SYSTEM).conj(),
        env_column: (SYSTEM + 1..dim).map(|l| s.get(SYSTEM, l).conj()).collect(),
    }
}

/// Reads `C_{l,2} = conj(S[2, l])` from a composed unitary (uses `S^-1 = S^dag`).
pub fn extract_c_coefficients(s: &ModeUnitary, step: usize) -> Result<CCoefficients> {
    if s.dim() < 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            found: s.dim(),
        });
    }
    Ok(coefficients_from_row(s, step))
}

/// Canonical symplectic form on `n_modes` modes, interleaved `(q, p)` ordering.
pub fn symplectic_form(n_modes: usize) -> DMatrix<f64> {
    let mut omega = DMatrix::zeros(2 * n_modes, 2 * n_modes);
    for k in 0..n_modes {
        omega[(2 * k, 2 * k + 1)] = 1.0;
        omega[(2 * k + 1, 2 * k)] = -1.0;
    }
    omega
}

/// Real symplectic matrix on interleaved quadratures.
#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticMatrix {
    matrix: DMatrix<f64>,
}

impl SymplecticMatrix {
    /// Rejects matrices with `max |S Omega S^T - Omega| >= 1e-10`.
    pub fn new(matrix: DMatrix<f64>) -> Result<Self> {
        if !matrix.is_square() || !matrix.nrows().is_multiple_of(2) {
            return Err(Error::DimensionMismatch {
                expected: 2 * (matrix.nrows() / 2).max(1),
                found: matrix.ncols(),
            });
        }
        let s = Self { matrix };
        let defect = s.symplectic_defect();
        if defect >= SYMPLECTIC_TOL {
            return Err(Error::Degenerate(format!(
                "matrix is not symplectic (defect {defect:e})"
            )));
        }
        Ok(s)
    }

    pub fn identity(n_modes: usize) -> Self {
        Self {
            matrix: DMatrix::identity(2 * n_modes, 2 * n_modes),
        }
    }

    pub fn n_modes(&self) -> usize {
        self.matrix.nrows() / 2
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn symplectic_defect(&self) -> f64 {
        let omega = symplectic_form(self.n_modes());
        let lhs = &self.matrix * &omega * self.matrix.transpose();
        (lhs - omega).amax()
    }
}

impl Mul for &SymplecticMatrix {
    type Output = SymplecticMatrix;

    fn mul(self, rhs: &SymplecticMatrix) -> SymplecticMatrix {
        SymplecticMatrix {
            matrix: &self.matrix * &rhs.matrix,
        }
    }
}

/// Quadrature action of a passive transformation: per mode pair `(k, l)`,
/// `q' = Re(U) q - Im(U) p` and `p' = Im(U) q + Re(U) p`.
pub(crate) fn passive_symplectic<R, C, S>(u: &nalgebra::Matrix<Complex64, R, C, S>) -> DMatrix<f64>
where
    R: nalgebra::Dim,
    C: nalgebra::Dim,
    S: nalgebra::RawStorage<Complex64, R, C>,
{
    let n = u.nrows();
    let mut out = DMatrix::zeros(2 * n, 2 * n);
    for k in 0..n {
        for l in 0..n {
            let z = u[(k, l)];
            out[(2 * k, 2 * l)] = z.re;
            out[(2 * k, 2 * l + 1)] = -z.im;
            out[(2 * k + 1, 2 * l)] = z.im;
            out[(2 * k + 1, 2 * l + 1)] = z.re;
        }
    }
    out
}

/// Symplectic image of a passive mode unitary.
pub fn mode_unitary_to_symplectic(u: &ModeUnitary) -> Result<SymplecticMatrix> {
    let defect = u.unitarity_defect();
    if defect >= UNITARY_TOL {
        return Err(Error::NotUnitary(defect));
    }
    Ok(SymplecticMatrix {
        matrix: passive_symplectic(u.matrix()),
    })
}
