// Copyright 2026 The gausscollide Authors
// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{name} = {value} is outside its domain {domain}")]
    Domain {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("{what} index {index} is out of range (valid: {valid})")]
    Index {
        what: &'static str,
        index: usize,
        valid: String,
    },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not unitary (max |U U^dag - I| = {0:e})")]
    NotUnitary(f64),

    #[error("matrix is not symmetric (max |A - A^T| = {0:e})")]
    NotSymmetric(f64),

    #[error("C-coefficient column is not normalized (|1 - sum| = {0:e})")]
    Unnormalized(f64),

    #[error("duplicate mode index {0}")]
    DuplicateMode(usize),

    #[error("numerical degeneracy: {0}")]
    Degenerate(String),

    #[error("intermediate map at step {step} is singular (|C22(j-1)|^2 = {c22_sq:e})")]
    SingularIntermediate { step: usize, c22_sq: f64 },

    #[error("threshold is undefined: {0}")]
    UndefinedThreshold(String),

    #[error("full-chain covariance matrix is unavailable; enable the oracle path")]
    OracleDisabled,

    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    /// True for failures caused by floating-point degeneracy rather than bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::Degenerate(_)
                | Error::SingularIntermediate { .. }
                | Error::UndefinedThreshold(_)
                | Error::NotUnitary(_)
                | Error::Unnormalized(_)
        )
    }
}
