// Copyright 2026 The gausscollide Authors
// SPDX-License-Identifier: Apache-2.0

//! All-optical Gaussian collision model.
//!
//! An ancilla and a system start in a two-mode squeezed vacuum. In each
//! round the system meets environment mode `E_j` on a beam splitter, after
//! which `E_j` meets `E_{j+1}`; the ancilla never evolves. The crate
//! evolves the resulting Gaussian states and quantifies the memory of the
//! system's dynamics with two witnesses: growth of Gaussian steering and
//! violation of CPTP divisibility.
//!
//! ```
//! use gausscollide_core::{evaluate, EnvironmentSpec, JointSpec, SimulationConfig};
//!
//! let cfg = SimulationConfig::new(0.4, 0.3, 0.0, JointSpec::new(1.0)?, EnvironmentSpec::vacuum(), 50)?;
//! let nm = evaluate(&cfg)?;
//! assert!(nm.cptp.value > 0.0 && nm.gs_an_to_s > 0.0);
//! # Ok::<(), gausscollide_core::Error>(())
//! ```

pub mod analysis;
pub mod cptp;
pub mod engine;
pub mod error;
pub mod gaussian;
pub mod linalg;
pub mod steering;

pub use analysis::{evaluate, steering_pair, witnesses, NonMarkovianity};
pub use cptp::{
    channel_xy, divisibility_series, eigenvalues_nu, hermitian_eigenvalues, intermediate_f, nm_cptp,
    nm_cptp_from_coefficients, ChannelPair, CptpMeasure, DivisibilityRecord, StepDivisibility,
};
pub use engine::{env_ancilla_cm, joint_cm_closed_form, run, Evolution, SimulationConfig, StepRecord, Trajectory};
pub use error::{Error, Result};
pub use gaussian::{
    physicality_check, reduce_to_modes, squeezed_thermal_cm, tmsv_cm, CovarianceMatrix, EnvironmentSpec, JointSpec,
    Physicality,
};
pub use linalg::{
    collision_unitary, compose_chronological, env_mode, extract_c_coefficients, mode_unitary_to_symplectic,
    network_dim, symplectic_form, CCoefficients, CollisionNetwork, ModeUnitary, NetworkComposer, SymplecticMatrix,
    ANCILLA, SYSTEM,
};
pub use steering::{
    nm_from_steering, steerability, steering_series, threshold_an_to_s_squeezed_vac, threshold_an_to_s_thermal,
    threshold_s_to_an, Direction, Scenario, SteeringSeries, SteeringValue,
};
