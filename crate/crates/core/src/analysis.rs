// Copyright 2026 The gausscollide Authors
// SPDX-License-Identifier: Apache-2.0

//! Both non-Markovianity witnesses evaluated on one configuration.

use crate::cptp::{nm_cptp, CptpMeasure};
use crate::engine::{run, SimulationConfig, Trajectory};
use crate::error::Result;
use crate::steering::{nm_from_steering, steering_series, Scenario, SteeringSeries};

#[derive(Debug, Clone, PartialEq)]
pub struct NonMarkovianity {
    /// `N_GS` with the system steering the ancilla.
    pub gs_s_to_an: f64,
    /// `N_GS` with the ancilla steering the system.
    pub gs_an_to_s: f64,
    pub cptp: CptpMeasure,
}

/// Steering series in both scenarios, `(S -> An, An -> S)`.
pub fn steering_pair(traj: &Trajectory) -> Result<(SteeringSeries, SteeringSeries)> {
    Ok((
        steering_series(traj, Scenario::SystemToAncilla)?,
        steering_series(traj, Scenario::AncillaToSystem)?,
    ))
}

pub fn witnesses(traj: &Trajectory) -> Result<NonMarkovianity> {
    let (s_to_an, an_to_s) = steering_pair(traj)?;
    Ok(NonMarkovianity {
        gs_s_to_an: nm_from_steering(&s_to_an),
        gs_an_to_s: nm_from_steering(&an_to_s),
        cptp: nm_cptp(traj)?,
    })
}

/// Runs `config` (oracle path ignored) and evaluates both witnesses.
pub fn evaluate(config: &SimulationConfig) -> Result<NonMarkovianity> {
    witnesses(&run(&config.with_oracle(false))?)
}
