// Copyright 2026 The gausscollide Authors
// SPDX-License-Identifier: Apache-2.0

//! Shared fixtures for the criterion benchmarks.

use gausscollide_core::{EnvironmentSpec, JointSpec, SimulationConfig};

/// Representative non-Markovian point `(r1, r2) = (0.4, 0.3)` at `xi = 1`.
pub fn backflow_config(rounds: usize, env: EnvironmentSpec) -> SimulationConfig {
    SimulationConfig::new(0.4, 0.3, 0.0, JointSpec::new(1.0).expect("xi"), env, rounds).expect("valid config")
}
