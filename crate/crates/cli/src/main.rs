// Copyright 2026 The gausscollide Authors
// SPDX-License-Identifier: Apache-2.0

use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(gausscollide_cli::main_with(std::env::args_os()))
}
