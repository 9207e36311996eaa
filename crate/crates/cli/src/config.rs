// Copyright 2026 The gausscollide Authors
// SPDX-License-Identifier: Apache-2.0

//! `key = value` defaults files. Flags always take precedence.

use std::collections::BTreeMap;
use std::path::Path;

use crate::error::{CliError, CliResult};

const KNOWN_KEYS: &[&str] = &[
    "r1", "r2", "phi", "xi", "n", "zeta", "phi-env", "L", "env", "oracle", "format", "out", "grid-r1", "grid-r2",
    "jobs", "modes", "family",
];

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigFile {
    values: BTreeMap<String, String>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text)
    }

    /// Blank lines and `#` comments are ignored; `_` in keys reads as `-`.
    pub fn parse(text: &str) -> CliResult<Self> {
        let mut values = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::usage(format!("config line {}: expected `key = value`", lineno + 1)))?;
            let key = key.trim().replace('_', "-");
            let key = if key.eq_ignore_ascii_case("l") {
                "L".to_string()
            } else {
                key
            };
            if !KNOWN_KEYS.contains(&key.as_str()) {
                return Err(CliError::usage(format!(
                    "config line {}: unknown key `{key}`",
                    lineno + 1
                )));
            }
            values.insert(key, value.trim().to_string());
        }
        Ok(Self { values })
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    /// Flag value if given, else the parsed file entry, else `None`.
    pub fn resolve<T>(
        &self,
        flag: Option<T>,
        key: &str,
        parse: impl Fn(&str) -> Result<T, String>,
    ) -> CliResult<Option<T>> {
        if flag.is_some() {
            return Ok(flag);
        }
        self.get(key)
            .map(|v| parse(v).map_err(|e| CliError::usage(format!("config key `{key}`: {e}"))))
            .transpose()
    }
}
