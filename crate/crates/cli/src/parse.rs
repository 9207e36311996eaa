// Copyright 2026 The gausscollide Authors
// SPDX-License-Identifier: Apache-2.0

//! Value parsers shared by flags and config files.

use std::f64::consts::PI;

fn finite(s: &str) -> Option<f64> {
    s.trim().parse::<f64>().ok().filter(|v| v.is_finite())
}

pub fn parse_float(s: &str) -> Result<f64, String> {
    finite(s).ok_or_else(|| format!("invalid number `{s}`"))
}

/// Radians, or multiples of pi such as `pi`, `-pi/2`, `3pi/4`, `2*pi`.
pub fn parse_angle(s: &str) -> Result<f64, String> {
    if let Some(v) = finite(s) {
        return Ok(v);
    }
    let err = || format!("invalid angle `{s}` (expected radians or a form like 3pi/4)");
    let t = s.trim().to_ascii_lowercase();
    let (sign, body) = match t.strip_prefix('-') {
        Some(rest) => (-1.0, rest),
        None => (1.0, t.strip_prefix('+').unwrap_or(&t)),
    };
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (n, finite(d).filter(|&d| d != 0.0).ok_or_else(err)?),
        None => (body, 1.0),
    };
    let coef = num.strip_suffix("pi").ok_or_else(err)?;
    let coef = coef.strip_suffix('*').unwrap_or(coef);
    let coef = if coef.is_empty() {
        1.0
    } else {
        finite(coef).ok_or_else(err)?
    };
    Ok(sign * coef * PI / den)
}

/// `start:stop:count` (inclusive, evenly spaced) or a comma-separated list.
pub fn parse_values(s: &str) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        [start, stop, count] => {
            let (a, b) = (parse_float(start)?, parse_float(stop)?);
            let n: usize = count
                .trim()
                .parse()
                .ok()
                .filter(|&n| n >= 1)
                .ok_or_else(|| format!("invalid point count `{count}`"))?;
            if n == 1 {
                return Ok(vec![a]);
            }
            let last = (n - 1) as f64;
            Ok((0..n)
                .map(|i| if i + 1 == n { b } else { a + (b - a) * i as f64 / last })
                .collect())
        }
        [list] => list.split(',').map(parse_float).collect(),
        _ => Err(format!("invalid value list `{s}` (expected start:stop:count or a,b,c)")),
    }
}

/// One environment mode index, at least 1.
pub fn parse_mode(s: &str) -> Result<usize, String> {
    s.trim()
        .parse::<usize>()
        .ok()
        .filter(|&k| k >= 1)
        .ok_or_else(|| format!("invalid environment mode `{s}` (expected an integer >= 1)"))
}

/// Comma-separated environment mode indices.
pub fn parse_modes(s: &str) -> Result<Vec<usize>, String> {
    s.split(',').map(parse_mode).collect()
}

pub fn parse_bool(s: &str) -> Result<bool, String> {
    match s.trim().to_ascii_lowercase().as_str() {
        "true" | "yes" | "on" | "1" => Ok(true),
        "false" | "no" | "off" | "0" => Ok(false),
        _ => Err(format!("invalid boolean `{s}`")),
    }
}
