//! Angle and strategy literals.
//!
//! Angles are radians with `pi` sugar: `pi`, `pi/2`, `-pi/16`, `3*pi/4`,
//! and plain signed decimals are all accepted. A strategy literal is three
//! comma-separated angles, `theta,alpha,beta`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::protocol::StrategyParams;

/// Parses one angle: `pi`, `k*pi`, `pi/m`, `k*pi/m`, or a signed decimal.
pub fn parse_angle(input: &str) -> Result<f64> {
    let text = input.trim();
    let bad = |reason: &str| Error::Parse {
        what: "angle",
        input: input.to_string(),
        reason: reason.to_string(),
    };
    if text.is_empty() {
        return Err(bad("empty"));
    }

    let (sign, rest) = match text.strip_prefix('-') {
        Some(rest) => (-1.0, rest),
        None => (1.0, text.strip_prefix('+').unwrap_or(text)),
    };
    let lower = rest.to_ascii_lowercase();

    if let Some(pi_pos) = lower.find("pi") {
        let before = &lower[..pi_pos];
        let after = &lower[pi_pos + 2..];

        let multiplier = match before.strip_suffix('*') {
            Some(k) => k
                .parse::<f64>()
                .map_err(|_| bad("bad multiplier before *pi"))?,
            None if before.is_empty() => 1.0,
            None => return Err(bad("expected k*pi")),
        };
        let divisor = match after.strip_prefix('/') {
            Some(m) => {
                let m = m.parse::<f64>().map_err(|_| bad("bad divisor after pi/"))?;
                if m == 0.0 {
                    return Err(bad("division by zero"));
                }
                m
            }
            None if after.is_empty() => 1.0,
            None => return Err(bad("expected pi/m")),
        };
        Ok(sign * multiplier * PI / divisor)
    } else {
        lower
            .parse::<f64>()
            .map(|v| sign * v)
            .map_err(|_| bad("not a number or pi-expression"))
    }
}

/// Parses `theta,alpha,beta` into validated strategy parameters.
pub fn parse_strategy(input: &str) -> Result<StrategyParams> {
    let parts: Vec<&str> = input.split(',').collect();
    if parts.len() != 3 {
        return Err(Error::Parse {
            what: "strategy",
            input: input.to_string(),
            reason: format!("expected theta,alpha,beta (3 fields, got {})", parts.len()),
        });
    }
    StrategyParams::new(
        parse_angle(parts[0])?,
        parse_angle(parts[1])?,
        parse_angle(parts[2])?,
    )
}
