//! Parsing and pretty-printing of angles given as rational multiples of pi.
//!
//! Accepted forms: `pi`, `2pi`, `pi/8`, `3pi/4`, `-pi/2`, `0.25pi`, plain
//! decimals (`0.5`, `-1.25`) and plain fractions (`3/8`). Whitespace around
//! the token is ignored.

use crate::error::{Error, Result};
use std::f64::consts::PI;

/// Parse one angle token.
pub fn parse_angle(s: &str) -> Result<f64> {
    let raw = s.trim();
    let (sign, body) = match raw.strip_prefix('-') {
        Some(rest) => (-1.0, rest.trim()),
        None => (1.0, raw),
    };
    if body.is_empty() || body.starts_with('-') || body.starts_with('+') {
        return Err(Error::AngleSyntax(s.to_string()));
    }
    let value = if let Some(idx) = body.find("pi") {
        let (coef_str, rest) = body.split_at(idx);
        let rest = &rest[2..];
        let coef = if coef_str.is_empty() {
            1.0
        } else {
            coef_str
                .parse::<f64>()
                .map_err(|_| Error::AngleSyntax(s.to_string()))?
        };
        let den = if rest.is_empty() {
            1.0
        } else if let Some(d) = rest.strip_prefix('/') {
            let d: f64 = d.parse().map_err(|_| Error::AngleSyntax(s.to_string()))?;
            if d == 0.0 {
                return Err(Error::AngleSyntax(s.to_string()));
            }
            d
        } else {
            return Err(Error::AngleSyntax(s.to_string()));
        };
        coef * PI / den
    } else if let Some((num, den)) = body.split_once('/') {
        let n: f64 = num.parse().map_err(|_| Error::AngleSyntax(s.to_string()))?;
        let d: f64 = den.parse().map_err(|_| Error::AngleSyntax(s.to_string()))?;
        if d == 0.0 {
            return Err(Error::AngleSyntax(s.to_string()));
        }
        n / d
    } else {
        body.parse::<f64>()
            .map_err(|_| Error::AngleSyntax(s.to_string()))?
    };
    Ok(sign * value)
}

/// Parse a comma-separated vector of angle tokens.
pub fn parse_angle_vector(s: &str) -> Result<Vec<f64>> {
    s.split(',').map(parse_angle).collect()
}

/// Render an angle as `k*pi/d` when it is a rational multiple of pi with a
/// small denominator, otherwise as a bare decimal.
pub fn format_angle(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    for d in 1..=64u64 {
        let k = x * d as f64 / PI;
        let k_round = k.round();
        if (k - k_round).abs() < 1e-12 * d as f64 && k_round != 0.0 {
            let g = gcd(k_round.abs() as u64, d);
            let (kn, dn) = (k_round as i64 / g as i64, d / g);
            let num = match kn {
                1 => "pi".to_string(),
                -1 => "-pi".to_string(),
                _ => format!("{kn}pi"),
            };
            return if dn == 1 { num } else { format!("{num}/{dn}") };
        }
    }
    format!("{x}")
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a.max(1)
    } else {
        gcd(b, a % b)
    }
}
