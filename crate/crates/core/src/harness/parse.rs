//! Text formats accepted on the command line and in sweep files.

use crate::error::{Error, Result};
use crate::potential::PowerLawPotential;

fn number(s: &str, what: &str) -> Result<f64> {
    let t = s.trim();
    t.parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| Error::Parse(format!("{what}: '{t}' is not a finite number")))
}

fn integer(s: &str, what: &str) -> Result<i64> {
    let t = s.trim();
    t.parse::<i64>()
        .map_err(|_| Error::Parse(format!("{what}: '{t}' is not an integer")))
}

fn fields<'a>(body: &'a str, n: usize, form: &str) -> Result<Vec<&'a str>> {
    let parts: Vec<&str> = body.split(',').collect();
    if parts.len() != n {
        return Err(Error::Parse(format!("expected {form}, got '{body}'")));
    }
    Ok(parts)
}

/// Parses `lj12:eta,alpha,beta`, `ljgen:eta,alpha,beta,m` or
/// `terms:c1/r^m1,c2/r^m2,...`.
pub fn parse_potential(spec: &str) -> Result<PowerLawPotential> {
    let spec = spec.trim();
    let (kind, body) = spec
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("potential '{spec}' lacks a 'kind:' prefix")))?;
    match kind.trim() {
        "lj12" => {
            let f = fields(body, 3, "lj12:<eta>,<alpha>,<beta>")?;
            Ok(PowerLawPotential::lj12(
                number(f[0], "eta")?,
                number(f[1], "alpha")?,
                number(f[2], "beta")?,
            ))
        }
        "ljgen" => {
            let f = fields(body, 4, "ljgen:<eta>,<alpha>,<beta>,<m>")?;
            PowerLawPotential::lj_general(
                number(f[0], "eta")?,
                number(f[1], "alpha")?,
                number(f[2], "beta")?,
                integer(f[3], "m")?,
            )
        }
        "terms" => {
            let terms = body
                .split(',')
                .map(|t| {
                    let (c, m) = t
                        .split_once("/r^")
                        .ok_or_else(|| Error::Parse(format!("term '{}' is not of the form c/r^m", t.trim())))?;
                    Ok((number(c, "coefficient")?, integer(m, "exponent")?))
                })
                .collect::<Result<Vec<_>>>()?;
            PowerLawPotential::new(terms)
        }
        other => Err(Error::Parse(format!("unknown potential kind '{other}'"))),
    }
}

/// Comma-separated reals.
pub fn parse_real_list(s: &str) -> Result<Vec<f64>> {
    s.split(',').map(|t| number(t, "list entry")).collect()
}

/// `start:stop:count` (inclusive, evenly spaced) or a comma-separated list.
/// A count of zero is the empty grid.
pub fn parse_grid(s: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        [single] => parse_real_list(single),
        [start, stop, count] => {
            let (a, b) = (number(start, "grid start")?, number(stop, "grid stop")?);
            let n = count
                .trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("grid count '{}' is not a non-negative integer", count.trim())))?;
            Ok(match n {
                0 => Vec::new(),
                1 => vec![a],
                _ => (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect(),
            })
        }
        _ => Err(Error::Parse(format!("grid '{s}' is neither start:stop:count nor a list"))),
    }
}
