use std::collections::BTreeMap;
use std::path::PathBuf;
use std::str::FromStr;

use rayon::prelude::*;

use super::compare::{compare_schemes_with, ComparisonReport, SchemeOptions, DEFAULT_COMPARISON_TOL};
use super::output::OutputFormat;
use super::parse::{parse_grid, parse_potential, parse_real_list};
use crate::error::{Error, Result};
use crate::potential::PowerLawPotential;
use crate::types::{ScatteringConfig, Scheme};

/// A grid of comparison runs, read from `key = value` lines.
///
/// ```text
/// # unit Lennard-Jones at three energies
/// potential = lj12:1,1,0.5; lj12:1,1,1
/// k = 0.5:2:3
/// l = 0
/// schemes = all
/// tol = 1e-4
/// output = sweep.csv
/// ```
///
/// Several potentials are separated by `;`. Points are ordered by
/// potential, then `l`, then `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub potentials: Vec<PowerLawPotential>,
    pub k: Vec<f64>,
    pub l: Vec<u32>,
    pub n: f64,
    pub schemes: Vec<Scheme>,
    pub tol: f64,
    pub scheme_options: SchemeOptions,
    pub output: Option<PathBuf>,
    pub format: Option<OutputFormat>,
}

const KEYS: [&str; 11] = [
    "potential", "k", "l", "n", "schemes", "tol", "eps", "eps_grid", "integration_tol", "output", "format",
];

/// `all` or a comma-separated list of scheme names, deduplicated in order.
pub fn parse_schemes(s: &str) -> Result<Vec<Scheme>> {
    if s.trim() == "all" {
        return Ok(Scheme::ALL.to_vec());
    }
    let mut out = Vec::new();
    for name in s.split(',') {
        let scheme: Scheme = name.parse()?;
        if !out.contains(&scheme) {
            out.push(scheme);
        }
    }
    Ok(out)
}

impl FromStr for SweepSpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut entries: BTreeMap<&str, &str> = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("line {}: expected 'key = value'", i + 1)))?;
            let key = key.trim();
            if !KEYS.contains(&key) {
                return Err(Error::Parse(format!("line {}: unknown key '{key}'", i + 1)));
            }
            if entries.insert(key, value.trim()).is_some() {
                return Err(Error::Parse(format!("line {}: duplicate key '{key}'", i + 1)));
            }
        }
        let required = |key: &str| {
            entries
                .get(key)
                .copied()
                .ok_or_else(|| Error::Parse(format!("missing required key '{key}'")))
        };
        let real = |key: &str| -> Result<Option<f64>> {
            entries
                .get(key)
                .map(|v| {
                    v.parse::<f64>()
                        .map_err(|_| Error::Parse(format!("{key}: '{v}' is not a number")))
                })
                .transpose()
        };

        let potentials = required("potential")?
            .split(';')
            .map(parse_potential)
            .collect::<Result<Vec<_>>>()?;
        let l = match entries.get("l") {
            None => vec![0],
            Some(v) => v
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::Parse(format!("l: '{}' is not a non-negative integer", t.trim())))
                })
                .collect::<Result<Vec<_>>>()?,
        };
        Ok(Self {
            potentials,
            k: parse_grid(required("k")?)?,
            l,
            n: real("n")?.unwrap_or(3.0),
            schemes: entries.get("schemes").map_or(Ok(Scheme::ALL.to_vec()), |s| parse_schemes(s))?,
            tol: real("tol")?.unwrap_or(DEFAULT_COMPARISON_TOL),
            scheme_options: SchemeOptions {
                eps: real("eps")?,
                eps_grid: entries.get("eps_grid").map(|s| parse_real_list(s)).transpose()?,
                tol: real("integration_tol")?,
            },
            output: entries.get("output").map(PathBuf::from),
            format: entries.get("format").map(|f| f.parse()).transpose()?,
        })
    }
}

impl SweepSpec {
    /// All `(potential, l, k)` points in report order.
    fn points(&self) -> Vec<(usize, u32, f64)> {
        let mut out = Vec::with_capacity(self.potentials.len() * self.l.len() * self.k.len());
        for p in 0..self.potentials.len() {
            for &l in &self.l {
                for &k in &self.k {
                    out.push((p, l, k));
                }
            }
        }
        out
    }
}

/// Runs every grid point; a point whose configuration is invalid fails the
/// whole sweep, while scheme failures stay inside their report.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<ComparisonReport>> {
    if spec.schemes.is_empty() {
        return Err(Error::InvalidArgument("sweep requests no schemes".into()));
    }
    let configs = spec
        .points()
        .into_iter()
        .map(|(p, l, k)| ScatteringConfig::new(k, l, spec.n).map(|cfg| (p, cfg)))
        .collect::<Result<Vec<_>>>()?;
    Ok(configs
        .par_iter()
        .map(|(p, cfg)| {
            compare_schemes_with(&spec.potentials[*p], cfg, &spec.schemes, spec.tol, &spec.scheme_options)
        })
        .collect())
}
