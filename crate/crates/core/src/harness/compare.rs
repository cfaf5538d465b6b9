use std::collections::BTreeMap;

use crate::acont::{phase_shift_ac_with, AcontOptions};
use crate::dimreg::phase_shift_dimreg;
use crate::error::Result;
use crate::minsub::{self, default_eps_grid, phase_shift_minsub};
use crate::potential::PowerLawPotential;
use crate::types::{PhaseShiftResult, ScatteringConfig, Scheme};

/// Comparison tolerance used when none is given.
pub const DEFAULT_COMPARISON_TOL: f64 = 1e-4;

/// Per-scheme numerical settings. `None` selects the scheme default.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SchemeOptions {
    pub eps: Option<f64>,
    pub eps_grid: Option<Vec<f64>>,
    /// Integration tolerance handed to the numerical schemes.
    pub tol: Option<f64>,
}

/// Runs a single scheme.
pub fn run_scheme(
    v: &PowerLawPotential,
    cfg: &ScatteringConfig,
    scheme: Scheme,
    opts: &SchemeOptions,
) -> Result<PhaseShiftResult> {
    match scheme {
        Scheme::Dimreg => phase_shift_dimreg(v, cfg),
        Scheme::Acont => {
            let defaults = AcontOptions::default();
            phase_shift_ac_with(
                v,
                cfg,
                &AcontOptions {
                    eps: opts.eps,
                    tol: opts.tol.unwrap_or(defaults.tol),
                },
            )
        }
        Scheme::Minsub => {
            let grid = opts.eps_grid.clone().unwrap_or_else(|| default_eps_grid(cfg.k()));
            phase_shift_minsub(v, cfg, &grid, opts.tol.unwrap_or(minsub::DEFAULT_TOL))
        }
    }
}

/// `|a - b| / max(1, |a|, |b|)`: absolute near zero, relative otherwise.
pub fn normalized_discrepancy(a: f64, b: f64) -> f64 {
    (a - b).abs() / 1f64.max(a.abs()).max(b.abs())
}

/// Outcome of running several schemes on one problem.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonReport {
    pub config: ScatteringConfig,
    pub potential: PowerLawPotential,
    pub results: BTreeMap<Scheme, Result<PhaseShiftResult>>,
    /// Largest normalized discrepancy over pairs of successful schemes.
    pub max_pairwise_discrepancy: f64,
    pub agreement: bool,
    pub tolerance_used: f64,
}

impl ComparisonReport {
    fn assemble(
        config: ScatteringConfig,
        potential: PowerLawPotential,
        results: BTreeMap<Scheme, Result<PhaseShiftResult>>,
        tolerance_used: f64,
    ) -> Self {
        let max_pairwise_discrepancy = max_discrepancy(&results);
        Self {
            config,
            potential,
            agreement: max_pairwise_discrepancy <= tolerance_used,
            results,
            max_pairwise_discrepancy,
            tolerance_used,
        }
    }

    pub fn has_errors(&self) -> bool {
        self.results.values().any(|r| r.is_err())
    }
}

fn max_discrepancy(results: &BTreeMap<Scheme, Result<PhaseShiftResult>>) -> f64 {
    let values: Vec<f64> = results.values().filter_map(|r| r.as_ref().ok()).map(|r| r.value).collect();
    let mut worst = 0.0f64;
    for (i, a) in values.iter().enumerate() {
        for b in &values[i + 1..] {
            worst = worst.max(normalized_discrepancy(*a, *b));
        }
    }
    worst
}

/// Runs every requested scheme, recording failures per scheme.
pub fn compare_schemes(
    v: &PowerLawPotential,
    cfg: &ScatteringConfig,
    schemes: &[Scheme],
    tol: f64,
) -> ComparisonReport {
    compare_schemes_with(v, cfg, schemes, tol, &SchemeOptions::default())
}

pub fn compare_schemes_with(
    v: &PowerLawPotential,
    cfg: &ScatteringConfig,
    schemes: &[Scheme],
    tol: f64,
    opts: &SchemeOptions,
) -> ComparisonReport {
    let results = schemes
        .iter()
        .map(|&s| (s, run_scheme(v, cfg, s, opts)))
        .collect();
    ComparisonReport::assemble(*cfg, v.clone(), results, tol)
}
