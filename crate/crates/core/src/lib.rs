//! First-order Born phase shifts for singular inverse-power-law potentials.
//!
//! The Born integral diverges at the origin for the potentials of interest.
//! Each of [`dimreg`], [`acont`] and [`minsub`] removes the divergence in its
//! own way, and [`harness`] checks that the finite answers coincide.

// Validation is written as `!(x > 0.0)` on purpose so that NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod acont;
pub mod dimreg;
pub mod error;
pub mod harness;
pub mod minsub;
pub mod potential;
pub mod quadrature;
pub mod series;
pub mod specfun;
pub mod types;

pub use acont::{phase_shift_ac, phase_shift_ac_with, AcontOptions};
pub use dimreg::{phase_shift_dimreg, term_phase_shift_dim};
pub use error::{Error, Result};
pub use harness::{compare_schemes, run_sweep, ComparisonReport, SweepSpec};
pub use minsub::{cutoff_phase_shift, default_eps_grid, phase_shift_minsub, pole_part};
pub use potential::{PowerLawPotential, PowerLawTerm};
pub use quadrature::{QuadResult, tail_closed_form_swave};
pub use series::{counterterm, integrand_series, Counterterm, LaurentSeries, Pole};
pub use types::{Diagnostics, DimregTerm, PhaseShiftResult, ScatteringConfig, Scheme};
