//! Shared workloads for the scheme benchmarks.

use renorm_core::{PowerLawPotential, ScatteringConfig};

/// The unit Lennard-Jones s-wave problem at wave number `k`.
pub fn unit_lj(k: f64) -> (PowerLawPotential, ScatteringConfig) {
    (
        PowerLawPotential::lj12(1.0, 1.0, 1.0),
        ScatteringConfig::three_d(k, 0).expect("positive k"),
    )
}

/// Wave numbers swept by the benchmarks.
pub const WAVE_NUMBERS: [f64; 3] = [0.5, 1.0, 2.0];
