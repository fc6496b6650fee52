//! Shared fixtures for the coverlife benchmarks: deterministic instances
//! at the two scales that matter — the dense experiment regime the grid
//! driver visits, and the tiny regime where the exact oracle is feasible.

use coverlife_core::{generate, CoverageMatrix, GenConfig, Instance};

/// A deployment in the experiment regime: 1000 m field, targets inside
/// the centered 300 m square, 600 m sensing range. Feasible for any seed
/// at these densities, and deterministic per seed.
pub fn dense_instance(n_sensors: usize, n_targets: usize, seed: u64) -> Instance {
    let mut config = GenConfig::new(n_sensors, n_targets, seed);
    config.target_area = 300.0;
    config.range = 600.0;
    config.max_resamples = 10_000;
    generate(&config).expect("dense fixture must be feasible")
}

/// A small deployment within oracle reach (minimal-cover enumeration
/// stays in the hundreds).
pub fn oracle_instance(n_sensors: usize, n_targets: usize, seed: u64) -> Instance {
    let mut config = GenConfig::new(n_sensors, n_targets, seed);
    config.sensor_area = 12.0;
    config.target_area = 8.0;
    config.range = 5.0;
    config.max_resamples = 10_000;
    generate(&config).expect("oracle fixture must be feasible")
}

/// Coverage matrix for a fixture instance.
pub fn matrix(inst: &Instance) -> CoverageMatrix {
    CoverageMatrix::build(inst).expect("fixture instances are fully covered")
}
