//! Grid conventions and helpers shared by the invariant suites.

use std::f64::consts::{PI, TAU};

use topowalk_core::{CoinAngle, Momentum, StepCount};

/// Inclusive θ-grid over `[0, 2π]` with `samples` points.
pub fn theta_grid(samples: usize) -> Vec<CoinAngle> {
    let step = TAU / (samples as f64 - 1.0);
    (0..samples)
        .map(|j| CoinAngle::new((j as f64 * step).min(TAU)).unwrap())
        .collect()
}

/// Uniform grid on `[-π, π)`: the `samples`-point closed grid with the
/// duplicated right endpoint dropped, so odd `samples` puts `k = 0` exactly
/// on the grid.
pub fn k_grid(samples: usize) -> Vec<Momentum> {
    let step = TAU / (samples as f64 - 1.0);
    (0..samples - 1)
        .map(|j| Momentum::new(-PI + j as f64 * step).unwrap())
        .collect()
}

pub fn steps_up_to(max: u32) -> Vec<StepCount> {
    (1..=max).map(|t| StepCount::new(t).unwrap()).collect()
}
