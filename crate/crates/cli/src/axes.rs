//! Sampling axes shared by the data commands and the verify suites.

use std::f64::consts::{PI, TAU};

use topowalk_core::{CoinAngle, Momentum, StepCount};

/// Momentum grid on `[-π, π)`: the `samples`-point closed grid over
/// `[-π, π]` with the right endpoint dropped as the duplicate of `-π`.
/// Odd `samples` puts `k = 0` exactly on the grid.
pub fn k_axis(samples: usize) -> Vec<Momentum> {
    let step = TAU / (samples as f64 - 1.0);
    (0..samples - 1)
        .map(|j| Momentum::new(-PI + j as f64 * step).expect("finite"))
        .collect()
}

/// Inclusive θ-grid over `[0, 2π]`.
pub fn theta_axis(samples: usize) -> Vec<CoinAngle> {
    let step = TAU / (samples as f64 - 1.0);
    (0..samples)
        .map(|j| CoinAngle::new((j as f64 * step).min(TAU)).expect("in range"))
        .collect()
}

pub fn steps_up_to(max: u32) -> Vec<StepCount> {
    (1..=max).map(|t| StepCount::new(t).expect("positive")).collect()
}
