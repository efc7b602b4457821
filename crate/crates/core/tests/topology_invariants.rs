//! Invariant suites for the topological characterization: winding oracle
//! equivalence, group-velocity properties and its finite-difference oracle,
//! near-gapless saturation, the transport asymptote, and transition points.

mod common;

use std::f64::consts::{PI, TAU};

use common::{k_grid, steps_up_to, theta_grid};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use topowalk_core::bloch::{bloch_vector, quasi_energy, sin_quasi_energy};
use topowalk_core::topology::{
    gapless_angles, group_velocity, is_gapless_angle, l_analytic, l_quadrature, phase_diagram,
    transition_points, winding_integral, winding_rule, Band,
};
use topowalk_core::{CoinAngle, Momentum, StepCount};

#[test]
fn winding_integral_equals_rule_at_midpoints() {
    for steps in steps_up_to(20) {
        for region in phase_diagram(steps).regions {
            let theta = CoinAngle::new(region.midpoint()).unwrap();
            let integral = winding_integral(steps, theta, 4096).unwrap();
            let rule = winding_rule(steps, theta).unwrap();
            assert_eq!(rule, region.winding);
            assert!(
                (integral - f64::from(rule)).abs() < 1e-6,
                "T={} m={} integral={integral}",
                steps.get(),
                region.index_m
            );
        }
    }
}

#[test]
fn winding_is_constant_across_each_region() {
    for steps in steps_up_to(10) {
        for region in phase_diagram(steps).regions {
            for fraction in [0.1, 0.3, 0.5, 0.7, 0.9] {
                let theta = CoinAngle::new(
                    region.theta_min + fraction * (region.theta_max - region.theta_min),
                )
                .unwrap();
                let integral = winding_integral(steps, theta, 4096).unwrap();
                assert!(
                    (integral - f64::from(region.winding)).abs() < 1e-6,
                    "T={} m={} f={fraction} integral={integral}",
                    steps.get(),
                    region.index_m
                );
            }
        }
    }
}

#[test]
fn group_velocity_is_bounded_and_odd() {
    let thetas = theta_grid(41);
    let ks = k_grid(129);
    for steps in steps_up_to(12) {
        for &theta in &thetas {
            for &k in &ks {
                if sin_quasi_energy(steps, theta, k) <= 1e-9 {
                    continue;
                }
                let v = group_velocity(steps, theta, k, Band::Plus).unwrap();
                assert!(v.abs() <= 1.0);
                let mirrored = Momentum::new(-k.value()).unwrap();
                if sin_quasi_energy(steps, theta, mirrored) > 1e-9 {
                    let v_m = group_velocity(steps, theta, mirrored, Band::Plus).unwrap();
                    assert!((v + v_m).abs() < 1e-12);
                }
            }
        }
    }
}

/// `n_z = -V` holds as a signed identity on the positive band; the unsigned
/// reading `n_z = -|V|` on `k ∈ (0, π)` needs the band with non-negative
/// velocity there, which is the positive one exactly when `cos(Tθ/2) ≥ 0`.
#[test]
fn bloch_z_component_tracks_group_velocity() {
    let thetas = theta_grid(41);
    for steps in steps_up_to(10) {
        for &theta in &thetas {
            if is_gapless_angle(steps, theta) {
                continue;
            }
            let alpha = steps.as_f64() * theta.value() / 2.0;
            for j in 1..64 {
                let k = Momentum::new(PI * j as f64 / 64.0).unwrap();
                if sin_quasi_energy(steps, theta, k) <= 1e-9 {
                    continue;
                }
                let b = bloch_vector(steps, theta, k).unwrap();
                let v_plus = group_velocity(steps, theta, k, Band::Plus).unwrap();
                assert!((b.n[2] + v_plus).abs() < 1e-12);

                let band = if alpha.cos() >= 0.0 { Band::Plus } else { Band::Minus };
                let v = group_velocity(steps, theta, k, band).unwrap();
                let n_z = match band {
                    Band::Plus => b.n[2],
                    Band::Minus => -b.n[2],
                };
                assert!((n_z + v.abs()).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn analytic_velocity_matches_finite_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7090_3a1c);
    let h = 1e-6;
    let mut accepted = 0;
    let mut max_err = 0.0_f64;
    while accepted < 10_000 {
        let steps = StepCount::new(rng.gen_range(1..=25)).unwrap();
        let theta = CoinAngle::new(rng.gen_range(0.0..TAU)).unwrap();
        let k = Momentum::new(rng.gen_range(-PI..PI)).unwrap();
        // Central differences lose accuracy inside the conical neighborhood
        // of a band touching; keep a safe margin above the 1e-9 cutoff.
        if sin_quasi_energy(steps, theta, k) < 1e-2 {
            continue;
        }
        accepted += 1;
        let v = group_velocity(steps, theta, k, Band::Plus).unwrap();
        let plus = quasi_energy(steps, theta, Momentum::new(k.value() + h).unwrap());
        let minus = quasi_energy(steps, theta, Momentum::new(k.value() - h).unwrap());
        max_err = max_err.max((v - (plus - minus) / (2.0 * h)).abs());
    }
    assert!(max_err < 1e-6, "max |analytic - fd| = {max_err:.3e}");
}

/// Just off a gapless angle the velocity saturates to ±1 around the closing
/// momentum: `+1` on `k > 0` for an `E = 0` closing at `k = 0`, and the
/// opposite sign pattern for an `E = ±π` closing.
#[test]
fn velocity_saturates_near_gapless_points() {
    let k_probe = 1e-3;
    let offset = 1e-4;
    // (T, gapless index m, admissible θ offsets)
    let cases = [
        (1u32, 0u32, vec![offset]),
        (2, 0, vec![offset]),
        (1, 1, vec![-offset]),
        (2, 1, vec![offset, -offset]),
        (2, 2, vec![-offset]),
    ];
    for (t, m, offsets) in cases {
        let steps = StepCount::new(t).unwrap();
        let base = TAU * f64::from(m) / f64::from(t);
        // E=0 at k=0 for even m: V → +1 on k > 0. Odd m closes E=π there
        // and the pattern flips.
        let expected_sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        for off in offsets {
            let theta = CoinAngle::new(base + off).unwrap();
            for (k, sign) in [(k_probe, expected_sign), (-k_probe, -expected_sign)] {
                let v = group_velocity(steps, theta, Momentum::new(k).unwrap(), Band::Plus)
                    .unwrap();
                assert!(
                    (v - sign).abs() < 1e-2,
                    "T={t} m={m} off={off:+e} k={k:+e}: V={v}"
                );
            }
        }
    }
}

#[test]
fn quadrature_matches_analytic_l_on_grid() {
    let thetas = theta_grid(50);
    let mut max_err = 0.0_f64;
    for steps in steps_up_to(25) {
        for &theta in &thetas {
            let err = (l_quadrature(steps, theta, 4096) - l_analytic(steps, theta)).abs();
            max_err = max_err.max(err);
        }
    }
    assert!(max_err < 1e-8, "max quadrature error {max_err:.3e}");
}

#[test]
fn transition_points_equal_gapless_set() {
    for steps in steps_up_to(50) {
        let kinks = transition_points(steps);
        let boundaries = gapless_angles(steps);
        assert_eq!(kinks.len(), boundaries.len());
        for (kink, boundary) in kinks.iter().zip(&boundaries) {
            assert_eq!(*kink, boundary.theta);
        }
    }
}

/// Independent kink detector: numeric slope scan of `L(θ)` with step 1e-5,
/// flagging jumps larger than `T/2` across two samples.
#[test]
fn slope_scan_locates_interior_transitions() {
    let h = 1e-5;
    for t in [2u32, 5] {
        let steps = StepCount::new(t).unwrap();
        let samples = (TAU / h).ceil() as usize;
        let l_at = |j: usize| {
            let theta = CoinAngle::new((j as f64 * h).min(TAU)).unwrap();
            l_analytic(steps, theta)
        };
        let mut found: Vec<f64> = Vec::new();
        let slopes: Vec<f64> = (0..samples - 1)
            .map(|j| (l_at(j + 1) - l_at(j)) / h)
            .collect();
        for j in 1..slopes.len() - 1 {
            // Two-sample stride spans a kink regardless of grid alignment.
            if (slopes[j + 1] - slopes[j - 1]).abs() > f64::from(t) / 2.0 {
                let theta = (j as f64 + 0.5) * h;
                if found.last().is_none_or(|last| theta - last > 10.0 * h) {
                    found.push(theta);
                }
            }
        }
        let interior: Vec<f64> = transition_points(steps)
            .into_iter()
            .filter(|&x| x > 0.0 && x < TAU - 1e-12)
            .collect();
        assert_eq!(
            found.len(),
            interior.len(),
            "T={t}: found {found:?}, expected {interior:?}"
        );
        for (got, want) in found.iter().zip(&interior) {
            assert!((got - want).abs() < 5.0 * h, "T={t}: {got} vs {want}");
        }
    }
}
