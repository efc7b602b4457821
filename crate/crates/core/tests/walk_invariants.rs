//! Property suites for the position-space walk: norm conservation, light
//! cone and parity support, the mirror symmetry of the protocol, and the
//! exact ballistic limit.

use std::f64::consts::TAU;

use num_complex::Complex64;
use proptest::prelude::*;
use topowalk_core::walk::{evolve_step, make_initial, run_walk, InitialCoinSpec};
use topowalk_core::StepCount;

fn normalized_spec(a_re: f64, a_im: f64, b_re: f64, b_im: f64) -> Option<InitialCoinSpec> {
    let alpha = Complex64::new(a_re, a_im);
    let beta = Complex64::new(b_re, b_im);
    let norm = (alpha.norm_sqr() + beta.norm_sqr()).sqrt();
    if norm < 1e-3 {
        return None;
    }
    InitialCoinSpec::new(alpha / norm, beta / norm).ok()
}

fn amplitude_component() -> impl Strategy<Value = f64> {
    -1.0..1.0f64
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn norm_support_and_light_cone(
        t in 1u32..=100,
        theta in 0.0..TAU,
        a_re in amplitude_component(),
        a_im in amplitude_component(),
        b_re in amplitude_component(),
        b_im in amplitude_component(),
    ) {
        let spec = match normalized_spec(a_re, a_im, b_re, b_im) {
            Some(spec) => spec,
            None => return Ok(()),
        };
        let steps = StepCount::new(t).unwrap();
        let mut state = make_initial(&spec, steps);
        for step in 1..=t {
            evolve_step(&mut state, step, theta).unwrap();
            prop_assert!((state.norm_sq() - 1.0).abs() < 1e-12);
        }
        // Light cone and parity support are exact zeros, not just small.
        let reach = i64::from(t);
        for x in -reach..=reach {
            let occupied = state.amplitude(x, 0) != Complex64::ZERO
                || state.amplitude(x, 1) != Complex64::ZERO;
            if (x + reach) % 2 == 1 {
                prop_assert!(!occupied, "parity violation at x={x}");
            }
        }
        let m2 = state.moment(2);
        prop_assert!(m2 <= (t as f64).powi(2) + 1e-9);
        let total: f64 = state.distribution().iter().map(|(_, p)| p).sum();
        prop_assert!((total - 1.0).abs() < 1e-12);
    }

    /// Swapping the coin levels (with conjugation) and flipping θ mirrors
    /// the walk exactly: x → -x.
    #[test]
    fn conjugate_swap_mirrors_distribution(
        t in 1u32..=40,
        theta in 0.0..TAU,
        a_re in amplitude_component(),
        a_im in amplitude_component(),
        b_re in amplitude_component(),
        b_im in amplitude_component(),
    ) {
        let spec = match normalized_spec(a_re, a_im, b_re, b_im) {
            Some(spec) => spec,
            None => return Ok(()),
        };
        let mirrored_spec =
            InitialCoinSpec::new(spec.beta().conj(), spec.alpha().conj()).unwrap();
        let steps = StepCount::new(t).unwrap();
        let forward = run_walk(steps, theta, &spec);
        let mirrored = run_walk(steps, -theta, &mirrored_spec);
        let reach = i64::from(t);
        for x in -reach..=reach {
            let p = forward.amplitude(x, 0).norm_sqr() + forward.amplitude(x, 1).norm_sqr();
            let q = mirrored.amplitude(-x, 0).norm_sqr()
                + mirrored.amplitude(-x, 1).norm_sqr();
            prop_assert!((p - q).abs() < 1e-12, "x={x}: {p} vs {q}");
        }
    }
}

#[test]
fn identity_coin_walk_is_exactly_ballistic() {
    let alpha = Complex64::new(0.6, 0.0);
    let beta = Complex64::new(0.0, 0.8);
    let spec = InitialCoinSpec::new(alpha, beta).unwrap();
    for t in [1u32, 7, 30] {
        let steps = StepCount::new(t).unwrap();
        let state = run_walk(steps, 0.0, &spec);
        assert_eq!(state.amplitude(i64::from(t), 0), alpha);
        assert_eq!(state.amplitude(-i64::from(t), 1), beta);
        let dist = state.distribution();
        assert_eq!(dist.len(), 2);
        assert_eq!(dist[0].0, -i64::from(t));
        assert_eq!(dist[1].0, i64::from(t));
    }
}
