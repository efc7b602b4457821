//! The built-in invariant suites behind `topowalk verify`: every structural
//! identity of the band machinery, both winding routes, the quadrature and
//! finite-difference oracles, and the position-space walk checks, each
//! reporting the worst error observed on its stated grid.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use topowalk_core::bloch::{
    bloch_vector, chiral_axis, chiral_operator, coin_unitary, effective_hamiltonian,
    hamiltonian_log_oracle, quasi_energy, shift_unitary, sin_quasi_energy, step_unitary,
    sublattice_projectors,
};
use topowalk_core::topology::{
    gapless_angles, group_velocity, l_analytic, l_quadrature, phase_diagram, transition_points,
    winding_integral, Band,
};
use topowalk_core::types::{dot, norm};
use topowalk_core::walk::{evolve_step, make_initial, run_walk, InitialCoinSpec};
use topowalk_core::{
    CoinAngle, Complex2x2, Error as CoreError, Momentum, StepCount, GAPLESS_TOLERANCE,
};

use crate::axes::{k_axis, steps_up_to, theta_axis};

const GRID_T_MAX: u32 = 25;
const GRID_THETA_SAMPLES: usize = 101;
const GRID_K_SAMPLES: usize = 257;

/// Result of one invariant suite.
#[derive(Debug, Clone)]
pub struct SuiteOutcome {
    pub name: &'static str,
    pub max_error: f64,
    pub tolerance: f64,
    pub cells: usize,
    pub passed: bool,
    pub detail: Option<String>,
}

impl SuiteOutcome {
    fn checked(name: &'static str, tolerance: f64, max_error: f64, cells: usize) -> Self {
        SuiteOutcome {
            name,
            max_error,
            tolerance,
            cells,
            passed: max_error <= tolerance,
            detail: None,
        }
    }

    fn from_error(name: &'static str, tolerance: f64, err: &CoreError) -> Self {
        SuiteOutcome {
            name,
            max_error: f64::INFINITY,
            tolerance,
            cells: 0,
            passed: false,
            detail: Some(err.to_string()),
        }
    }
}

/// Worst value of `f` over the (T ≤ 25) × (101 θ) × (257-convention k) grid.
fn scan_all(f: impl Fn(StepCount, CoinAngle, Momentum) -> f64 + Sync) -> (f64, usize) {
    scan(false, f)
}

/// Same grid, restricted to points where the bands are open.
fn scan_gapped(f: impl Fn(StepCount, CoinAngle, Momentum) -> f64 + Sync) -> (f64, usize) {
    scan(true, f)
}

fn scan(
    skip_gapless: bool,
    f: impl Fn(StepCount, CoinAngle, Momentum) -> f64 + Sync,
) -> (f64, usize) {
    let thetas = theta_axis(GRID_THETA_SAMPLES);
    let ks = k_axis(GRID_K_SAMPLES);
    steps_up_to(GRID_T_MAX)
        .into_par_iter()
        .map(|steps| {
            let mut max_err = 0.0_f64;
            let mut cells = 0usize;
            for &theta in &thetas {
                for &k in &ks {
                    if skip_gapless && sin_quasi_energy(steps, theta, k) <= GAPLESS_TOLERANCE {
                        continue;
                    }
                    max_err = max_err.max(f(steps, theta, k));
                    cells += 1;
                }
            }
            (max_err, cells)
        })
        .reduce(|| (0.0, 0), |a, b| (a.0.max(b.0), a.1 + b.1))
}

/// Coin, shift, and step operators are unitary with unit determinant.
pub fn suite_unitarity() -> SuiteOutcome {
    let one = Complex64::ONE;
    let (mut max_err, mut cells) = scan_all(|steps, theta, k| {
        let u = step_unitary(steps, theta, k);
        u.unitarity_defect().max((u.det() - one).norm())
    });
    for steps in steps_up_to(GRID_T_MAX) {
        for theta in theta_axis(GRID_THETA_SAMPLES) {
            let c = coin_unitary(steps, theta);
            max_err = max_err.max(c.unitarity_defect()).max((c.det() - one).norm());
            cells += 1;
        }
    }
    for k in k_axis(GRID_K_SAMPLES) {
        let s = shift_unitary(k);
        max_err = max_err.max(s.unitarity_defect()).max((s.det() - one).norm());
        cells += 1;
    }
    SuiteOutcome::checked("unitarity", 1e-12, max_err, cells)
}

/// `U = cos E · I - i sin E (n·σ)` entrywise.
pub fn suite_spectral_reconstruction() -> SuiteOutcome {
    let (max_err, cells) = scan_gapped(|steps, theta, k| {
        let u = step_unitary(steps, theta, k);
        let b = bloch_vector(steps, theta, k).expect("gapped");
        let rebuilt = Complex2x2::identity().scale_re(b.energy.cos())
            + Complex2x2::pauli_dot(b.n).scale(Complex64::new(0.0, -b.energy.sin()));
        u.max_abs_diff(&rebuilt)
    });
    SuiteOutcome::checked("spectral-reconstruction", 1e-12, max_err, cells)
}

/// `|n| = 1` and `A·n = 0` wherever the bands are open.
pub fn suite_bloch_geometry() -> SuiteOutcome {
    let (max_err, cells) = scan_gapped(|steps, theta, k| {
        let b = bloch_vector(steps, theta, k).expect("gapped");
        let axis = chiral_axis(steps, theta).vector();
        (norm(b.n) - 1.0).abs().max(dot(axis, b.n).abs())
    });
    SuiteOutcome::checked("bloch-geometry", 1e-12, max_err, cells)
}

/// `Γ² = I`, `Γ = Γ†`, and all three anticommutation forms `ΓHΓ⁻¹ = -H`.
pub fn suite_chiral_identities() -> SuiteOutcome {
    let (max_err, cells) = scan_gapped(|steps, theta, k| {
        let gamma = chiral_operator(steps, theta);
        let gamma_inv = gamma.inverse().expect("unit determinant");
        let h = effective_hamiltonian(steps, theta, k).expect("gapped");
        let minus_h = h.scale_re(-1.0);
        (gamma * gamma)
            .max_abs_diff(&Complex2x2::identity())
            .max(gamma.hermiticity_defect())
            .max((gamma * h * gamma).max_abs_diff(&minus_h))
            .max((gamma * h * gamma_inv).max_abs_diff(&minus_h))
            .max((gamma_inv * h * gamma).max_abs_diff(&minus_h))
    });
    SuiteOutcome::checked("chiral-identities", 1e-12, max_err, cells)
}

/// Completeness, orthogonality, idempotence, and off-diagonal structure of
/// the sublattice projectors.
pub fn suite_projector_identities() -> SuiteOutcome {
    let (max_err, cells) = scan_gapped(|steps, theta, k| {
        let (pa, pb) = sublattice_projectors(steps, theta);
        let h = effective_hamiltonian(steps, theta, k).expect("gapped");
        let zero = Complex2x2::zero();
        (pa + pb)
            .max_abs_diff(&Complex2x2::identity())
            .max((pa * pb).max_abs_diff(&zero))
            .max((pa * pa).max_abs_diff(&pa))
            .max((pb * pb).max_abs_diff(&pb))
            .max((pa * h * pa).max_abs_diff(&zero))
            .max((pb * h * pb).max_abs_diff(&zero))
            .max((pa * h * pb + pb * h * pa).max_abs_diff(&h))
    });
    SuiteOutcome::checked("projector-identities", 1e-12, max_err, cells)
}

/// `E(k) = E(-k)`.
pub fn suite_energy_symmetry() -> SuiteOutcome {
    let (max_err, cells) = scan_all(|steps, theta, k| {
        let mirrored = Momentum::new(-k.value()).expect("finite");
        (quasi_energy(steps, theta, k) - quasi_energy(steps, theta, mirrored)).abs()
    });
    SuiteOutcome::checked("energy-symmetry", 1e-15, max_err, cells)
}

/// `H(k + 2π) = H(k)`.
pub fn suite_hamiltonian_periodicity() -> SuiteOutcome {
    let (max_err, cells) = scan_gapped(|steps, theta, k| {
        let shifted = Momentum::new(k.value() + TAU).expect("finite");
        let h = effective_hamiltonian(steps, theta, k).expect("gapped");
        let h_shifted = effective_hamiltonian(steps, theta, shifted).expect("gapped");
        h.max_abs_diff(&h_shifted)
    });
    SuiteOutcome::checked("hamiltonian-periodicity", 1e-12, max_err, cells)
}

/// Closed-form effective Hamiltonian against `i ln U` by eigendecomposition.
pub fn suite_log_oracle() -> SuiteOutcome {
    let (max_err, cells) = scan_gapped(|steps, theta, k| {
        let closed = effective_hamiltonian(steps, theta, k).expect("gapped");
        let oracle = hamiltonian_log_oracle(steps, theta, k).expect("gapped");
        closed.max_abs_diff(&oracle)
    });
    SuiteOutcome::checked("hamiltonian-log-oracle", 1e-10, max_err, cells)
}

/// Winding integral against the parity rule at every region midpoint, T ≤ 20.
pub fn suite_winding_midpoints(resolution: usize) -> SuiteOutcome {
    winding_suite("winding-midpoints", 20, &[0.5], resolution)
}

/// Winding integral at five interior samples of every region, T ≤ 10: the
/// integer plateau across each phase.
pub fn suite_winding_plateau(resolution: usize) -> SuiteOutcome {
    winding_suite("winding-plateau", 10, &[0.1, 0.3, 0.5, 0.7, 0.9], resolution)
}

fn winding_suite(
    name: &'static str,
    t_max: u32,
    fractions: &[f64],
    resolution: usize,
) -> SuiteOutcome {
    let mut jobs = Vec::new();
    for steps in steps_up_to(t_max) {
        for region in phase_diagram(steps).regions {
            for &fraction in fractions {
                jobs.push((steps, region.clone(), fraction));
            }
        }
    }
    let results: Vec<Result<f64, CoreError>> = jobs
        .par_iter()
        .map(|(steps, region, fraction)| {
            let theta = CoinAngle::new(
                region.theta_min + fraction * (region.theta_max - region.theta_min),
            )?;
            let integral = winding_integral(*steps, theta, resolution)?;
            Ok((integral - f64::from(region.winding)).abs())
        })
        .collect();
    let mut max_err = 0.0_f64;
    let cells = results.len();
    for result in results {
        match result {
            Ok(dev) => max_err = max_err.max(dev),
            Err(err) => return SuiteOutcome::from_error(name, 1e-6, &err),
        }
    }
    SuiteOutcome::checked(name, 1e-6, max_err, cells)
}

/// Analytic group velocity against central differences of the dispersion at
/// 10⁴ seeded non-gapless samples.
pub fn suite_group_velocity_fd() -> SuiteOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7090_3a1c);
    let h = 1e-6;
    let mut samples = Vec::with_capacity(10_000);
    while samples.len() < 10_000 {
        let steps = StepCount::new(rng.gen_range(1..=GRID_T_MAX)).expect("positive");
        let theta = CoinAngle::new(rng.gen_range(0.0..TAU)).expect("in range");
        let k = Momentum::new(rng.gen_range(-PI..PI)).expect("finite");
        // Central differences lose accuracy inside the conical neighborhood
        // of a band touching; sample clear of it.
        if sin_quasi_energy(steps, theta, k) >= 1e-2 {
            samples.push((steps, theta, k));
        }
    }
    let max_err = samples
        .par_iter()
        .map(|&(steps, theta, k)| {
            let v = group_velocity(steps, theta, k, Band::Plus).expect("gapped");
            let bound_defect = (v.abs() - 1.0).max(0.0);
            let plus = quasi_energy(steps, theta, Momentum::new(k.value() + h).expect("finite"));
            let minus =
                quasi_energy(steps, theta, Momentum::new(k.value() - h).expect("finite"));
            (v - (plus - minus) / (2.0 * h)).abs().max(bound_defect)
        })
        .reduce(|| 0.0, f64::max);
    SuiteOutcome::checked("group-velocity-fd", 1e-6, max_err, 10_000)
}

/// `V(k) = -V(-k)` and the Bloch relation `n_z = -V` on the positive band.
pub fn suite_velocity_relations() -> SuiteOutcome {
    let thetas = theta_axis(41);
    let ks = k_axis(129);
    let results: Vec<(f64, usize)> = steps_up_to(12)
        .into_par_iter()
        .map(|steps| {
            let mut max_err = 0.0_f64;
            let mut cells = 0usize;
            for &theta in &thetas {
                for &k in &ks {
                    if sin_quasi_energy(steps, theta, k) <= GAPLESS_TOLERANCE {
                        continue;
                    }
                    let v = group_velocity(steps, theta, k, Band::Plus).expect("gapped");
                    let mirrored = Momentum::new(-k.value()).expect("finite");
                    if sin_quasi_energy(steps, theta, mirrored) > GAPLESS_TOLERANCE {
                        let v_m =
                            group_velocity(steps, theta, mirrored, Band::Plus).expect("gapped");
                        max_err = max_err.max((v + v_m).abs());
                    }
                    let b = bloch_vector(steps, theta, k).expect("gapped");
                    max_err = max_err.max((b.n[2] + v).abs());
                    cells += 1;
                }
            }
            (max_err, cells)
        })
        .collect();
    let (max_err, cells) = results
        .into_iter()
        .fold((0.0_f64, 0), |a, b| (a.0.max(b.0), a.1 + b.1));
    SuiteOutcome::checked("velocity-bloch-relation", 1e-12, max_err, cells)
}

/// Velocity saturation to ±1 just off a gapless angle: probes at θ offset
/// ±1e-4 and |k| = 1e-3, with the sign pattern set by the closing energy.
pub fn suite_gapless_saturation() -> SuiteOutcome {
    let k_probe = 1e-3;
    let offset = 1e-4;
    let cases: [(u32, u32, &[f64]); 5] = [
        (1, 0, &[offset]),
        (2, 0, &[offset]),
        (1, 1, &[-offset]),
        (2, 1, &[offset, -offset]),
        (2, 2, &[-offset]),
    ];
    let mut max_err = 0.0_f64;
    let mut cells = 0usize;
    for (t, m, offsets) in cases {
        let steps = StepCount::new(t).expect("positive");
        let base = TAU * f64::from(m) / f64::from(t);
        let expected_sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        for &off in offsets {
            let theta = CoinAngle::new(base + off).expect("in range");
            for (k, sign) in [(k_probe, expected_sign), (-k_probe, -expected_sign)] {
                let v = group_velocity(steps, theta, Momentum::new(k).expect("finite"), Band::Plus)
                    .expect("off the boundary");
                max_err = max_err.max((v - sign).abs());
                cells += 1;
            }
        }
    }
    SuiteOutcome::checked("gapless-saturation", 1e-2, max_err, cells)
}

/// `∫ V² dk/2π` by trapezoid quadrature against `1 - |sin(Tθ/2)|`.
pub fn suite_l_asymptote(resolution: usize) -> SuiteOutcome {
    let thetas = theta_axis(50);
    let max_err = steps_up_to(GRID_T_MAX)
        .into_par_iter()
        .map(|steps| {
            thetas
                .iter()
                .map(|&theta| {
                    (l_quadrature(steps, theta, resolution) - l_analytic(steps, theta)).abs()
                })
                .fold(0.0_f64, f64::max)
        })
        .reduce(|| 0.0, f64::max);
    SuiteOutcome::checked("l-asymptote", 1e-8, max_err, GRID_T_MAX as usize * thetas.len())
}

/// Slope kinks of L coincide with the gapless lattice, as sets.
pub fn suite_transition_points() -> SuiteOutcome {
    let mut max_err = 0.0_f64;
    let mut cells = 0usize;
    for steps in steps_up_to(50) {
        let kinks = transition_points(steps);
        let boundaries = gapless_angles(steps);
        if kinks.len() != boundaries.len() {
            return SuiteOutcome {
                name: "transition-points",
                max_error: f64::INFINITY,
                tolerance: 1e-12,
                cells,
                passed: false,
                detail: Some(format!(
                    "T={}: {} kinks vs {} gapless angles",
                    steps.get(),
                    kinks.len(),
                    boundaries.len()
                )),
            };
        }
        for (kink, boundary) in kinks.iter().zip(&boundaries) {
            max_err = max_err.max((kink - boundary.theta).abs());
            cells += 1;
        }
    }
    SuiteOutcome::checked("transition-points", 1e-12, max_err, cells)
}

/// Norm conservation, parity and light-cone support, and the `M₂ ≤ T²`
/// bound over 1000 seeded random walks with T ≤ 100.
pub fn suite_walk_conservation() -> SuiteOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    let mut cases = Vec::with_capacity(1000);
    while cases.len() < 1000 {
        let t: u32 = rng.gen_range(1..=100);
        let theta: f64 = rng.gen_range(0.0..TAU);
        let alpha = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let beta = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let scale = (alpha.norm_sqr() + beta.norm_sqr()).sqrt();
        if scale < 1e-3 {
            continue;
        }
        if let Ok(spec) = InitialCoinSpec::new(alpha / scale, beta / scale) {
            cases.push((t, theta, spec));
        }
    }
    let max_err = cases
        .par_iter()
        .map(|&(t, theta, spec)| {
            let steps = StepCount::new(t).expect("positive");
            let mut state = make_initial(&spec, steps);
            let mut worst = 0.0_f64;
            for step in 1..=t {
                evolve_step(&mut state, step, theta).expect("ordered");
                worst = worst.max((state.norm_sq() - 1.0).abs());
            }
            let reach = i64::from(t);
            for x in -reach..=reach {
                let occupied = state.amplitude(x, 0) != Complex64::ZERO
                    || state.amplitude(x, 1) != Complex64::ZERO;
                if occupied && (x + reach) % 2 == 1 {
                    worst = worst.max(1.0);
                }
            }
            if state.moment(2) > (t as f64).powi(2) + 1e-9 {
                worst = worst.max(1.0);
            }
            worst
        })
        .reduce(|| 0.0, f64::max);
    SuiteOutcome::checked("walk-conservation", 1e-12, max_err, 1000)
}

/// The closed-form traces: the even split at one step, the refocusing
/// two-step run, the exactly ballistic identity-coin walk, and the mirror
/// symmetry under coin swap with θ → -θ.
pub fn suite_walk_closed_forms() -> SuiteOutcome {
    let mut max_err = 0.0_f64;
    let up = InitialCoinSpec::coin_up();

    let state = run_walk(StepCount::new(1).expect("positive"), PI / 2.0, &up);
    max_err = max_err.max((state.moment(2) - 1.0).abs());
    for x in [-1i64, 1] {
        let p = state.amplitude(x, 0).norm_sqr() + state.amplitude(x, 1).norm_sqr();
        max_err = max_err.max((p - 0.5).abs());
    }

    let state = run_walk(StepCount::new(2).expect("positive"), PI / 2.0, &up);
    let p0 = state.amplitude(0, 0).norm_sqr() + state.amplitude(0, 1).norm_sqr();
    max_err = max_err.max((p0 - 1.0).abs());

    let state = run_walk(StepCount::new(2).expect("positive"), 0.0, &up);
    let p2 = state.amplitude(2, 0).norm_sqr();
    max_err = max_err.max((p2 - 1.0).abs());
    if state.distribution() != vec![(2, 1.0)] {
        max_err = max_err.max(1.0);
    }

    // Ballistic run keeps the initial amplitudes bit-exactly.
    let alpha = Complex64::new(0.6, 0.0);
    let beta = Complex64::new(0.0, 0.8);
    let spec = InitialCoinSpec::new(alpha, beta).expect("normalized");
    let state = run_walk(StepCount::new(9).expect("positive"), 0.0, &spec);
    if state.amplitude(9, 0) != alpha || state.amplitude(-9, 1) != beta {
        max_err = max_err.max(1.0);
    }

    // Mirror symmetry.
    let mirrored_spec = InitialCoinSpec::new(beta.conj(), alpha.conj()).expect("normalized");
    let steps = StepCount::new(13).expect("positive");
    let forward = run_walk(steps, 2.1, &spec);
    let mirrored = run_walk(steps, -2.1, &mirrored_spec);
    for x in -13i64..=13 {
        let p = forward.amplitude(x, 0).norm_sqr() + forward.amplitude(x, 1).norm_sqr();
        let q = mirrored.amplitude(-x, 0).norm_sqr() + mirrored.amplitude(-x, 1).norm_sqr();
        max_err = max_err.max((p - q).abs());
    }

    SuiteOutcome::checked("walk-closed-forms", 1e-12, max_err, 5)
}

/// Runs every suite at the given trapezoid resolution.
pub fn run_all(resolution: usize) -> Vec<SuiteOutcome> {
    vec![
        suite_unitarity(),
        suite_spectral_reconstruction(),
        suite_bloch_geometry(),
        suite_chiral_identities(),
        suite_projector_identities(),
        suite_energy_symmetry(),
        suite_hamiltonian_periodicity(),
        suite_log_oracle(),
        suite_winding_midpoints(resolution),
        suite_winding_plateau(resolution),
        suite_group_velocity_fd(),
        suite_velocity_relations(),
        suite_gapless_saturation(),
        suite_l_asymptote(resolution),
        suite_transition_points(),
        suite_walk_conservation(),
        suite_walk_closed_forms(),
    ]
}

/// One line per suite plus a summary. Deterministic: identical inputs give
/// identical bytes (timing goes to stderr, not into the report).
pub fn render_report(outcomes: &[SuiteOutcome]) -> String {
    let mut doc = String::new();
    for outcome in outcomes {
        let status = if outcome.passed { "PASS" } else { "FAIL" };
        doc.push_str(&format!(
            "{status} {:<26} max_err={:<10.3e} tol={:.0e} cells={}\n",
            outcome.name, outcome.max_error, outcome.tolerance, outcome.cells
        ));
        if let Some(detail) = &outcome.detail {
            doc.push_str(&format!("     {detail}\n"));
        }
    }
    let passed = outcomes.iter().filter(|o| o.passed).count();
    doc.push_str(&format!(
        "verify: {passed}/{} suites passed\n",
        outcomes.len()
    ));
    doc
}
