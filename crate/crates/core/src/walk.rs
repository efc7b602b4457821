//! Direct position-space simulation of the step-dependent-coin walk.
//!
//! Step `t` of a `T`-step run rotates the coin by the growing parameter
//! `t·θ` and then shifts coin-level 0 one site right and coin-level 1 one
//! site left. Amplitudes are stored densely over `x ∈ [-T, T]`; everything
//! outside the light cone stays exactly zero.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::topology::l_analytic;
use crate::types::{CoinAngle, StepCount};

/// Probabilities below this are indistinguishable from the rounding floor of
/// an amplitude-squared and are omitted from emitted distributions.
const PROBABILITY_FLOOR: f64 = 1e-16;

/// Margin (in θ) that moment scans keep from every phase boundary.
pub const M2_SCAN_GAPLESS_MARGIN: f64 = 1e-3;

/// Coin amplitudes `(α, β)` of the walker at the origin, `|α|² + |β|² = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InitialCoinSpec {
    alpha: Complex64,
    beta: Complex64,
}

impl InitialCoinSpec {
    pub fn new(alpha: Complex64, beta: Complex64) -> Result<Self> {
        let norm_sq = alpha.norm_sqr() + beta.norm_sqr();
        if (norm_sq - 1.0).abs() > 1e-12 {
            return Err(Error::Normalization { norm_sq });
        }
        Ok(Self { alpha, beta })
    }

    /// `(|0⟩ + i|1⟩)/√2`: spreads symmetrically; the default initial state.
    pub fn symmetric_default() -> Self {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        Self {
            alpha: Complex64::new(r, 0.0),
            beta: Complex64::new(0.0, r),
        }
    }

    /// `|0⟩`: all weight on the right-moving coin level.
    pub fn coin_up() -> Self {
        Self {
            alpha: Complex64::ONE,
            beta: Complex64::ZERO,
        }
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn beta(&self) -> Complex64 {
        self.beta
    }
}

/// Walker amplitudes over positions `[-T, T]` and two coin levels.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkerState {
    capacity: StepCount,
    steps_done: u32,
    /// Row-major `(position, coin)`: index `2(x + T) + coin`.
    amps: Vec<Complex64>,
}

impl WalkerState {
    fn index(&self, x: i64, coin: usize) -> usize {
        let t = i64::from(self.capacity.get());
        debug_assert!(x.abs() <= t && coin < 2);
        2 * (x + t) as usize + coin
    }

    /// Amplitude at position `x` and coin level `coin ∈ {0, 1}`.
    pub fn amplitude(&self, x: i64, coin: usize) -> Complex64 {
        self.amps[self.index(x, coin)]
    }

    pub fn capacity(&self) -> StepCount {
        self.capacity
    }

    pub fn steps_done(&self) -> u32 {
        self.steps_done
    }

    pub fn norm_sq(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Total probability per position, zero rows omitted, ascending in `x`.
    pub fn distribution(&self) -> Vec<(i64, f64)> {
        let t = i64::from(self.capacity.get());
        (-t..=t)
            .filter_map(|x| {
                let p = self.amplitude(x, 0).norm_sqr() + self.amplitude(x, 1).norm_sqr();
                (p >= PROBABILITY_FLOOR).then_some((x, p))
            })
            .collect()
    }

    /// `Σ_x x^order P(x)` over the full support.
    pub fn moment(&self, order: u32) -> f64 {
        let t = i64::from(self.capacity.get());
        (-t..=t)
            .map(|x| {
                let p = self.amplitude(x, 0).norm_sqr() + self.amplitude(x, 1).norm_sqr();
                (x as f64).powi(order as i32) * p
            })
            .sum()
    }
}

/// Walker concentrated at the origin with the given coin amplitudes.
pub fn make_initial(spec: &InitialCoinSpec, capacity: StepCount) -> WalkerState {
    let slots = 2 * (2 * capacity.get() as usize + 1);
    let mut state = WalkerState {
        capacity,
        steps_done: 0,
        amps: vec![Complex64::ZERO; slots],
    };
    let origin0 = state.index(0, 0);
    let origin1 = state.index(0, 1);
    state.amps[origin0] = spec.alpha;
    state.amps[origin1] = spec.beta;
    state
}

/// Applies step `t`: the coin rotation with parameter `t·θ` followed by the
/// conditional shift. Steps must be applied in order `1, 2, ..., T`.
pub fn evolve_step(state: &mut WalkerState, t: u32, theta: f64) -> Result<()> {
    if state.steps_done + 1 != t || t > state.capacity.get() {
        return Err(Error::StepOrder {
            expected: state.steps_done + 1,
            actual: t,
        });
    }
    let half = f64::from(t) * theta / 2.0;
    let (s, c) = half.sin_cos();
    let reach = i64::from(state.steps_done);
    let mut next = vec![Complex64::ZERO; state.amps.len()];
    for x in -reach..=reach {
        let a0 = state.amplitude(x, 0);
        let a1 = state.amplitude(x, 1);
        if a0 == Complex64::ZERO && a1 == Complex64::ZERO {
            continue;
        }
        let rotated0 = c * a0 - s * a1;
        let rotated1 = s * a0 + c * a1;
        next[state.index(x + 1, 0)] += rotated0;
        next[state.index(x - 1, 1)] += rotated1;
    }
    state.amps = next;
    state.steps_done = t;
    debug_assert!((state.norm_sq() - 1.0).abs() < 1e-12);
    Ok(())
}

/// Runs the full `T`-step protocol from the given initial coin state.
pub fn run_walk(steps: StepCount, theta: f64, spec: &InitialCoinSpec) -> WalkerState {
    let mut state = make_initial(spec, steps);
    for t in 1..=steps.get() {
        evolve_step(&mut state, t, theta).expect("steps applied in order");
    }
    state
}

/// Moments of a finished run next to the transport asymptote `L`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentReport {
    pub steps: u32,
    pub theta: f64,
    pub m1: f64,
    pub m2: f64,
    pub m2_over_t2: f64,
    pub l_value: f64,
    pub deviation: f64,
}

/// One scan entry: the requested initial state, a second independent one,
/// and the spread between their `M₂/T²` readings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentScanRow {
    pub primary: MomentReport,
    pub alternate: MomentReport,
    pub spread: f64,
}

fn report(steps: StepCount, theta: CoinAngle, state: &WalkerState) -> MomentReport {
    let m2 = state.moment(2);
    let t2 = steps.as_f64() * steps.as_f64();
    let m2_over_t2 = m2 / t2;
    let l_value = l_analytic(steps, theta);
    MomentReport {
        steps: steps.get(),
        theta: theta.value(),
        m1: state.moment(1),
        m2,
        m2_over_t2,
        l_value,
        deviation: (m2_over_t2 - l_value).abs(),
    }
}

fn nearest_gapless_distance(steps: StepCount, theta: f64) -> f64 {
    let spacing = std::f64::consts::TAU / steps.as_f64();
    let m = (theta / spacing).round();
    (theta - m * spacing).abs()
}

/// Runs the walk for every requested step count, pairing `M₂/T²` with the
/// asymptote `L(T, θ)`, for the given initial state and a second one
/// (`|0⟩`, or the symmetric default when `|0⟩` was requested) to probe how
/// little the second moment depends on the initial coin.
///
/// θ must stay at least [`M2_SCAN_GAPLESS_MARGIN`] away from every gapless
/// angle of every requested `T`; the exact boundary values 0 and 2π are
/// allowed, where the walk is ballistic and `M₂/T² = L = 1` (exactly at 0,
/// to rounding at 2π). Rows come back sorted by step count.
pub fn m2_scan(
    theta: CoinAngle,
    step_counts: &[StepCount],
    spec: &InitialCoinSpec,
) -> Result<Vec<MomentScanRow>> {
    let th = theta.value();
    let exact_boundary = th == 0.0 || th == std::f64::consts::TAU;
    if !exact_boundary {
        for &steps in step_counts {
            let distance = nearest_gapless_distance(steps, th);
            if distance < M2_SCAN_GAPLESS_MARGIN {
                return Err(Error::NearGapless {
                    steps: steps.get(),
                    theta: th,
                    distance,
                    margin: M2_SCAN_GAPLESS_MARGIN,
                });
            }
        }
    }
    let alternate_spec = if (spec.alpha() - Complex64::ONE).norm() < 1e-9
        && spec.beta().norm() < 1e-9
    {
        InitialCoinSpec::symmetric_default()
    } else {
        InitialCoinSpec::coin_up()
    };
    let mut counts = step_counts.to_vec();
    counts.sort();
    Ok(counts
        .into_iter()
        .map(|steps| {
            let primary = report(steps, theta, &run_walk(steps, th, spec));
            let alternate = report(steps, theta, &run_walk(steps, th, &alternate_spec));
            MomentScanRow {
                primary,
                alternate,
                spread: (primary.m2_over_t2 - alternate.m2_over_t2).abs(),
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI, TAU};

    fn steps(t: u32) -> StepCount {
        StepCount::new(t).unwrap()
    }

    const SQRT2_OVER_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn initial_spec_validation() {
        assert!(InitialCoinSpec::new(Complex64::ONE, Complex64::ZERO).is_ok());
        assert!(InitialCoinSpec::new(
            Complex64::new(SQRT2_OVER_2, 0.0),
            Complex64::new(0.0, SQRT2_OVER_2)
        )
        .is_ok());
        assert!(matches!(
            InitialCoinSpec::new(Complex64::ONE, Complex64::ONE),
            Err(Error::Normalization { .. })
        ));
    }

    #[test]
    fn make_initial_concentrates_at_origin() {
        let state = make_initial(&InitialCoinSpec::coin_up(), steps(3));
        assert_eq!(state.amplitude(0, 0), Complex64::ONE);
        assert_eq!(state.steps_done(), 0);
        assert_eq!(state.distribution(), vec![(0, 1.0)]);
        assert_eq!(state.moment(2), 0.0);
    }

    #[test]
    fn single_step_splits_evenly() {
        let mut state = make_initial(&InitialCoinSpec::coin_up(), steps(1));
        evolve_step(&mut state, 1, FRAC_PI_2).unwrap();
        assert!((state.amplitude(1, 0).re - SQRT2_OVER_2).abs() < 1e-15);
        assert!((state.amplitude(-1, 1).re - SQRT2_OVER_2).abs() < 1e-15);
        assert!((state.moment(2) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn second_step_refocuses() {
        // Step 2 uses coin parameter 2θ = π, i.e. the rotation [[0,-1],[1,0]].
        let mut state = make_initial(&InitialCoinSpec::coin_up(), steps(2));
        evolve_step(&mut state, 1, FRAC_PI_2).unwrap();
        evolve_step(&mut state, 2, FRAC_PI_2).unwrap();
        let p0 = state.amplitude(0, 0).norm_sqr() + state.amplitude(0, 1).norm_sqr();
        assert!((p0 - 1.0).abs() < 1e-12);
        assert_eq!(state.distribution().len(), 1);
        assert!(state.moment(2) < 1e-12);
    }

    #[test]
    fn step_order_is_enforced() {
        let mut state = make_initial(&InitialCoinSpec::coin_up(), steps(2));
        assert!(matches!(
            evolve_step(&mut state, 2, FRAC_PI_2),
            Err(Error::StepOrder {
                expected: 1,
                actual: 2
            })
        ));
        evolve_step(&mut state, 1, FRAC_PI_2).unwrap();
        assert!(matches!(
            evolve_step(&mut state, 1, FRAC_PI_2),
            Err(Error::StepOrder { .. })
        ));
    }

    #[test]
    fn run_walk_examples() {
        let state = run_walk(steps(1), FRAC_PI_2, &InitialCoinSpec::coin_up());
        assert_eq!(state.distribution().len(), 2);
        for (x, p) in state.distribution() {
            assert!(x.abs() == 1 && (p - 0.5).abs() < 1e-12);
        }
        assert!((state.moment(2) - 1.0).abs() < 1e-12);

        let state = run_walk(steps(2), FRAC_PI_2, &InitialCoinSpec::coin_up());
        assert_eq!(state.distribution(), {
            let d = state.distribution();
            assert_eq!(d.len(), 1);
            assert_eq!(d[0].0, 0);
            assert!((d[0].1 - 1.0).abs() < 1e-12);
            d
        });

        // Identity coin throughout: exactly ballistic.
        let state = run_walk(steps(2), 0.0, &InitialCoinSpec::coin_up());
        assert_eq!(state.amplitude(2, 0), Complex64::ONE);
        assert_eq!(state.distribution(), vec![(2, 1.0)]);
        assert_eq!(state.moment(2), 4.0);
    }

    #[test]
    fn m2_scan_guards_and_reports() {
        let spec = InitialCoinSpec::symmetric_default();
        // π/5 is a gapless angle of T=10.
        let err = m2_scan(
            CoinAngle::new(PI / 5.0).unwrap(),
            &[steps(10)],
            &spec,
        );
        assert!(matches!(err, Err(Error::NearGapless { .. })));

        let rows = m2_scan(
            CoinAngle::new(PI / 5.0 + 0.01).unwrap(),
            &[steps(20), steps(10)],
            &spec,
        )
        .unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0].primary.steps, 10);
        assert_eq!(rows[1].primary.steps, 20);
        for row in &rows {
            assert!(row.primary.m2 <= row.primary.steps.pow(2) as f64 + 1e-9);
            assert!(
                (row.primary.deviation
                    - (row.primary.m2_over_t2 - row.primary.l_value).abs())
                .abs()
                    < 1e-15
            );
        }

        // Exact boundary: ballistic, M₂/T² = L = 1.
        let rows = m2_scan(CoinAngle::new(0.0).unwrap(), &[steps(8)], &spec).unwrap();
        assert!((rows[0].primary.m2_over_t2 - 1.0).abs() < 1e-12);
        assert_eq!(rows[0].primary.l_value, 1.0);
        assert!(rows[0].primary.deviation < 1e-12);

        // π/5 is the c=0 flat-band angle of T=5 (and not gapless there):
        // L = 0 and the walker stays tight.
        let rows = m2_scan(CoinAngle::new(PI / 5.0).unwrap(), &[steps(5)], &spec).unwrap();
        assert!(rows[0].primary.l_value.abs() < 1e-12);
        assert!(
            rows[0].primary.m2_over_t2 < 0.5,
            "flat-band ratio {}",
            rows[0].primary.m2_over_t2
        );
    }

    #[test]
    fn scan_at_exact_upper_boundary() {
        let spec = InitialCoinSpec::coin_up();
        let rows = m2_scan(CoinAngle::new(TAU).unwrap(), &[steps(6)], &spec).unwrap();
        assert!((rows[0].primary.m2_over_t2 - 1.0).abs() < 1e-12);
        // The alternate spec for |0⟩ input is the symmetric default.
        assert!((rows[0].alternate.m2_over_t2 - 1.0).abs() < 1e-12);
    }
}
