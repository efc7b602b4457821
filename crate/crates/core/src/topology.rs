//! Topological characterization of the walk: winding numbers, gapless-point
//! enumeration and classification, phase diagrams over θ for a given step
//! count, the group velocity, and the transport asymptote
//! `L = ∫ V(k)² dk/2π = 1 - |sin(Tθ/2)|`.
//!
//! The θ axis `[0, 2π]` splits into `T` open intervals `(2πm/T, 2π(m+1)/T)`
//! of constant winding number, separated by the `T + 1` gapless angles
//! `2πm/T`. Everything here is closed-form; the quadrature routines exist as
//! independent oracles for the closed forms.

use std::f64::consts::{PI, TAU};

use crate::bloch::{chiral_axis, sin_quasi_energy};
use crate::error::{Error, Result};
use crate::types::{cross, dot, half_protocol_angle, CoinAngle, Momentum, StepCount, Vec3};
use crate::GAPLESS_TOLERANCE;

/// Positive (`E`) or negative (`-E`) quasi-energy band.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Band {
    Plus,
    Minus,
}

impl Band {
    fn sign(self) -> f64 {
        match self {
            Band::Plus => 1.0,
            Band::Minus => -1.0,
        }
    }
}

/// Energy at which a pair of bands touches: `E = 0` or `E = ±π`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GapClosing {
    EnergyZero,
    EnergyPi,
}

impl GapClosing {
    /// Stable wire label: `"E0"` or `"Epi"`.
    pub fn label(self) -> &'static str {
        match self {
            GapClosing::EnergyZero => "E0",
            GapClosing::EnergyPi => "Epi",
        }
    }
}

/// A phase boundary `θ = 2πm/T`, with the band-touching energy at `k = 0`
/// and at `k = ±π`. Even `m` closes at `(k=0, E=0)` and `(k=±π, E=π)`;
/// odd `m` the reverse.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaplessPoint {
    pub theta: f64,
    pub index_m: u32,
    pub closing_at_k0: GapClosing,
    pub closing_at_kpi: GapClosing,
}

/// One topological phase: the open θ-interval `(2πm/T, 2π(m+1)/T)` with its
/// winding number and the gapless points bounding it.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseRegion {
    pub index_m: u32,
    pub theta_min: f64,
    pub theta_max: f64,
    pub winding: i32,
    pub left_boundary: GaplessPoint,
    pub right_boundary: GaplessPoint,
}

impl PhaseRegion {
    pub fn midpoint(&self) -> f64 {
        0.5 * (self.theta_min + self.theta_max)
    }
}

/// The full phase structure at step count `T`: `T` regions separated by
/// `T + 1` gapless angles.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseDiagram {
    pub steps: StepCount,
    pub regions: Vec<PhaseRegion>,
    pub gapless: Vec<GaplessPoint>,
}

/// True when θ lies on a phase boundary `2πm/T`, within 1e-9 in units of
/// the boundary spacing: the exact lattice test used everywhere a gapless
/// angle must be recognized.
pub fn is_gapless_angle(steps: StepCount, theta: CoinAngle) -> bool {
    let ratio = theta.value() * steps.as_f64() / TAU;
    (ratio - ratio.round()).abs() < 1e-9
}

/// Group velocity `dE/dk` of the chosen band,
/// `±cos(Tθ/2) sin k / sqrt(1 - [cos(Tθ/2) cos k]²)`, clamped into `[-1, 1]`.
pub fn group_velocity(
    steps: StepCount,
    theta: CoinAngle,
    k: Momentum,
    band: Band,
) -> Result<f64> {
    let sin_e = sin_quasi_energy(steps, theta, k);
    if sin_e <= GAPLESS_TOLERANCE {
        return Err(Error::DegeneratePoint {
            steps: steps.get(),
            theta: theta.value(),
            k: k.value(),
            sin_energy: sin_e,
        });
    }
    let alpha = half_protocol_angle(steps, theta);
    let v = alpha.cos() * k.value().sin() / sin_e;
    Ok(band.sign() * v.clamp(-1.0, 1.0))
}

/// Winding number of the Bloch vector around the chiral axis, by trapezoid
/// discretization of `∮ (n × dn/dk) · A dk/2π` over the Brillouin zone with
/// the analytic derivative `dn/dk`.
///
/// Resolutions of 256 and above resolve every interior point of a phase
/// region to far better than 1e-6; lower values may fail the built-in
/// integrality check.
pub fn winding_integral(steps: StepCount, theta: CoinAngle, resolution: usize) -> Result<f64> {
    if resolution < 2 {
        return Err(Error::Resolution { resolution });
    }
    if is_gapless_angle(steps, theta) {
        return Err(Error::GaplessAngle {
            steps: steps.get(),
            theta: theta.value(),
        });
    }
    let alpha = half_protocol_angle(steps, theta);
    let (s, c) = alpha.sin_cos();
    let axis = chiral_axis(steps, theta).vector();
    let n_samples = resolution as f64;
    let mut sum = 0.0;
    for j in 0..resolution {
        let k = -PI + TAU * (j as f64) / n_samples;
        let (sk, ck) = k.sin_cos();
        let d2 = s * s + c * c * sk * sk;
        let d = d2.sqrt();
        let raw: Vec3 = [s * sk, s * ck, -c * sk];
        let raw_prime: Vec3 = [s * ck, -s * sk, -c * ck];
        let d_prime = c * c * sk * ck / d;
        let n = [raw[0] / d, raw[1] / d, raw[2] / d];
        let n_prime = [
            raw_prime[0] / d - raw[0] * d_prime / d2,
            raw_prime[1] / d - raw[1] * d_prime / d2,
            raw_prime[2] / d - raw[2] * d_prime / d2,
        ];
        sum += dot(cross(n, n_prime), axis);
    }
    let value = sum / n_samples;
    let rounded = value.round();
    if (value - rounded).abs() > 1e-3 || rounded.abs() != 1.0 {
        return Err(Error::NonIntegerWinding {
            steps: steps.get(),
            theta: theta.value(),
            value,
        });
    }
    Ok(value)
}

/// Closed-form winding number of the phase containing θ: `-1` when
/// `m = floor(θT/2π)` is even, `+1` when odd. No integration.
pub fn winding_rule(steps: StepCount, theta: CoinAngle) -> Result<i32> {
    let m = phase_index(steps, theta)?;
    Ok(if m % 2 == 0 { -1 } else { 1 })
}

/// Index `m = floor(θT/2π)` of the phase region containing θ, in `[0, T-1]`.
pub fn phase_index(steps: StepCount, theta: CoinAngle) -> Result<u32> {
    if is_gapless_angle(steps, theta) {
        return Err(Error::GaplessAngle {
            steps: steps.get(),
            theta: theta.value(),
        });
    }
    let raw = (theta.value() * steps.as_f64() / TAU).floor();
    Ok((raw.max(0.0) as u32).min(steps.get() - 1))
}

/// The `T + 1` gapless angles `θ_m = 2πm/T`, `m = 0..=T`, each classified by
/// the parity rule for where the gap closes.
pub fn gapless_angles(steps: StepCount) -> Vec<GaplessPoint> {
    (0..=steps.get())
        .map(|m| {
            let (k0, kpi) = if m % 2 == 0 {
                (GapClosing::EnergyZero, GapClosing::EnergyPi)
            } else {
                (GapClosing::EnergyPi, GapClosing::EnergyZero)
            };
            GaplessPoint {
                theta: boundary_angle(steps, m),
                index_m: m,
                closing_at_k0: k0,
                closing_at_kpi: kpi,
            }
        })
        .collect()
}

/// `2πm/T`, evaluated as `2π · (m/T)` so the `m = T` endpoint is exactly 2π
/// and no interior angle rounds past it.
fn boundary_angle(steps: StepCount, m: u32) -> f64 {
    TAU * (f64::from(m) / steps.as_f64())
}

/// All angles in `[0, 2π]` with `cos(Tθ/2) = 0`, i.e. `θ = (π + 2πc)/T` for
/// `c = 0..=c_max`; there the dispersion is flat at `E = π/2` and the group
/// velocity vanishes identically.
pub fn flat_band_angles(steps: StepCount, c_max: u32) -> Vec<f64> {
    let t = steps.as_f64();
    (0..=c_max)
        .map(|c| (PI + TAU * f64::from(c)) / t)
        .take_while(|&theta| theta <= TAU)
        .collect()
}

/// Assembles the `T` phase regions between consecutive gapless angles, with
/// windings from the parity rule.
pub fn phase_diagram(steps: StepCount) -> PhaseDiagram {
    let gapless = gapless_angles(steps);
    let regions = (0..steps.get())
        .map(|m| {
            let left = gapless[m as usize];
            let right = gapless[m as usize + 1];
            PhaseRegion {
                index_m: m,
                theta_min: left.theta,
                theta_max: right.theta,
                winding: if m % 2 == 0 { -1 } else { 1 },
                left_boundary: left,
                right_boundary: right,
            }
        })
        .collect();
    PhaseDiagram {
        steps,
        regions,
        gapless,
    }
}

/// Re-derives every region's winding from [`winding_integral`] at the region
/// midpoint and returns the largest `|integral - rule|` observed.
pub fn verify_windings(diagram: &PhaseDiagram, resolution: usize) -> Result<f64> {
    let mut max_dev = 0.0_f64;
    for region in &diagram.regions {
        let theta = CoinAngle::new(region.midpoint())?;
        let integral = winding_integral(diagram.steps, theta, resolution)?;
        max_dev = max_dev.max((integral - f64::from(region.winding)).abs());
    }
    Ok(max_dev)
}

/// Second-moment asymptote `L = 1 - |sin(Tθ/2)|`: the Brillouin-zone average
/// of `V²`. Equals 1 exactly at gapless angles and 0 at flat-band angles.
pub fn l_analytic(steps: StepCount, theta: CoinAngle) -> f64 {
    1.0 - half_protocol_angle(steps, theta).sin().abs()
}

/// Trapezoid quadrature of `∫ V(k)² dk/2π` over `[-π, π)`; the independent
/// oracle for [`l_analytic`]. Gapless k-points contribute their finite limit
/// `V² → 1`. Panics when `resolution < 2`.
pub fn l_quadrature(steps: StepCount, theta: CoinAngle, resolution: usize) -> f64 {
    assert!(resolution >= 2, "quadrature needs at least 2 samples");
    let alpha = half_protocol_angle(steps, theta);
    let (s, c) = alpha.sin_cos();
    let n_samples = resolution as f64;
    let mut sum = 0.0;
    for j in 0..resolution {
        let k = -PI + TAU * (j as f64) / n_samples;
        let sk = k.sin();
        let num = c * c * sk * sk;
        let d2 = s * s + num;
        sum += if d2.sqrt() <= GAPLESS_TOLERANCE {
            1.0
        } else {
            num / d2
        };
    }
    sum / n_samples
}

/// Angles where `dL/dθ` jumps: the kinks of `1 - |sin(Tθ/2)|` sit exactly on
/// the gapless lattice `2πm/T`.
pub fn transition_points(steps: StepCount) -> Vec<f64> {
    // Kinks of |sin(Tθ/2)| are the roots Tθ/2 = mπ.
    let kinks: Vec<f64> = (0..=steps.get())
        .map(|m| boundary_angle(steps, m))
        .collect();
    let boundaries = gapless_angles(steps);
    assert_eq!(kinks.len(), boundaries.len());
    for (kink, boundary) in kinks.iter().zip(&boundaries) {
        assert!((kink - boundary.theta).abs() < 1e-12);
    }
    kinks
}
