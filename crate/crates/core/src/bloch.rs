//! Momentum-space construction of the step unitary and its spectral data:
//! quasi-energy bands, Bloch vector, chiral symmetry, and the effective
//! Hamiltonian, for the walk whose step-`T` coin angle is `Tθ`.
//!
//! Conventions used throughout:
//! - only the positive band `E ∈ [0, π]` is stored; the negative band is
//!   its negation,
//! - the Bloch vector is the unit vector with `U = cos E · I - i sin E (n·σ)`,
//! - a point counts as gapless when `sin E ≤ GAPLESS_TOLERANCE`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::Complex2x2;
use crate::types::{half_protocol_angle, CoinAngle, Momentum, StepCount, Vec3};
use crate::GAPLESS_TOLERANCE;

/// Positive-branch quasi-energy together with the Bloch vector of the
/// effective Hamiltonian `H = E n·σ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochDecomposition {
    /// Quasi-energy in `[0, π]`.
    pub energy: f64,
    /// Unit Bloch vector `(n_x, n_y, n_z)`.
    pub n: Vec3,
}

/// The fixed unit vector perpendicular to `n(k)` for every momentum; the
/// chiral operator is `Γ = A·σ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChiralAxis {
    pub axis: Vec3,
}

impl ChiralAxis {
    pub fn vector(self) -> Vec3 {
        self.axis
    }
}

/// Coin rotation at step `T`: the real rotation by half of `Tθ`,
/// `[[cos(Tθ/2), -sin(Tθ/2)], [sin(Tθ/2), cos(Tθ/2)]] = exp(-i Tθ σ_y / 2)`.
pub fn coin_unitary(steps: StepCount, theta: CoinAngle) -> Complex2x2 {
    let alpha = half_protocol_angle(steps, theta);
    let (s, c) = alpha.sin_cos();
    Complex2x2::from_real(c, -s, s, c)
}

/// Spin-conditioned translation in momentum representation,
/// `diag(e^{ik}, e^{-ik}) = exp(i k σ_z)`.
pub fn shift_unitary(k: Momentum) -> Complex2x2 {
    let phase = Complex64::from_polar(1.0, k.value());
    Complex2x2::new(phase, Complex64::ZERO, Complex64::ZERO, phase.conj())
}

/// One application of the protocol at step `T`, `U(k) = S(k) C(Tθ)`.
pub fn step_unitary(steps: StepCount, theta: CoinAngle, k: Momentum) -> Complex2x2 {
    shift_unitary(k) * coin_unitary(steps, theta)
}

/// `cos E = cos(Tθ/2) cos k`, the trace identity behind the dispersion.
fn band_cosine(steps: StepCount, theta: CoinAngle, k: Momentum) -> f64 {
    let alpha = half_protocol_angle(steps, theta);
    (alpha.cos() * k.value().cos()).clamp(-1.0, 1.0)
}

/// Positive quasi-energy band, `E(k) = arccos[cos(Tθ/2) cos k] ∈ [0, π]`.
/// Even in `k`; the negative band is `-E(k)`.
pub fn quasi_energy(steps: StepCount, theta: CoinAngle, k: Momentum) -> f64 {
    band_cosine(steps, theta, k).acos()
}

/// `sin E ≥ 0`; the band gap at `(θ, k)` in units where the touchings
/// `E = 0` and `E = ±π` both map to zero.
///
/// Computed from `sin²E = sin²(Tθ/2) + cos²(Tθ/2) sin²k`, a sum of
/// non-negative terms, rather than `1 - cos²E`, which cancels
/// catastrophically next to a touching.
pub fn sin_quasi_energy(steps: StepCount, theta: CoinAngle, k: Momentum) -> f64 {
    let alpha = half_protocol_angle(steps, theta);
    let (s, c) = alpha.sin_cos();
    let sin_k = k.value().sin();
    (s * s + c * c * sin_k * sin_k).sqrt()
}

fn degenerate(steps: StepCount, theta: CoinAngle, k: Momentum, sin_energy: f64) -> Error {
    Error::DegeneratePoint {
        steps: steps.get(),
        theta: theta.value(),
        k: k.value(),
        sin_energy,
    }
}

/// Spectral decomposition of the step unitary at a non-gapless point:
/// `U = cos E · I - i sin E (n·σ)` with
/// `n = (sin(Tθ/2) sin k, sin(Tθ/2) cos k, -cos(Tθ/2) sin k) / sin E`.
pub fn bloch_vector(
    steps: StepCount,
    theta: CoinAngle,
    k: Momentum,
) -> Result<BlochDecomposition> {
    let sin_e = sin_quasi_energy(steps, theta, k);
    if sin_e <= GAPLESS_TOLERANCE {
        return Err(degenerate(steps, theta, k, sin_e));
    }
    let alpha = half_protocol_angle(steps, theta);
    let (s, c) = alpha.sin_cos();
    let (sin_k, cos_k) = k.value().sin_cos();
    Ok(BlochDecomposition {
        energy: quasi_energy(steps, theta, k),
        n: [s * sin_k / sin_e, s * cos_k / sin_e, -c * sin_k / sin_e],
    })
}

/// The momentum-independent axis `A = (cos(Tθ/2), 0, sin(Tθ/2))`.
pub fn chiral_axis(steps: StepCount, theta: CoinAngle) -> ChiralAxis {
    let alpha = half_protocol_angle(steps, theta);
    let (s, c) = alpha.sin_cos();
    ChiralAxis { axis: [c, 0.0, s] }
}

/// Chiral operator `Γ = A·σ`; Hermitian, squares to the identity, and
/// anticommutes with the effective Hamiltonian at every non-gapless `k`.
pub fn chiral_operator(steps: StepCount, theta: CoinAngle) -> Complex2x2 {
    Complex2x2::pauli_dot(chiral_axis(steps, theta).vector())
}

/// Closed-form effective Hamiltonian `H = E n·σ`, i.e. `ε` times
/// `[[-sin k cos(Tθ/2), sin(Tθ/2)(sin k - i cos k)],
///   [sin(Tθ/2)(sin k + i cos k), sin k cos(Tθ/2)]]`
/// with `ε = E / sin E`. Hermitian and traceless, with eigenvalues `±E`.
pub fn effective_hamiltonian(
    steps: StepCount,
    theta: CoinAngle,
    k: Momentum,
) -> Result<Complex2x2> {
    let sin_e = sin_quasi_energy(steps, theta, k);
    if sin_e <= GAPLESS_TOLERANCE {
        return Err(degenerate(steps, theta, k, sin_e));
    }
    let eps = quasi_energy(steps, theta, k) / sin_e;
    let alpha = half_protocol_angle(steps, theta);
    let (s, c) = alpha.sin_cos();
    let (sin_k, cos_k) = k.value().sin_cos();
    let diag = eps * c * sin_k;
    let off = Complex64::new(eps * s * sin_k, -eps * s * cos_k);
    Ok(Complex2x2::new(
        Complex64::new(-diag, 0.0),
        off,
        off.conj(),
        Complex64::new(diag, 0.0),
    ))
}

/// Orthogonal sublattice projectors `P_A = (I + Γ)/2` and `P_B = (I - Γ)/2`.
pub fn sublattice_projectors(steps: StepCount, theta: CoinAngle) -> (Complex2x2, Complex2x2) {
    let gamma = chiral_operator(steps, theta);
    let id = Complex2x2::identity();
    ((id + gamma).scale_re(0.5), (id - gamma).scale_re(0.5))
}

/// Independent numerical route to the effective Hamiltonian: `H = i ln U(k)`
/// by eigendecomposition of the step unitary with the principal branch
/// (eigenphases in `(-π, π]`), so the eigenvalues come out as `{+E, -E}`.
///
/// This path shares no closed-form dispersion or Bloch-vector algebra with
/// [`effective_hamiltonian`]; it serves as its oracle.
pub fn hamiltonian_log_oracle(
    steps: StepCount,
    theta: CoinAngle,
    k: Momentum,
) -> Result<Complex2x2> {
    let u = step_unitary(steps, theta, k);
    // Eigenvalues e^{∓iE} are 2 sin E apart.
    let log = u
        .principal_log_normal(2.0 * GAPLESS_TOLERANCE)
        .ok_or_else(|| degenerate(steps, theta, k, sin_quasi_energy(steps, theta, k)))?;
    Ok(log.scale(Complex64::i()))
}
