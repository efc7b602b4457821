//! Error type shared by all modules of the crate.

/// Errors produced by domain-type construction, spectral decomposition at
/// band touchings, and the walk evolution.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// Coin angle outside the admissible interval `[0, 2π]`.
    #[error("coin angle {theta} is outside [0, 2pi]")]
    AngleOutOfRange { theta: f64 },

    /// Step counts start at 1.
    #[error("step count must be at least 1")]
    InvalidStepCount,

    /// A floating-point input was NaN or infinite.
    #[error("{name} must be finite, got {value}")]
    NonFinite { name: &'static str, value: f64 },

    /// The two quasi-energy bands touch at this `(T, θ, k)`; the Bloch
    /// vector and the effective Hamiltonian are undefined there.
    #[error("bands are degenerate at (T={steps}, theta={theta}, k={k}); sin E = {sin_energy:.3e}")]
    DegeneratePoint {
        steps: u32,
        theta: f64,
        k: f64,
        sin_energy: f64,
    },

    /// θ sits on a phase boundary `2πm/T`, where the winding number is
    /// ill-defined for every branch of the spectrum.
    #[error("theta = {theta} is a gapless angle of the T={steps} protocol; winding is ill-defined")]
    GaplessAngle { steps: u32, theta: f64 },

    /// The winding integral failed to land on an admissible integer, which
    /// signals an implementation bug or an under-resolved discretization.
    #[error("winding integral {value} at (T={steps}, theta={theta}) is not within 1e-3 of -1 or +1")]
    NonIntegerWinding { steps: u32, theta: f64, value: f64 },

    /// Initial coin amplitudes must satisfy `|α|² + |β|² = 1`.
    #[error("initial coin state is not normalized: |alpha|^2 + |beta|^2 = {norm_sq}")]
    Normalization { norm_sq: f64 },

    /// Steps must be applied in order `t = 1, 2, ..., T`.
    #[error("walk steps must be applied in order: expected step {expected}, got {actual}")]
    StepOrder { expected: u32, actual: u32 },

    /// The spreading asymptote is ill-behaved next to a phase transition;
    /// moment scans refuse θ closer than the stated margin to any gapless
    /// angle of the requested step counts.
    #[error(
        "theta = {theta} is only {distance:.3e} away from a gapless angle of T={steps} (need >= {margin:.0e})"
    )]
    NearGapless {
        steps: u32,
        theta: f64,
        distance: f64,
        margin: f64,
    },

    /// Quadrature resolutions below 2 cannot even form one trapezoid.
    #[error("resolution {resolution} is too small (need >= 2)")]
    Resolution { resolution: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
