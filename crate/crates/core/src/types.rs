//! Validated domain scalars and small real-vector helpers.

use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};

/// Number of steps `T ≥ 1` of the walk protocol; also sets the coin's step
/// dependency, since the step-`T` band structure is driven by the angle `Tθ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StepCount(u32);

impl StepCount {
    pub fn new(steps: u32) -> Result<Self> {
        if steps == 0 {
            return Err(Error::InvalidStepCount);
        }
        Ok(Self(steps))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    pub fn as_f64(self) -> f64 {
        f64::from(self.0)
    }
}

/// Coin rotation parameter θ, restricted to `[0, 2π]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct CoinAngle(f64);

impl CoinAngle {
    pub fn new(theta: f64) -> Result<Self> {
        if !theta.is_finite() {
            return Err(Error::NonFinite {
                name: "theta",
                value: theta,
            });
        }
        if !(0.0..=TAU).contains(&theta) {
            return Err(Error::AngleOutOfRange { theta });
        }
        Ok(Self(theta))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Quasi-momentum reduced to the first Brillouin zone `[-π, π)`.
///
/// The constructor folds any finite angle into the zone; all momentum-space
/// quantities in this crate are 2π-periodic, so the fold is exact up to the
/// rounding of the subtraction.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Momentum(f64);

impl Momentum {
    pub fn new(k: f64) -> Result<Self> {
        if !k.is_finite() {
            return Err(Error::NonFinite { name: "k", value: k });
        }
        let mut folded = k - TAU * ((k + PI) / TAU).floor();
        if folded >= PI {
            folded -= TAU;
        }
        if folded < -PI {
            folded += TAU;
        }
        Ok(Self(folded))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Half the protocol angle, `α = Tθ/2`; every band-structure formula is a
/// trigonometric polynomial in this quantity and `k`.
pub(crate) fn half_protocol_angle(steps: StepCount, theta: CoinAngle) -> f64 {
    steps.as_f64() * theta.value() / 2.0
}

/// Real 3-vectors used for the Bloch vector and the chiral axis.
pub type Vec3 = [f64; 3];

pub fn dot(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn cross(a: Vec3, b: Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub fn norm(a: Vec3) -> f64 {
    dot(a, a).sqrt()
}
