//! Dense 2×2 complex matrices: the carrier for coin, shift, and step
//! unitaries, effective Hamiltonians, the chiral operator, and projectors.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::types::Vec3;

/// Row-major 2×2 complex matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Complex2x2 {
    pub a11: Complex64,
    pub a12: Complex64,
    pub a21: Complex64,
    pub a22: Complex64,
}

impl Complex2x2 {
    pub const fn new(a11: Complex64, a12: Complex64, a21: Complex64, a22: Complex64) -> Self {
        Self { a11, a12, a21, a22 }
    }

    pub fn from_rows(rows: [[Complex64; 2]; 2]) -> Self {
        Self::new(rows[0][0], rows[0][1], rows[1][0], rows[1][1])
    }

    /// Builds a matrix with real entries.
    pub fn from_real(a11: f64, a12: f64, a21: f64, a22: f64) -> Self {
        Self::new(
            Complex64::new(a11, 0.0),
            Complex64::new(a12, 0.0),
            Complex64::new(a21, 0.0),
            Complex64::new(a22, 0.0),
        )
    }

    pub fn identity() -> Self {
        Self::from_real(1.0, 0.0, 0.0, 1.0)
    }

    pub fn zero() -> Self {
        Self::from_real(0.0, 0.0, 0.0, 0.0)
    }

    pub fn sigma_x() -> Self {
        Self::from_real(0.0, 1.0, 1.0, 0.0)
    }

    pub fn sigma_y() -> Self {
        Self::new(
            Complex64::ZERO,
            Complex64::new(0.0, -1.0),
            Complex64::new(0.0, 1.0),
            Complex64::ZERO,
        )
    }

    pub fn sigma_z() -> Self {
        Self::from_real(1.0, 0.0, 0.0, -1.0)
    }

    /// `v · σ` for a real 3-vector `v`.
    pub fn pauli_dot(v: Vec3) -> Self {
        Self::new(
            Complex64::new(v[2], 0.0),
            Complex64::new(v[0], -v[1]),
            Complex64::new(v[0], v[1]),
            Complex64::new(-v[2], 0.0),
        )
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self::new(
            self.a11 * factor,
            self.a12 * factor,
            self.a21 * factor,
            self.a22 * factor,
        )
    }

    pub fn scale_re(&self, factor: f64) -> Self {
        self.scale(Complex64::new(factor, 0.0))
    }

    pub fn adjoint(&self) -> Self {
        Self::new(
            self.a11.conj(),
            self.a21.conj(),
            self.a12.conj(),
            self.a22.conj(),
        )
    }

    pub fn trace(&self) -> Complex64 {
        self.a11 + self.a22
    }

    pub fn det(&self) -> Complex64 {
        self.a11 * self.a22 - self.a12 * self.a21
    }

    pub fn inverse(&self) -> Option<Self> {
        let det = self.det();
        if det.norm() == 0.0 {
            return None;
        }
        let inv = det.inv();
        Some(Self::new(
            self.a22 * inv,
            -self.a12 * inv,
            -self.a21 * inv,
            self.a11 * inv,
        ))
    }

    /// Largest entrywise modulus; the norm used by all tolerance checks.
    pub fn max_abs(&self) -> f64 {
        self.a11
            .norm()
            .max(self.a12.norm())
            .max(self.a21.norm())
            .max(self.a22.norm())
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (*self - *other).max_abs()
    }

    /// Entrywise distance from unitarity, `max |U†U - I|`.
    pub fn unitarity_defect(&self) -> f64 {
        (self.adjoint() * *self).max_abs_diff(&Self::identity())
    }

    /// Entrywise distance from Hermiticity, `max |M - M†|`.
    pub fn hermiticity_defect(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }

    /// Eigenvalues by the characteristic polynomial, in an arbitrary order.
    pub fn eigenvalues(&self) -> (Complex64, Complex64) {
        let mean = self.trace() / 2.0;
        let disc = (mean * mean - self.det()).sqrt();
        (mean + disc, mean - disc)
    }

    /// A unit eigenvector for the given eigenvalue, chosen as the larger of
    /// the two columns of the adjugate of `self - λI`.
    fn unit_eigenvector(&self, lambda: Complex64) -> [Complex64; 2] {
        let c1 = [self.a12, lambda - self.a11];
        let c2 = [lambda - self.a22, self.a21];
        let n1 = c1[0].norm_sqr() + c1[1].norm_sqr();
        let n2 = c2[0].norm_sqr() + c2[1].norm_sqr();
        let v = if n1 >= n2 { c1 } else { c2 };
        let norm = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
        [v[0] / norm, v[1] / norm]
    }

    /// Principal matrix logarithm of a normal matrix with distinct
    /// eigenvalues, via the spectral projectors of an orthonormal eigenbasis.
    /// Eigenphases land in `(-π, π]`. Returns `None` when the eigenvalues are
    /// closer than `degeneracy_tol`.
    pub fn principal_log_normal(&self, degeneracy_tol: f64) -> Option<Self> {
        let (l1, l2) = self.eigenvalues();
        if (l1 - l2).norm() < degeneracy_tol {
            return None;
        }
        let v = self.unit_eigenvector(l1);
        // For a normal matrix the second eigenspace is the orthogonal
        // complement of the first.
        let w = [-v[1].conj(), v[0].conj()];
        let p1 = projector(v);
        let p2 = projector(w);
        let log1 = Complex64::new(l1.norm().ln(), l1.arg());
        let log2 = Complex64::new(l2.norm().ln(), l2.arg());
        Some(p1.scale(log1) + p2.scale(log2))
    }
}

fn projector(v: [Complex64; 2]) -> Complex2x2 {
    Complex2x2::new(
        v[0] * v[0].conj(),
        v[0] * v[1].conj(),
        v[1] * v[0].conj(),
        v[1] * v[1].conj(),
    )
}

impl Add for Complex2x2 {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(
            self.a11 + rhs.a11,
            self.a12 + rhs.a12,
            self.a21 + rhs.a21,
            self.a22 + rhs.a22,
        )
    }
}

impl Sub for Complex2x2 {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(
            self.a11 - rhs.a11,
            self.a12 - rhs.a12,
            self.a21 - rhs.a21,
            self.a22 - rhs.a22,
        )
    }
}

impl Mul for Complex2x2 {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self::new(
            self.a11 * rhs.a11 + self.a12 * rhs.a21,
            self.a11 * rhs.a12 + self.a12 * rhs.a22,
            self.a21 * rhs.a11 + self.a22 * rhs.a21,
            self.a21 * rhs.a12 + self.a22 * rhs.a22,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn pauli_algebra() {
        let x = Complex2x2::sigma_x();
        let y = Complex2x2::sigma_y();
        let z = Complex2x2::sigma_z();
        let i = Complex64::i();
        assert_eq!(x * x, Complex2x2::identity());
        assert!((x * y).max_abs_diff(&z.scale(i)) < 1e-15);
        assert!((y * z).max_abs_diff(&x.scale(i)) < 1e-15);
    }

    #[test]
    fn inverse_roundtrip() {
        let m = Complex2x2::new(
            Complex64::new(1.0, 2.0),
            Complex64::new(0.5, -1.0),
            Complex64::new(-0.25, 0.0),
            Complex64::new(2.0, 1.0),
        );
        let inv = m.inverse().unwrap();
        assert!((m * inv).max_abs_diff(&Complex2x2::identity()) < 1e-14);
        assert!(Complex2x2::zero().inverse().is_none());
    }

    #[test]
    fn principal_log_of_diagonal_unitary() {
        // diag(i, -i) has eigenphases ±π/2.
        let u = Complex2x2::new(
            Complex64::i(),
            Complex64::ZERO,
            Complex64::ZERO,
            -Complex64::i(),
        );
        let log = u.principal_log_normal(1e-12).unwrap();
        let want = Complex2x2::new(
            Complex64::new(0.0, FRAC_PI_2),
            Complex64::ZERO,
            Complex64::ZERO,
            Complex64::new(0.0, -FRAC_PI_2),
        );
        assert!(log.max_abs_diff(&want) < 1e-15);
    }

    #[test]
    fn principal_log_rejects_degenerate() {
        assert!(Complex2x2::identity().principal_log_normal(1e-12).is_none());
        let minus_i = Complex2x2::identity().scale_re(-1.0);
        assert!(minus_i.principal_log_normal(1e-12).is_none());
    }

    #[test]
    fn eigenvector_matches_eigenvalue() {
        let m = Complex2x2::pauli_dot([0.6, 0.0, 0.8]);
        let (l1, _) = m.eigenvalues();
        let v = m.unit_eigenvector(l1);
        let mv = [
            m.a11 * v[0] + m.a12 * v[1],
            m.a21 * v[0] + m.a22 * v[1],
        ];
        assert!((mv[0] - l1 * v[0]).norm() < 1e-14);
        assert!((mv[1] - l1 * v[1]).norm() < 1e-14);
    }
}
