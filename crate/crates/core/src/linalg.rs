//! Fixed-size complex 2x2 matrix arithmetic.
//!
//! Everything in the crate lives in two complex dimensions, so a dedicated
//! row-major `Mat2` is cheaper and more transparent than a general matrix
//! library. Eigenvalues use the closed-form quadratic.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Row-major complex 2x2 matrix. Serialized as nested `[[re, im], ...]` rows.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Mat2(pub [[Complex64; 2]; 2]);

impl Mat2 {
    pub const fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Self {
        Mat2([[a, b], [c, d]])
    }

    pub const fn identity() -> Self {
        Mat2::new(ONE, ZERO, ZERO, ONE)
    }

    pub const fn zero() -> Self {
        Mat2::new(ZERO, ZERO, ZERO, ZERO)
    }

    pub fn diag(a: Complex64, d: Complex64) -> Self {
        Mat2::new(a, ZERO, ZERO, d)
    }

    pub fn from_real(rows: [[f64; 2]; 2]) -> Self {
        Mat2([
            [c(rows[0][0], 0.0), c(rows[0][1], 0.0)],
            [c(rows[1][0], 0.0), c(rows[1][1], 0.0)],
        ])
    }

    /// `u v^T` (no conjugation).
    pub fn outer(u: [Complex64; 2], v: [Complex64; 2]) -> Self {
        Mat2([[u[0] * v[0], u[0] * v[1]], [u[1] * v[0], u[1] * v[1]]])
    }

    #[inline]
    pub fn get(&self, r: usize, col: usize) -> Complex64 {
        self.0[r][col]
    }

    pub fn det(&self) -> Complex64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    pub fn trace(&self) -> Complex64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn transpose(&self) -> Self {
        Mat2::new(self.0[0][0], self.0[1][0], self.0[0][1], self.0[1][1])
    }

    pub fn conj(&self) -> Self {
        Mat2::new(
            self.0[0][0].conj(),
            self.0[0][1].conj(),
            self.0[1][0].conj(),
            self.0[1][1].conj(),
        )
    }

    pub fn adjoint(&self) -> Self {
        self.conj().transpose()
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Mat2::new(self.0[0][0] * s, self.0[0][1] * s, self.0[1][0] * s, self.0[1][1] * s)
    }

    pub fn inverse(&self) -> Option<Self> {
        let det = self.det();
        if det.norm() == 0.0 {
            return None;
        }
        let inv = det.inv();
        Some(Mat2::new(
            self.0[1][1] * inv,
            -self.0[0][1] * inv,
            -self.0[1][0] * inv,
            self.0[0][0] * inv,
        ))
    }

    pub fn apply(&self, v: [Complex64; 2]) -> [Complex64; 2] {
        [
            self.0[0][0] * v[0] + self.0[0][1] * v[1],
            self.0[1][0] * v[0] + self.0[1][1] * v[1],
        ]
    }

    /// Row vector times matrix: `v^T M`.
    pub fn apply_left(&self, v: [Complex64; 2]) -> [Complex64; 2] {
        [
            v[0] * self.0[0][0] + v[1] * self.0[1][0],
            v[0] * self.0[0][1] + v[1] * self.0[1][1],
        ]
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Mat2) -> f64 {
        (*self - *other).max_abs()
    }

    pub fn hermiticity_defect(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }

    /// Eigenvalues from the characteristic polynomial, ordered with the
    /// smaller real part first.
    pub fn eigenvalues(&self) -> [Complex64; 2] {
        let half_tr = self.trace() * 0.5;
        let disc = (half_tr * half_tr - self.det()).sqrt();
        let (a, b) = (half_tr - disc, half_tr + disc);
        if a.re <= b.re {
            [a, b]
        } else {
            [b, a]
        }
    }

    /// Elementwise (Frobenius) pairing `sum_ij A_ij B_ij`, no conjugation.
    pub fn pair(&self, other: &Mat2) -> Complex64 {
        let mut s = ZERO;
        for r in 0..2 {
            for col in 0..2 {
                s += self.0[r][col] * other.0[r][col];
            }
        }
        s
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, o: Mat2) -> Mat2 {
        Mat2::new(
            self.0[0][0] + o.0[0][0],
            self.0[0][1] + o.0[0][1],
            self.0[1][0] + o.0[1][0],
            self.0[1][1] + o.0[1][1],
        )
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, o: Mat2) -> Mat2 {
        self + (-o)
    }
}

impl Neg for Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        self.scale(-ONE)
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        let a = &self.0;
        let b = &o.0;
        Mat2::new(
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        )
    }
}

impl Mul<Complex64> for Mat2 {
    type Output = Mat2;
    fn mul(self, s: Complex64) -> Mat2 {
        self.scale(s)
    }
}

impl Mul<f64> for Mat2 {
    type Output = Mat2;
    fn mul(self, s: f64) -> Mat2 {
        self.scale(c(s, 0.0))
    }
}

/// Pauli matrices `sigma_1, sigma_2, sigma_3`.
pub fn pauli(k: usize) -> Mat2 {
    match k {
        1 => Mat2::new(ZERO, ONE, ONE, ZERO),
        2 => Mat2::new(ZERO, -I, I, ZERO),
        3 => Mat2::new(ONE, ZERO, ZERO, -ONE),
        _ => panic!("pauli index {k} out of range 1..=3"),
    }
}

pub fn vec_max_abs_diff(a: [Complex64; 2], b: [Complex64; 2]) -> f64 {
    (a[0] - b[0]).norm().max((a[1] - b[1]).norm())
}

pub fn vec_norm(v: [Complex64; 2]) -> f64 {
    (v[0].norm_sqr() + v[1].norm_sqr()).sqrt()
}

pub fn vec_scale(v: [Complex64; 2], s: Complex64) -> [Complex64; 2] {
    [v[0] * s, v[1] * s]
}

pub fn vec_add(a: [Complex64; 2], b: [Complex64; 2]) -> [Complex64; 2] {
    [a[0] + b[0], a[1] + b[1]]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pauli_algebra() {
        for k in 1..=3 {
            let s = pauli(k);
            assert!((s * s).max_abs_diff(&Mat2::identity()) < 1e-15);
            assert!(s.hermiticity_defect() < 1e-15);
            assert!(s.trace().norm() < 1e-15);
        }
        // sigma_1 sigma_2 = i sigma_3
        assert!((pauli(1) * pauli(2)).max_abs_diff(&(pauli(3) * I)) < 1e-15);
    }

    #[test]
    fn inverse_and_eigenvalues() {
        let m = Mat2::new(c(2.0, 1.0), c(0.5, 0.0), c(-1.0, 0.3), c(0.0, -2.0));
        let inv = m.inverse().unwrap();
        assert!((m * inv).max_abs_diff(&Mat2::identity()) < 1e-14);
        let [a, b] = m.eigenvalues();
        assert!((a + b - m.trace()).norm() < 1e-14);
        assert!((a * b - m.det()).norm() < 1e-14);
        assert!(Mat2::zero().inverse().is_none());
    }

    #[test]
    fn left_application_is_transpose_action() {
        let m = Mat2::new(c(1.0, 2.0), c(3.0, 0.0), c(0.0, -1.0), c(4.0, 4.0));
        let v = [c(0.5, 0.5), c(-1.0, 2.0)];
        assert!(vec_max_abs_diff(m.apply_left(v), m.transpose().apply(v)) < 1e-15);
    }
}
