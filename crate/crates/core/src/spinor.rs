//! Two-spinor arithmetic on numerical components.
//!
//! Components are always taken in the fixed standard basis `o = (1, 0)`,
//! `iota = (0, 1)`. Indices are raised and lowered with
//! `phi_0 = -phi^1`, `phi_1 = phi^0`, and world-vectors are identified with
//! Hermitian matrices `v^{AA'} = (v0 I + v1 s1 + v2 s2 + v3 s3) / sqrt(2)`,
//! rows indexed by `A` and columns by `A'`. With this symbol set the metric
//! signature is `(+, -, -, -)`.

use std::f64::consts::FRAC_1_SQRT_2;
use std::ops::Mul;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{c, pauli, Mat2, ONE, ZERO};
use crate::tol;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variance {
    Upper,
    Lower,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Priming {
    Unprimed,
    Primed,
}

impl Priming {
    pub fn toggled(self) -> Self {
        match self {
            Priming::Unprimed => Priming::Primed,
            Priming::Primed => Priming::Unprimed,
        }
    }
}

/// The spinor `epsilon_{AB}` (and numerically also `epsilon^{AB}`).
pub fn epsilon() -> Mat2 {
    Mat2::new(ZERO, ONE, -ONE, ZERO)
}

/// `phi_A` from `phi^A`.
#[inline]
pub fn lower_components(v: [Complex64; 2]) -> [Complex64; 2] {
    [-v[1], v[0]]
}

/// `phi^A` from `phi_A`.
#[inline]
pub fn raise_components(v: [Complex64; 2]) -> [Complex64; 2] {
    [v[1], -v[0]]
}

/// `phi_A psi^A` for two upper-index component pairs.
#[inline]
pub fn bracket(phi: [Complex64; 2], psi: [Complex64; 2]) -> Complex64 {
    let low = lower_components(phi);
    low[0] * psi[0] + low[1] * psi[1]
}

/// Lower both indices of a rank-2 spinor stored as a matrix `X^{AB}`
/// (or `X^{AA'}`): returns `X_{AB} = X^{CD} eps_{CA} eps_{DB}`.
pub fn lower_both(m: &Mat2) -> Mat2 {
    let e = epsilon();
    e.transpose() * *m * e
}

/// `x^{AA'} y_{AA'}`, valid for complex world-vectors as well.
pub fn matrix_dot(x: &Mat2, y: &Mat2) -> Complex64 {
    x.pair(&lower_both(y))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Spinor {
    pub c0: Complex64,
    pub c1: Complex64,
    pub variance: Variance,
    pub priming: Priming,
}

impl Spinor {
    pub fn new(c0: Complex64, c1: Complex64, variance: Variance, priming: Priming) -> Self {
        Spinor { c0, c1, variance, priming }
    }

    pub fn upper(c0: Complex64, c1: Complex64) -> Self {
        Spinor::new(c0, c1, Variance::Upper, Priming::Unprimed)
    }

    pub fn primed_upper(c0: Complex64, c1: Complex64) -> Self {
        Spinor::new(c0, c1, Variance::Upper, Priming::Primed)
    }

    pub fn from_components(v: [Complex64; 2], variance: Variance, priming: Priming) -> Self {
        Spinor::new(v[0], v[1], variance, priming)
    }

    #[inline]
    pub fn components(&self) -> [Complex64; 2] {
        [self.c0, self.c1]
    }

    pub fn is_zero(&self) -> bool {
        self.c0 == ZERO && self.c1 == ZERO
    }

    pub fn norm(&self) -> f64 {
        (self.c0.norm_sqr() + self.c1.norm_sqr()).sqrt()
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Spinor { c0: self.c0 * s, c1: self.c1 * s, ..*self }
    }

    fn expect_variance(&self, expected: Variance) -> Result<()> {
        if self.variance != expected {
            return Err(Error::Variance { expected, found: self.variance });
        }
        Ok(())
    }

    pub fn lower(&self) -> Result<Spinor> {
        self.expect_variance(Variance::Upper)?;
        Ok(Spinor::from_components(
            lower_components(self.components()),
            Variance::Lower,
            self.priming,
        ))
    }

    pub fn raise(&self) -> Result<Spinor> {
        self.expect_variance(Variance::Lower)?;
        Ok(Spinor::from_components(
            raise_components(self.components()),
            Variance::Upper,
            self.priming,
        ))
    }

    /// `phi_A psi^A` with `self` as the lower-index factor.
    pub fn contract(&self, psi: &Spinor) -> Result<Complex64> {
        self.expect_variance(Variance::Lower)?;
        psi.expect_variance(Variance::Upper)?;
        if self.priming != psi.priming {
            return Err(Error::Priming { left: self.priming, right: psi.priming });
        }
        Ok(self.c0 * psi.c0 + self.c1 * psi.c1)
    }

    /// Complex conjugation `phi^A -> bar(phi)^{A'}`.
    pub fn conjugate(&self) -> Spinor {
        Spinor {
            c0: self.c0.conj(),
            c1: self.c1.conj(),
            variance: self.variance,
            priming: self.priming.toggled(),
        }
    }

    pub fn max_abs_diff(&self, other: &Spinor) -> f64 {
        (self.c0 - other.c0).norm().max((self.c1 - other.c1).norm())
    }
}

/// A normalized spinor dyad `(o, iota)` with `o_A iota^A = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpinFrame {
    pub o: Spinor,
    pub iota: Spinor,
}

impl SpinFrame {
    /// Builds a frame from two upper-index spinors of equal priming,
    /// rejecting it unless `o_A iota^A = 1` to within 1e-12.
    pub fn new(o: Spinor, iota: Spinor) -> Result<Self> {
        o.expect_variance(Variance::Upper)?;
        iota.expect_variance(Variance::Upper)?;
        if o.priming != iota.priming {
            return Err(Error::Priming { left: o.priming, right: iota.priming });
        }
        let frame = SpinFrame { o, iota };
        frame.check()?;
        Ok(frame)
    }

    pub fn standard() -> Self {
        SpinFrame {
            o: Spinor::upper(ONE, ZERO),
            iota: Spinor::upper(ZERO, ONE),
        }
    }

    pub fn normalization(&self) -> Complex64 {
        bracket(self.o.components(), self.iota.components())
    }

    pub fn normalization_defect(&self) -> f64 {
        (self.normalization() - ONE).norm()
    }

    pub fn check(&self) -> Result<()> {
        let n = self.normalization();
        if (n - ONE).norm() > tol::CONSTRUCTION {
            return Err(Error::Unnormalized { re: n.re, im: n.im });
        }
        Ok(())
    }

    /// The complex-conjugate frame `(bar o^{A'}, bar iota^{A'})`.
    pub fn conjugate(&self) -> SpinFrame {
        SpinFrame { o: self.o.conjugate(), iota: self.iota.conjugate() }
    }

    pub fn priming(&self) -> Priming {
        self.o.priming
    }

    /// Transforms both legs; normalization is re-checked, never re-imposed.
    pub fn transformed(&self, l: &Sl2c) -> Result<SpinFrame> {
        let frame = SpinFrame { o: l.apply(&self.o), iota: l.apply(&self.iota) };
        frame.check()?;
        Ok(frame)
    }

    /// The spinor with frame components `(a, b)`: `a o^A + b iota^A`.
    pub fn combine(&self, a: Complex64, b: Complex64) -> Spinor {
        let (o, i) = (self.o.components(), self.iota.components());
        Spinor::from_components(
            [a * o[0] + b * i[0], a * o[1] + b * i[1]],
            Variance::Upper,
            self.priming(),
        )
    }
}

/// `eps^{AB} = o^A iota^B - iota^A o^B`.
pub fn epsilon_upper(frame: &SpinFrame) -> Result<Mat2> {
    frame.check()?;
    let (o, i) = (frame.o.components(), frame.iota.components());
    Ok(Mat2::outer(o, i) - Mat2::outer(i, o))
}

/// Real four-vector `[v0, v1, v2, v3]` in the global component basis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WorldVector(pub [f64; 4]);

fn sigma(mu: usize) -> Mat2 {
    if mu == 0 {
        Mat2::identity()
    } else {
        pauli(mu)
    }
}

impl WorldVector {
    pub const fn new(v0: f64, v1: f64, v2: f64, v3: f64) -> Self {
        WorldVector([v0, v1, v2, v3])
    }

    /// `v^{AA'}`.
    pub fn to_matrix(&self) -> Mat2 {
        let mut m = Mat2::zero();
        for (mu, &v) in self.0.iter().enumerate() {
            m = m + sigma(mu) * v;
        }
        m * FRAC_1_SQRT_2
    }

    pub fn from_matrix(m: &Mat2) -> Result<Self> {
        let defect = m.hermiticity_defect();
        if defect > tol::CONSTRUCTION * m.max_abs().max(1.0) {
            return Err(Error::NotHermitian(defect));
        }
        let comps = complex_components(m);
        Ok(WorldVector([comps[0].re, comps[1].re, comps[2].re, comps[3].re]))
    }

    pub fn dot(&self, other: &WorldVector) -> f64 {
        minkowski_dot(self, other)
    }

    pub fn max_abs_diff(&self, other: &WorldVector) -> f64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Components of a (possibly complex) world-vector from its matrix form.
pub fn complex_components(m: &Mat2) -> [Complex64; 4] {
    let mut out = [ZERO; 4];
    for (mu, slot) in out.iter_mut().enumerate() {
        *slot = (sigma(mu) * *m).trace() * FRAC_1_SQRT_2;
    }
    out
}

pub fn worldvector_to_matrix(v: &WorldVector) -> Mat2 {
    v.to_matrix()
}

pub fn matrix_to_worldvector(m: &Mat2) -> Result<WorldVector> {
    WorldVector::from_matrix(m)
}

/// `u0 v0 - u1 v1 - u2 v2 - u3 v3`.
pub fn minkowski_dot(u: &WorldVector, v: &WorldVector) -> f64 {
    let (a, b) = (&u.0, &v.0);
    a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3]
}

/// Bilinear Minkowski product of complex component vectors.
pub fn complex_minkowski_dot(u: &[Complex64; 4], v: &[Complex64; 4]) -> Complex64 {
    u[0] * v[0] - u[1] * v[1] - u[2] * v[2] - u[3] * v[3]
}

/// Unimodular 2x2 complex matrix acting on unprimed spinors; its complex
/// conjugate acts on primed ones.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Sl2c(Mat2);

impl Sl2c {
    pub fn new(m: Mat2) -> Result<Self> {
        let dev = (m.det() - ONE).norm();
        if dev > tol::CONSTRUCTION {
            return Err(Error::NotUnimodular(dev));
        }
        Ok(Sl2c(m))
    }

    /// Rescales an invertible matrix to unit determinant (principal root).
    pub fn normalized(m: Mat2) -> Result<Self> {
        let det = m.det();
        if det.norm() == 0.0 {
            return Err(Error::NotUnimodular(1.0));
        }
        Sl2c::new(m * det.sqrt().inv())
    }

    pub fn identity() -> Self {
        Sl2c(Mat2::identity())
    }

    /// Boost with rapidity `eta` along the unit 3-vector `axis`:
    /// `cosh(eta/2) I + sinh(eta/2) n.sigma`.
    pub fn boost(axis: [f64; 3], rapidity: f64) -> Self {
        let n = unit(axis);
        let (ch, sh) = ((rapidity / 2.0).cosh(), (rapidity / 2.0).sinh());
        Sl2c(Mat2::identity() * ch + n_dot_sigma(n) * sh)
    }

    /// Rotation by `angle` about `axis`: `cos(angle/2) I - i sin(angle/2) n.sigma`.
    pub fn rotation(axis: [f64; 3], angle: f64) -> Self {
        let n = unit(axis);
        let (co, si) = ((angle / 2.0).cos(), (angle / 2.0).sin());
        Sl2c(Mat2::identity() * co + n_dot_sigma(n) * c(0.0, -si))
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.0
    }

    pub fn inverse(&self) -> Sl2c {
        let m = &self.0;
        Sl2c(Mat2::new(m.get(1, 1), -m.get(0, 1), -m.get(1, 0), m.get(0, 0)))
    }

    pub fn det_defect(&self) -> f64 {
        (self.0.det() - ONE).norm()
    }

    /// Upper unprimed indices transform with `L`, upper primed with `conj(L)`;
    /// lower indices follow from raising, transforming and lowering again.
    pub fn apply(&self, s: &Spinor) -> Spinor {
        let m = match s.priming {
            Priming::Unprimed => self.0,
            Priming::Primed => self.0.conj(),
        };
        let out = match s.variance {
            Variance::Upper => m.apply(s.components()),
            Variance::Lower => lower_components(m.apply(raise_components(s.components()))),
        };
        Spinor::from_components(out, s.variance, s.priming)
    }

    /// `X^{AA'} -> L X L^dagger`.
    pub fn apply_matrix(&self, x: &Mat2) -> Mat2 {
        self.0 * *x * self.0.adjoint()
    }

    pub fn apply_world(&self, v: &WorldVector) -> WorldVector {
        let m = self.apply_matrix(&v.to_matrix());
        // L X L^dagger is Hermitian whenever X is; drop the rounding residue.
        let comps = complex_components(&m);
        WorldVector([comps[0].re, comps[1].re, comps[2].re, comps[3].re])
    }
}

impl Mul for Sl2c {
    type Output = Sl2c;
    fn mul(self, o: Sl2c) -> Sl2c {
        Sl2c(self.0 * o.0)
    }
}

pub fn sl2c_apply(l: &Sl2c, s: &Spinor) -> Spinor {
    l.apply(s)
}

pub fn sl2c_apply_world(l: &Sl2c, v: &WorldVector) -> WorldVector {
    l.apply_world(v)
}

fn unit(v: [f64; 3]) -> [f64; 3] {
    let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    assert!(n > 0.0, "axis must be non-zero");
    [v[0] / n, v[1] / n, v[2] / n]
}

fn n_dot_sigma(n: [f64; 3]) -> Mat2 {
    pauli(1) * n[0] + pauli(2) * n[1] + pauli(3) * n[2]
}
