//! Minkowski and null tetrads built from a spin-frame, and the three
//! resolutions of the metric tensor they produce.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{c, Mat2, ZERO};
use crate::spinor::{
    complex_components, epsilon, epsilon_upper, lower_both, matrix_dot, minkowski_dot, Priming,
    SpinFrame, Spinor, Variance, WorldVector,
};
use crate::tol;

const MINKOWSKI_SIGNS: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MinkowskiTetrad {
    pub t: WorldVector,
    pub x: WorldVector,
    pub y: WorldVector,
    pub z: WorldVector,
}

impl MinkowskiTetrad {
    pub fn new(t: WorldVector, x: WorldVector, y: WorldVector, z: WorldVector) -> Result<Self> {
        let tet = MinkowskiTetrad { t, x, y, z };
        let dev = tet.orthonormality_defect();
        if dev > tol::CONSTRUCTION {
            return Err(Error::InvalidTetrad(dev));
        }
        Ok(tet)
    }

    pub fn legs(&self) -> [WorldVector; 4] {
        [self.t, self.x, self.y, self.z]
    }

    /// Gram matrix of `(t, x, y, z)`.
    pub fn gram(&self) -> [[f64; 4]; 4] {
        let legs = self.legs();
        let mut g = [[0.0; 4]; 4];
        for (i, u) in legs.iter().enumerate() {
            for (j, v) in legs.iter().enumerate() {
                g[i][j] = minkowski_dot(u, v);
            }
        }
        g
    }

    pub fn orthonormality_defect(&self) -> f64 {
        let g = self.gram();
        let mut dev: f64 = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                let expect = if i == j { MINKOWSKI_SIGNS[i] } else { 0.0 };
                dev = dev.max((g[i][j] - expect).abs());
            }
        }
        dev
    }
}

/// Null tetrad legs in spinor-matrix form; `m` and `mbar` are complex
/// world-vectors and have no real component form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NullTetrad {
    pub l: Mat2,
    pub m: Mat2,
    pub mbar: Mat2,
    pub n: Mat2,
}

impl NullTetrad {
    pub fn new(l: Mat2, m: Mat2, mbar: Mat2, n: Mat2) -> Result<Self> {
        let tet = NullTetrad { l, m, mbar, n };
        let dev = tet.gram_defect().max(tet.conjugation_defect());
        if dev > tol::CONSTRUCTION {
            return Err(Error::InvalidTetrad(dev));
        }
        Ok(tet)
    }

    /// Legs in the order `(l, n, m, mbar)`.
    pub fn legs(&self) -> [Mat2; 4] {
        [self.l, self.n, self.m, self.mbar]
    }

    /// Gram matrix in the order `(l, n, m, mbar)`.
    pub fn gram(&self) -> [[Complex64; 4]; 4] {
        let legs = self.legs();
        let mut g = [[ZERO; 4]; 4];
        for (i, u) in legs.iter().enumerate() {
            for (j, v) in legs.iter().enumerate() {
                g[i][j] = matrix_dot(u, v);
            }
        }
        g
    }

    /// Deviation from `l.n = 1`, `m.mbar = -1`, all other products zero.
    pub fn gram_defect(&self) -> f64 {
        let expected = null_gram_pattern();
        let g = self.gram();
        let mut dev: f64 = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                dev = dev.max((g[i][j] - c(expected[i][j], 0.0)).norm());
            }
        }
        dev
    }

    /// `mbar^a` is the complex conjugate of `m^a`, i.e. `mbar = m^dagger` as matrices.
    pub fn conjugation_defect(&self) -> f64 {
        self.mbar.max_abs_diff(&self.m.adjoint())
    }

    /// Real components of `l` (the only other real leg is `n`).
    pub fn l_vector(&self) -> Result<WorldVector> {
        WorldVector::from_matrix(&self.l)
    }

    pub fn n_vector(&self) -> Result<WorldVector> {
        WorldVector::from_matrix(&self.n)
    }
}

/// Expected null Gram matrix in the order `(l, n, m, mbar)`.
pub fn null_gram_pattern() -> [[f64; 4]; 4] {
    let mut p = [[0.0; 4]; 4];
    p[0][1] = 1.0;
    p[1][0] = 1.0;
    p[2][3] = -1.0;
    p[3][2] = -1.0;
    p
}

fn require_unprimed(frame: &SpinFrame) -> Result<()> {
    frame.check()?;
    if frame.priming() != Priming::Unprimed {
        return Err(Error::Priming { left: Priming::Unprimed, right: frame.priming() });
    }
    Ok(())
}

/// Outer product `a^A bar(b)^{A'}` as a matrix.
fn dyad(a: &Spinor, b: &Spinor) -> Mat2 {
    Mat2::outer(a.components(), b.conjugate().components())
}

/// Matrix forms of `t, x, y, z` for an unprimed frame.
pub fn minkowski_matrices(frame: &SpinFrame) -> Result<[Mat2; 4]> {
    require_unprimed(frame)?;
    let (o, i) = (&frame.o, &frame.iota);
    let (oo, ii, oi, io) = (dyad(o, o), dyad(i, i), dyad(o, i), dyad(i, o));
    let r = FRAC_1_SQRT_2;
    Ok([
        (oo + ii) * r,
        (oi + io) * r,
        (oi - io) * c(0.0, r),
        (oo - ii) * r,
    ])
}

pub fn minkowski_tetrad(frame: &SpinFrame) -> Result<MinkowskiTetrad> {
    let [t, x, y, z] = minkowski_matrices(frame)?;
    MinkowskiTetrad::new(
        WorldVector::from_matrix(&t)?,
        WorldVector::from_matrix(&x)?,
        WorldVector::from_matrix(&y)?,
        WorldVector::from_matrix(&z)?,
    )
}

pub fn null_tetrad(frame: &SpinFrame) -> Result<NullTetrad> {
    require_unprimed(frame)?;
    let (o, i) = (&frame.o, &frame.iota);
    NullTetrad::new(dyad(o, o), dyad(o, i), dyad(i, o), dyad(i, i))
}

/// Metric tensor `g^{ab}` in the global component basis, with a bilinear
/// evaluator on contravariant components.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricTensor {
    pub components: [[f64; 4]; 4],
}

impl MetricTensor {
    pub fn new(components: [[f64; 4]; 4]) -> Result<Self> {
        let mut asym: f64 = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                asym = asym.max((components[i][j] - components[j][i]).abs());
            }
        }
        if asym > tol::CONSTRUCTION {
            return Err(Error::InvalidTetrad(asym));
        }
        let g = MetricTensor { components };
        if g.signature() != (1, 3) {
            return Err(Error::InvalidTetrad(g.max_abs_diff(&MetricTensor::minkowski())));
        }
        Ok(g)
    }

    pub fn minkowski() -> Self {
        let mut components = [[0.0; 4]; 4];
        for (i, s) in MINKOWSKI_SIGNS.iter().enumerate() {
            components[i][i] = *s;
        }
        MetricTensor { components }
    }

    /// `g(u, v) = g_{ab} u^a v^b`, lowering with the global component metric.
    pub fn eval(&self, u: &WorldVector, v: &WorldVector) -> f64 {
        let mut s = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                s += MINKOWSKI_SIGNS[i]
                    * self.components[i][j]
                    * MINKOWSKI_SIGNS[j]
                    * u.0[i]
                    * v.0[j];
            }
        }
        s
    }

    pub fn max_abs_diff(&self, other: &MetricTensor) -> f64 {
        let mut d: f64 = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                d = d.max((self.components[i][j] - other.components[i][j]).abs());
            }
        }
        d
    }

    /// Counts of (positive, negative) eigenvalues.
    pub fn signature(&self) -> (usize, usize) {
        let ev = symmetric_eigenvalues(self.components);
        let scale = ev.iter().fold(0.0_f64, |a, b| a.max(b.abs())).max(1.0);
        let pos = ev.iter().filter(|&&e| e > 1e-9 * scale).count();
        let neg = ev.iter().filter(|&&e| e < -1e-9 * scale).count();
        (pos, neg)
    }
}

/// Cyclic Jacobi sweeps for a real symmetric 4x4 matrix.
fn symmetric_eigenvalues(mut a: [[f64; 4]; 4]) -> [f64; 4] {
    for _ in 0..64 {
        let mut off = 0.0;
        for p in 0..4 {
            for q in (p + 1)..4 {
                off += a[p][q] * a[p][q];
            }
        }
        if off < 1e-30 {
            break;
        }
        for p in 0..4 {
            for q in (p + 1)..4 {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let cs = 1.0 / (t * t + 1.0).sqrt();
                let sn = t * cs;
                for k in 0..4 {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = cs * akp - sn * akq;
                    a[k][q] = sn * akp + cs * akq;
                }
                for k in 0..4 {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = cs * apk - sn * aqk;
                    a[q][k] = sn * apk + cs * aqk;
                }
            }
        }
    }
    [a[0][0], a[1][1], a[2][2], a[3][3]]
}

fn outer4(u: &[f64; 4], v: &[f64; 4]) -> [[f64; 4]; 4] {
    let mut m = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            m[i][j] = u[i] * v[j];
        }
    }
    m
}

/// `t t - x x - y y - z z`.
pub fn metric_from_minkowski(tet: &MinkowskiTetrad) -> Result<MetricTensor> {
    let dev = tet.orthonormality_defect();
    if dev > tol::CONSTRUCTION {
        return Err(Error::InvalidTetrad(dev));
    }
    let mut g = [[0.0; 4]; 4];
    for (leg, sign) in tet.legs().iter().zip(MINKOWSKI_SIGNS) {
        let o = outer4(&leg.0, &leg.0);
        for i in 0..4 {
            for j in 0..4 {
                g[i][j] += sign * o[i][j];
            }
        }
    }
    MetricTensor::new(g)
}

fn complex_to_real_metric(g: [[Complex64; 4]; 4]) -> Result<MetricTensor> {
    let mut out = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            if g[i][j].im.abs() > tol::CONSTRUCTION {
                return Err(Error::InvalidTetrad(g[i][j].im.abs()));
            }
            out[i][j] = g[i][j].re;
        }
    }
    MetricTensor::new(out)
}

/// `n l + l n - mbar m - m mbar`.
pub fn metric_from_null(tet: &NullTetrad) -> Result<MetricTensor> {
    let dev = tet.gram_defect();
    if dev > tol::CONSTRUCTION {
        return Err(Error::InvalidTetrad(dev));
    }
    let [l, n, m, mbar] = tet.legs().map(|leg| complex_components(&leg));
    let mut g = [[ZERO; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            g[i][j] = n[i] * l[j] + l[i] * n[j] - mbar[i] * m[j] - m[i] * mbar[j];
        }
    }
    complex_to_real_metric(g)
}

/// `eps^{AB} eps^{A'B'}` built from the frame and converted to components.
pub fn metric_from_epsilon(frame: &SpinFrame) -> Result<MetricTensor> {
    require_unprimed(frame)?;
    let eps = epsilon_upper(frame)?;
    let eps_primed = epsilon_upper(&frame.conjugate())?;
    epsilon_product_metric(&eps, &eps_primed)
}

/// Component form of `e^{AB} f^{A'B'}`: contracts both with the inverse
/// van der Waerden symbols `s^mu_{AA'} = sigma_mu[A'][A] / sqrt(2)`.
pub fn epsilon_product_metric(eps: &Mat2, eps_primed: &Mat2) -> Result<MetricTensor> {
    let sym: [Mat2; 4] = std::array::from_fn(|mu| {
        let s = if mu == 0 { Mat2::identity() } else { crate::linalg::pauli(mu) };
        s.transpose() * FRAC_1_SQRT_2
    });
    let mut g = [[ZERO; 4]; 4];
    for mu in 0..4 {
        for nu in 0..4 {
            let mut acc = ZERO;
            for a in 0..2 {
                for ap in 0..2 {
                    for b in 0..2 {
                        for bp in 0..2 {
                            acc += sym[mu].get(a, ap)
                                * sym[nu].get(b, bp)
                                * eps.get(a, b)
                                * eps_primed.get(ap, bp);
                        }
                    }
                }
            }
            g[mu][nu] = acc;
        }
    }
    complex_to_real_metric(g)
}

/// Max-norm residual of `f_{AA'} f_B^{A'} = (1/2) f.f eps_{AB}`, together with
/// its contraction against `phi^A`.
pub fn antisymmetry_identity_check(f: &WorldVector, phi: &Spinor) -> Result<f64> {
    if phi.variance != Variance::Upper || phi.priming != Priming::Unprimed {
        return Err(Error::Variance { expected: Variance::Upper, found: phi.variance });
    }
    let fm = f.to_matrix();
    let f_low = lower_both(&fm);
    let f_mixed = epsilon().transpose() * fm;
    let lhs = f_low * f_mixed.transpose();
    let half_norm = 0.5 * minkowski_dot(f, f);
    let rhs = epsilon() * half_norm;
    let matrix_residual = lhs.max_abs_diff(&rhs);

    let p = phi.components();
    let contracted = lhs.apply_left(p);
    let expected = rhs.apply_left(p);
    let vector_residual = (contracted[0] - expected[0])
        .norm()
        .max((contracted[1] - expected[1]).norm());
    Ok(matrix_residual.max(vector_residual))
}

/// Spinor-matrix form of a tetrad leg, used by the teleportation module.
pub fn leg_matrix(frame: &SpinFrame, leg: Leg) -> Result<Mat2> {
    Ok(minkowski_matrices(frame)?[leg.index()])
}

/// A Minkowski tetrad leg; also labels a teleportation branch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Leg {
    T,
    X,
    Y,
    Z,
}

impl Leg {
    pub const ALL: [Leg; 4] = [Leg::T, Leg::X, Leg::Y, Leg::Z];

    pub fn index(self) -> usize {
        match self {
            Leg::T => 0,
            Leg::X => 1,
            Leg::Y => 2,
            Leg::Z => 3,
        }
    }

    /// Sign of the leg's term in `g = t t - x x - y y - z z`.
    pub fn metric_sign(self) -> f64 {
        MINKOWSKI_SIGNS[self.index()]
    }

    pub fn label(self) -> &'static str {
        match self {
            Leg::T => "t",
            Leg::X => "x",
            Leg::Y => "y",
            Leg::Z => "z",
        }
    }
}
