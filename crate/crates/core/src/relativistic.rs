//! Momentum-dependent spin-frames `(omega(p), pi(p))`, Pauli-Lubanski
//! projections, and the SU(2) Wigner matrix acting on Bargmann-Wigner
//! amplitudes `phi_0(p), phi_1(p)`.
//!
//! A frame family assigns to every on-shell `p` a dyad with
//! `omega_A pi^A = 1` and `p^{AA'} = pi bar(pi) + (m^2/2) omega bar(omega)`.
//! Under `L` the amplitudes transform as
//! `(L phi)(p) = W(L, p) phi(L^{-1} p)` with
//!
//! ```text
//! W = [[ omega.Lpi,                       -(m/sqrt2) omega.Lomega ],
//!      [ (m/sqrt2) conj(omega.Lomega),     conj(omega.Lpi)        ]]
//! ```
//!
//! where `Lpi(p) = L pi(L^{-1} p)` and `x.y = x_A y^A`.

use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{c, vec_max_abs_diff, vec_norm, vec_scale, Mat2, ONE, ZERO};
use crate::spinor::{
    bracket, lower_components, minkowski_dot, Priming, Sl2c, Spinor, Variance, WorldVector,
};
use crate::tol;

/// Future-pointing on-shell four-momentum with its mass.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FourMomentum {
    pub p: [f64; 4],
    pub mass: f64,
}

impl FourMomentum {
    pub fn new(p: [f64; 4], mass: f64) -> Result<Self> {
        if !(mass.is_finite() && mass >= 0.0) {
            return Err(Error::InvalidMass(mass));
        }
        if !p.iter().all(|x| x.is_finite()) || p[0] <= 0.0 {
            return Err(Error::NotFuturePointing(p[0]));
        }
        let norm = minkowski_dot(&WorldVector(p), &WorldVector(p));
        if (norm - mass * mass).abs() > tol::CHAINED * p[0] * p[0] {
            return Err(Error::OffShell { norm, mass_sq: mass * mass });
        }
        Ok(FourMomentum { p, mass })
    }

    /// `p0 = sqrt(m^2 + |k|^2)`.
    pub fn on_shell(mass: f64, k: [f64; 3]) -> Result<Self> {
        let p0 = (mass * mass + k[0] * k[0] + k[1] * k[1] + k[2] * k[2]).sqrt();
        FourMomentum::new([p0, k[0], k[1], k[2]], mass)
    }

    pub fn energy(&self) -> f64 {
        self.p[0]
    }

    pub fn world(&self) -> WorldVector {
        WorldVector(self.p)
    }

    /// `p^{AA'}`.
    pub fn matrix(&self) -> Mat2 {
        self.world().to_matrix()
    }

    /// `L p`, keeping the mass.
    pub fn transformed(&self, l: &Sl2c) -> Result<FourMomentum> {
        FourMomentum::new(l.apply_world(&self.world()).0, self.mass)
    }

    pub fn max_abs_diff(&self, other: &FourMomentum) -> f64 {
        self.world().max_abs_diff(&other.world())
    }
}

/// A momentum-dependent dyad satisfying `omega_A pi^A = 1` and the
/// decomposition of `p`. Both spinors are unprimed, upper index.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentumSpinFrame {
    pub omega: Spinor,
    pub pi: Spinor,
    /// Reference spinor for frames built from a fixed `nu`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nu: Option<Spinor>,
    pub momentum: FourMomentum,
}

impl MomentumSpinFrame {
    pub fn normalization_defect(&self) -> f64 {
        (bracket(self.omega.components(), self.pi.components()) - ONE).norm()
    }

    /// Max-norm of `pi bar(pi) + (m^2/2) omega bar(omega) - p^{AA'}`.
    pub fn decomposition_residual(&self) -> f64 {
        decomposition_residual(
            self.omega.components(),
            self.pi.components(),
            &self.momentum,
        )
    }

    pub fn omega_lower(&self) -> [Complex64; 2] {
        lower_components(self.omega.components())
    }

    pub fn pi_lower(&self) -> [Complex64; 2] {
        lower_components(self.pi.components())
    }
}

fn conj2(v: [Complex64; 2]) -> [Complex64; 2] {
    [v[0].conj(), v[1].conj()]
}

fn decomposition_residual(omega: [Complex64; 2], pi: [Complex64; 2], p: &FourMomentum) -> f64 {
    let m2 = p.mass * p.mass;
    let rebuilt = Mat2::outer(pi, conj2(pi)) + Mat2::outer(omega, conj2(omega)) * (m2 / 2.0);
    rebuilt.max_abs_diff(&p.matrix())
}

fn as_upper(nu: &Spinor) -> Result<[Complex64; 2]> {
    if nu.priming != Priming::Unprimed {
        return Err(Error::Priming { left: Priming::Unprimed, right: nu.priming });
    }
    if nu.is_zero() {
        return Err(Error::ZeroSpinor);
    }
    Ok(match nu.variance {
        Variance::Upper => nu.components(),
        Variance::Lower => nu.raise()?.components(),
    })
}

/// `omega = nu / sqrt(d)`, `pi = p^{AA'} bar(nu)_{A'} / sqrt(d)` with
/// `d = p^{BB'} nu_B bar(nu)_{B'}`.
pub fn spin_frame_from_nu(nu: &Spinor, p: &FourMomentum) -> Result<MomentumSpinFrame> {
    let nu_up = as_upper(nu)?;
    let nu_low = lower_components(nu_up);
    let pm = p.matrix();
    let pnb = pm.apply(conj2(nu_low));
    let d = nu_low[0] * pnb[0] + nu_low[1] * pnb[1];
    let scale = p.energy() * vec_norm(nu_up).powi(2);
    debug_assert!(d.im.abs() <= tol::HERMITIAN * scale.max(1.0), "d must be real: {d}");
    if d.re <= tol::CHAINED * scale {
        return Err(Error::DegenerateDirection(d.re));
    }
    let root = d.re.sqrt();
    let inv = c(1.0 / root, 0.0);
    Ok(MomentumSpinFrame {
        omega: Spinor::from_components(vec_scale(nu_up, inv), Variance::Upper, Priming::Unprimed),
        pi: Spinor::from_components(vec_scale(pnb, inv), Variance::Upper, Priming::Unprimed),
        nu: Some(Spinor::upper(nu_up[0], nu_up[1])),
        momentum: *p,
    })
}

/// Rest-frame dyad carried by the pure boost taking `(m, 0, 0, 0)` to `p`
/// (massive), or the dyad aligned with the direction of motion (massless).
pub fn helicity_frame(p: &FourMomentum) -> Result<MomentumSpinFrame> {
    let m = p.mass;
    let (omega, pi) = if m > 0.0 {
        // sqrt of the positive unimodular matrix sqrt2 P / m: (M + I) / sqrt(tr M + 2)
        let mm = p.matrix() * (SQRT_2 / m);
        let s = (mm + Mat2::identity()) * (1.0 / (mm.trace().re + 2.0).sqrt());
        let o = s.apply([ONE, ZERO]);
        let iota = s.apply([ZERO, ONE]);
        let a = (m * FRAC_1_SQRT_2).sqrt();
        (vec_scale(iota, c(-1.0 / a, 0.0)), vec_scale(o, c(a, 0.0)))
    } else {
        let [e, kx, ky, kz] = p.p;
        let kn = (kx * kx + ky * ky + kz * kz).sqrt();
        let theta = (kz / kn).clamp(-1.0, 1.0).acos();
        let phi = ky.atan2(kx);
        let chi = [
            c((theta / 2.0).cos(), 0.0),
            Complex64::from_polar((theta / 2.0).sin(), phi),
        ];
        let chi_perp = [-Complex64::from_polar((theta / 2.0).sin(), -phi), c((theta / 2.0).cos(), 0.0)];
        let pi = vec_scale(chi, c((SQRT_2 * e).sqrt(), 0.0));
        let norm = bracket(chi_perp, pi);
        (vec_scale(chi_perp, norm.inv()), pi)
    };
    Ok(MomentumSpinFrame {
        omega: Spinor::upper(omega[0], omega[1]),
        pi: Spinor::upper(pi[0], pi[1]),
        nu: None,
        momentum: *p,
    })
}

/// A rule assigning a spin-frame to every momentum; fixes the qubit basis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind")]
pub enum FrameFamily {
    Helicity,
    Pnd { nu: Spinor },
}

impl FrameFamily {
    pub fn frame_at(&self, p: &FourMomentum) -> Result<MomentumSpinFrame> {
        match self {
            FrameFamily::Helicity => helicity_frame(p),
            FrameFamily::Pnd { nu } => spin_frame_from_nu(nu, p),
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            FrameFamily::Helicity => "helicity",
            FrameFamily::Pnd { .. } => "pnd",
        }
    }
}

/// `Lpi(p) = L pi(L^{-1} p)` and `Lomega(p)`, upper components.
fn transported(family: &FrameFamily, l: &Sl2c, p: &FourMomentum) -> Result<([Complex64; 2], [Complex64; 2])> {
    let q = p.transformed(&l.inverse())?;
    let fq = family.frame_at(&q)?;
    Ok((l.matrix().apply(fq.pi.components()), l.matrix().apply(fq.omega.components())))
}

/// Max residual of `L pi(nu, L^{-1}p) = pi(L nu, p)`, the `omega` analogue,
/// and the decomposition of `p` by the transformed frame.
pub fn frame_covariance_check(l: &Sl2c, nu: &Spinor, p: &FourMomentum) -> Result<f64> {
    let family = FrameFamily::Pnd { nu: *nu };
    let (lpi, lomega) = transported(&family, l, p)?;
    let moved = spin_frame_from_nu(&l.apply(&Spinor::upper(as_upper(nu)?[0], as_upper(nu)?[1])), p)?;
    Ok(vec_max_abs_diff(lpi, moved.pi.components())
        .max(vec_max_abs_diff(lomega, moved.omega.components()))
        .max(decomposition_residual(lomega, lpi, p)))
}

/// Projections of the Pauli-Lubanski vector on `omega bar(omega)`:
/// `W_X^Y = (pi_X omega^Y + omega_X pi^Y)/2` and its primed partner
/// `W_{X'}^{Y'} = -(bar(pi)_{X'} bar(omega)^{Y'} + bar(omega)_{X'} bar(pi)^{Y'})/2`.
/// Both act on lower-index spinors: `(W psi)_X = W_X^Y psi_Y`.
pub fn pauli_lubanski(frame: &MomentumSpinFrame) -> (Mat2, Mat2) {
    let (omega, pi) = (frame.omega.components(), frame.pi.components());
    let (omega_l, pi_l) = (frame.omega_lower(), frame.pi_lower());
    let w = (Mat2::outer(pi_l, omega) + Mat2::outer(omega_l, pi)) * 0.5;
    let w_primed = -w.conj();
    (w, w_primed)
}

/// Eigen-relations `W omega = omega/2`, `W pi = -pi/2`, `W' bar(pi) = bar(pi)/2`,
/// `W' bar(omega) = -bar(omega)/2`; returns the max residual.
pub fn pauli_lubanski_eigen_residual(frame: &MomentumSpinFrame) -> f64 {
    let (w, wp) = pauli_lubanski(frame);
    let (ol, pl) = (frame.omega_lower(), frame.pi_lower());
    let half = c(0.5, 0.0);
    [
        vec_max_abs_diff(w.apply(ol), vec_scale(ol, half)),
        vec_max_abs_diff(w.apply(pl), vec_scale(pl, -half)),
        vec_max_abs_diff(wp.apply(conj2(pl)), vec_scale(conj2(pl), half)),
        vec_max_abs_diff(wp.apply(conj2(ol)), vec_scale(conj2(ol), -half)),
    ]
    .into_iter()
    .fold(0.0, f64::max)
}

/// The 4x2 amplitude basis of the Dirac decomposition, lower-index components:
/// column 0 `(-pi_A, -(m/sqrt2) bar(omega)_{A'})`, column 1
/// `((m/sqrt2) omega_A, -bar(pi)_{A'})`.
fn dirac_columns(pi_low: [Complex64; 2], omega_low: [Complex64; 2], mass: f64) -> [[Complex64; 2]; 4] {
    let k = c(mass * FRAC_1_SQRT_2, 0.0);
    let col0 = [-pi_low[0], -pi_low[1], -k * omega_low[0].conj(), -k * omega_low[1].conj()];
    let col1 = [k * omega_low[0], k * omega_low[1], -pi_low[0].conj(), -pi_low[1].conj()];
    std::array::from_fn(|r| [col0[r], col1[r]])
}

fn mul42(b: &[[Complex64; 2]; 4], m: &Mat2) -> [[Complex64; 2]; 4] {
    std::array::from_fn(|r| m.apply_left(b[r]))
}

fn max_diff42(a: &[[Complex64; 2]; 4], b: &[[Complex64; 2]; 4]) -> f64 {
    let mut d: f64 = 0.0;
    for r in 0..4 {
        d = d.max(vec_max_abs_diff(a[r], b[r]));
    }
    d
}

/// Residual of the Pauli-Lubanski block operator written in the amplitude
/// basis against `-(1/2) diag(1, -1)`.
pub fn w_diagonal_check(frame: &MomentumSpinFrame) -> f64 {
    let (w, wp) = pauli_lubanski(frame);
    let b = dirac_columns(frame.pi_lower(), frame.omega_lower(), frame.momentum.mass);
    // D B, with D = diag(W, W') acting on the upper and lower halves.
    let mut db = [[ZERO; 2]; 4];
    for col in 0..2 {
        let top = w.apply([b[0][col], b[1][col]]);
        let bottom = wp.apply([b[2][col], b[3][col]]);
        for (r, v) in [top[0], top[1], bottom[0], bottom[1]].into_iter().enumerate() {
            db[r][col] = v;
        }
    }
    // K = (B^dagger B)^{-1} B^dagger (D B)
    let mut gram = Mat2::zero();
    let mut proj = Mat2::zero();
    for i in 0..2 {
        for j in 0..2 {
            let mut g = ZERO;
            let mut p = ZERO;
            for r in 0..4 {
                g += b[r][i].conj() * b[r][j];
                p += b[r][i].conj() * db[r][j];
            }
            gram.0[i][j] = g;
            proj.0[i][j] = p;
        }
    }
    let Some(inv) = gram.inverse() else {
        return f64::INFINITY;
    };
    let k = inv * proj;
    let expected = Mat2::diag(c(-0.5, 0.0), c(0.5, 0.0));
    k.max_abs_diff(&expected).max(max_diff42(&mul42(&b, &k), &db))
}

/// SU(2) matrix of the amplitude transformation at momentum `p`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WignerMatrix(pub Mat2);

impl WignerMatrix {
    pub fn unitarity_defect(&self) -> f64 {
        (self.0 * self.0.adjoint()).max_abs_diff(&Mat2::identity())
    }

    pub fn det_defect(&self) -> f64 {
        (self.0.det() - ONE).norm()
    }

    pub fn off_diagonal(&self) -> f64 {
        self.0.get(0, 1).norm().max(self.0.get(1, 0).norm())
    }

    /// Max deviation of the diagonal entries from unit modulus.
    pub fn diagonal_modulus_defect(&self) -> f64 {
        (self.0.get(0, 0).norm() - 1.0).abs().max((self.0.get(1, 1).norm() - 1.0).abs())
    }

    pub fn is_diagonal(&self, tol: f64) -> bool {
        self.off_diagonal() <= tol
    }
}

/// Wigner matrix of `L` at `p` for an arbitrary frame family.
pub fn wigner_matrix_in(family: &FrameFamily, l: &Sl2c, p: &FourMomentum) -> Result<WignerMatrix> {
    let fp = family.frame_at(p)?;
    let (lpi, lomega) = transported(family, l, p)?;
    let omega = fp.omega.components();
    let a = bracket(omega, lpi);
    let e = bracket(omega, lomega) * (p.mass * FRAC_1_SQRT_2);
    Ok(WignerMatrix(Mat2::new(a, -e, e.conj(), a.conj())))
}

/// Wigner matrix for the frames built from the reference spinor `nu`.
pub fn wigner_matrix(l: &Sl2c, nu: &Spinor, p: &FourMomentum) -> Result<WignerMatrix> {
    wigner_matrix_in(&FrameFamily::Pnd { nu: *nu }, l, p)
}

/// Residual of `[L-columns](p) = B(p) W(L, p)`: the Lorentz-transformed Dirac
/// amplitude basis recombined by the Wigner matrix.
pub fn dirac_basis_consistency(family: &FrameFamily, l: &Sl2c, p: &FourMomentum) -> Result<f64> {
    let fp = family.frame_at(p)?;
    let (lpi, lomega) = transported(family, l, p)?;
    let w = wigner_matrix_in(family, l, p)?;
    let b = dirac_columns(fp.pi_lower(), fp.omega_lower(), p.mass);
    let b_moved = dirac_columns(lower_components(lpi), lower_components(lomega), p.mass);
    Ok(max_diff42(&b_moved, &mul42(&b, &w.0)))
}

/// Null future-pointing vector `pi_A bar(pi)_{A'}`.
pub fn flagpole(pi: &Spinor) -> Result<FourMomentum> {
    if pi.is_zero() {
        return Err(Error::ZeroSpinor);
    }
    let v = pi.components();
    let m = Mat2::outer(v, conj2(v));
    FourMomentum::new(WorldVector::from_matrix(&m)?.0, 0.0)
}

/// Outcome of the PND phase analysis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PndPhase {
    pub eigenvalue: Complex64,
    /// `phi` with `omega_A Lpi^A = conj(lambda)/|lambda| = e^{-i phi}`.
    pub phase: f64,
    /// Largest deviation of any sampled Wigner matrix from `diag(e^{-i phi}, e^{i phi})`.
    pub max_matrix_deviation: f64,
    /// Spread of the per-momentum phases.
    pub phase_spread: f64,
}

/// Eigenvalue of `L` for `nu`, or an error if `nu` is not an eigen-spinor.
pub fn eigenvalue(l: &Sl2c, nu: &Spinor) -> Result<Complex64> {
    let v = as_upper(nu)?;
    let lv = l.matrix().apply(v);
    let n2 = v[0].norm_sqr() + v[1].norm_sqr();
    let lambda = (v[0].conj() * lv[0] + v[1].conj() * lv[1]) / n2;
    let residual = vec_max_abs_diff(lv, vec_scale(v, lambda));
    if residual > tol::CONSTRUCTION * vec_norm(v).max(1.0) * l.matrix().max_abs().max(1.0) {
        return Err(Error::NotEigenSpinor(residual));
    }
    Ok(lambda)
}

pub fn pnd_phase(l: &Sl2c, nu: &Spinor, momenta: &[FourMomentum]) -> Result<PndPhase> {
    let lambda = eigenvalue(l, nu)?;
    let phase = lambda.arg();
    let expected = Mat2::diag(Complex64::from_polar(1.0, -phase), Complex64::from_polar(1.0, phase));
    let mut max_dev: f64 = 0.0;
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for p in momenta {
        let w = wigner_matrix(l, nu, p)?;
        max_dev = max_dev.max(w.0.max_abs_diff(&expected));
        // phase relative to phi, so the spread is free of branch cuts
        let rel = -(w.0.get(0, 0) * Complex64::from_polar(1.0, phase)).arg();
        lo = lo.min(rel);
        hi = hi.max(rel);
    }
    let phase_spread = if momenta.is_empty() { 0.0 } else { hi - lo };
    Ok(PndPhase { eigenvalue: lambda, phase, max_matrix_deviation: max_dev, phase_spread })
}

/// Amplitudes `phi_A(p)` at one momentum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AmplitudeSample {
    pub momentum: FourMomentum,
    pub amplitude: [Complex64; 2],
}

/// Bargmann-Wigner amplitudes sampled on a finite momentum grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BargmannAmplitudes {
    pub samples: Vec<AmplitudeSample>,
}

impl BargmannAmplitudes {
    pub fn new(samples: Vec<AmplitudeSample>) -> Result<Self> {
        if samples
            .iter()
            .any(|s| !(s.amplitude[0].is_finite() && s.amplitude[1].is_finite()))
        {
            return Err(Error::Config("amplitudes must be finite".into()));
        }
        Ok(BargmannAmplitudes { samples })
    }

    pub fn momenta(&self) -> Vec<FourMomentum> {
        self.samples.iter().map(|s| s.momentum).collect()
    }

    fn find(&self, q: &FourMomentum) -> Option<&AmplitudeSample> {
        let tol = 1e-9 * q.energy().max(1.0);
        self.samples.iter().find(|s| s.momentum.max_abs_diff(q) <= tol)
    }
}

/// `(L phi)(p) = W(L, p) phi(L^{-1} p)` on the image grid `{L q}`.
pub fn apply_wigner(
    l: &Sl2c,
    amplitudes: &BargmannAmplitudes,
    family: &FrameFamily,
) -> Result<BargmannAmplitudes> {
    let samples = amplitudes
        .samples
        .iter()
        .map(|s| {
            let p = s.momentum.transformed(l)?;
            let w = wigner_matrix_in(family, l, &p)?;
            Ok(AmplitudeSample { momentum: p, amplitude: w.0.apply(s.amplitude) })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BargmannAmplitudes { samples })
}

/// As [`apply_wigner`], evaluated on a caller-supplied grid; every preimage
/// `L^{-1} p` must already be a sample point.
pub fn apply_wigner_on_grid(
    l: &Sl2c,
    amplitudes: &BargmannAmplitudes,
    grid: &[FourMomentum],
    family: &FrameFamily,
) -> Result<BargmannAmplitudes> {
    let inv = l.inverse();
    let samples = grid
        .iter()
        .map(|p| {
            let q = p.transformed(&inv)?;
            let src = amplitudes.find(&q).ok_or(Error::GridClosure(p.p))?;
            let w = wigner_matrix_in(family, l, p)?;
            Ok(AmplitudeSample { momentum: *p, amplitude: w.0.apply(src.amplitude) })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BargmannAmplitudes { samples })
}
