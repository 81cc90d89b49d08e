//! Teleportation in three formalisms.
//!
//! * `Hilbert`: the textbook protocol on an explicit 8-component state
//!   `|phi, A1> |Psi-, A2 B>`, Bell measurement on `A1 A2` and the
//!   corrections `U_k^{-1}`.
//! * `Spacetime`: Alice "measures" a Minkowski tetrad leg `f_a` on
//!   `phi^A eps^{A'B'}`, Bob corrects with `f^B_{B'}`. Corrected branches are
//!   `+phi/2, -phi/2, -phi/2, -phi/2` for `t, x, y, z`, and the metric-signed
//!   sum returns `2 phi`.
//! * `TwoSpinor`: the same with unprimed Bell spinors `f^{A1 A2}`; corrected
//!   branches are `+phi/2, -phi/2, +phi/2, -phi/2` and the signed sum
//!   returns exactly `phi`.
//!
//! Branch correspondence used in traces (Bell overlaps up to phases):
//!
//! | leg | Bell state |
//! |-----|------------|
//! | t   | Phi+       |
//! | x   | Psi+       |
//! | y   | Psi- (y is `i` times the singlet) |
//! | z   | Phi-       |

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{c, vec_add, vec_max_abs_diff, vec_scale, Mat2, ONE, ZERO};
use crate::spinor::{
    epsilon, epsilon_upper, lower_both, lower_components, Priming, SpinFrame, Spinor, Variance,
};
use crate::tetrad::{leg_matrix, Leg};

/// Qubit amplitudes `(phi^0, phi^1)` relative to a basis or spin-frame.
/// Not normalized: the spinor protocols are linear.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Qubit {
    pub phi0: Complex64,
    pub phi1: Complex64,
}

impl Qubit {
    pub fn new(phi0: Complex64, phi1: Complex64) -> Result<Self> {
        if phi0 == ZERO && phi1 == ZERO {
            return Err(Error::ZeroSpinor);
        }
        if !(phi0.is_finite() && phi1.is_finite()) {
            return Err(Error::Config("qubit amplitudes must be finite".into()));
        }
        Ok(Qubit { phi0, phi1 })
    }

    pub fn components(&self) -> [Complex64; 2] {
        [self.phi0, self.phi1]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.phi0.norm_sqr() + self.phi1.norm_sqr()
    }

    /// The spinor `phi^0 o^A + phi^1 iota^A` in global components.
    pub fn in_frame(&self, frame: &SpinFrame) -> Spinor {
        frame.combine(self.phi0, self.phi1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Formalism {
    Hilbert,
    Spacetime,
    #[serde(rename = "twospinor")]
    TwoSpinor,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BellState {
    #[serde(rename = "Psi-")]
    PsiMinus,
    #[serde(rename = "Psi+")]
    PsiPlus,
    #[serde(rename = "Phi-")]
    PhiMinus,
    #[serde(rename = "Phi+")]
    PhiPlus,
}

impl BellState {
    /// Measurement order `Psi-, Psi+, Phi-, Phi+` (branches 1..=4).
    pub const ALL: [BellState; 4] =
        [BellState::PsiMinus, BellState::PsiPlus, BellState::PhiMinus, BellState::PhiPlus];

    pub fn label(self) -> &'static str {
        match self {
            BellState::PsiMinus => "Psi-",
            BellState::PsiPlus => "Psi+",
            BellState::PhiMinus => "Phi-",
            BellState::PhiPlus => "Phi+",
        }
    }

    /// Components in the product basis, index `2 a1 + a2`.
    pub fn vector(self) -> [Complex64; 4] {
        let r = c(FRAC_1_SQRT_2, 0.0);
        match self {
            BellState::PsiMinus => [ZERO, r, -r, ZERO],
            BellState::PsiPlus => [ZERO, r, r, ZERO],
            BellState::PhiMinus => [r, ZERO, ZERO, -r],
            BellState::PhiPlus => [r, ZERO, ZERO, r],
        }
    }

    /// Bob's unitary `U_k` in `|phi> |Psi-> = 1/2 sum_k |Bell_k> U_k |phi>`.
    pub fn unitary(self) -> Mat2 {
        match self {
            BellState::PsiMinus => Mat2::diag(-ONE, -ONE),
            BellState::PsiPlus => Mat2::diag(-ONE, ONE),
            BellState::PhiMinus => Mat2::new(ZERO, ONE, ONE, ZERO),
            BellState::PhiPlus => Mat2::new(ZERO, -ONE, ONE, ZERO),
        }
    }
}

/// The Bell basis of Alice's pair, in measurement order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BellBasis {
    pub states: [[Complex64; 4]; 4],
}

impl Default for BellBasis {
    fn default() -> Self {
        BellBasis { states: BellState::ALL.map(BellState::vector) }
    }
}

impl BellBasis {
    /// Max deviation of the Gram matrix `<B_i|B_j>` from the identity.
    pub fn orthonormality_defect(&self) -> f64 {
        let mut dev: f64 = 0.0;
        for (i, a) in self.states.iter().enumerate() {
            for (j, b) in self.states.iter().enumerate() {
                let ip: Complex64 = a.iter().zip(b).map(|(x, y)| x.conj() * y).sum();
                let expect = if i == j { ONE } else { ZERO };
                dev = dev.max((ip - expect).norm());
            }
        }
        dev
    }
}

/// Bob's four unitaries `U_1..U_4`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CorrectionSet {
    pub unitaries: [Mat2; 4],
}

impl Default for CorrectionSet {
    fn default() -> Self {
        CorrectionSet { unitaries: BellState::ALL.map(BellState::unitary) }
    }
}

impl CorrectionSet {
    pub fn unitarity_defect(&self) -> f64 {
        self.unitaries
            .iter()
            .map(|u| (*u * u.adjoint()).max_abs_diff(&Mat2::identity()))
            .fold(0.0, f64::max)
    }
}

/// One branch of a protocol run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProtocolTrace {
    pub branch: String,
    /// Bell vector (Hilbert) or the measured leg's rank-2 array, row-major.
    pub alice_outcome: Vec<Complex64>,
    pub pre_correction: [Complex64; 2],
    /// Matrix taking `pre_correction` to `final_state`.
    pub correction: Mat2,
    pub final_state: [Complex64; 2],
    /// `final_state = scalar * phi`.
    pub scalar: Complex64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub probability: Option<f64>,
}

/// All four branches plus the signed assembly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProtocolRun {
    pub formalism: Formalism,
    pub input: Qubit,
    /// The teleported spinor `phi^B` in global components.
    pub target: [Complex64; 2],
    pub branches: Vec<ProtocolTrace>,
    pub assembled: [Complex64; 2],
    pub assembled_scalar: Complex64,
}

impl ProtocolRun {
    /// Largest deviation of any branch or the assembly from `scalar * phi`.
    pub fn proportionality_residual(&self) -> f64 {
        let mut r = vec_max_abs_diff(self.assembled, vec_scale(self.target, self.assembled_scalar));
        for b in &self.branches {
            r = r.max(vec_max_abs_diff(b.final_state, vec_scale(self.target, b.scalar)));
        }
        r
    }
}

/// Least-squares `s` with `v ~ s * target`.
fn scalar_factor(v: [Complex64; 2], target: [Complex64; 2]) -> Complex64 {
    let num = target[0].conj() * v[0] + target[1].conj() * v[1];
    let den = target[0].norm_sqr() + target[1].norm_sqr();
    num / den
}

fn flatten(m: &Mat2) -> Vec<Complex64> {
    m.0.iter().flatten().copied().collect()
}

// ---------------------------------------------------------------------------
// Hilbert-space protocol

/// `|phi, A1> |Psi-, A2 B>` as 8 components, index `4 a1 + 2 a2 + b`.
pub fn initial_state(phi: &Qubit) -> [Complex64; 8] {
    let singlet = BellState::PsiMinus.vector();
    let p = phi.components();
    std::array::from_fn(|k| p[k / 4] * singlet[k % 4])
}

/// One Bell branch: the Bell state, Bob's state before correction
/// (normalized so that it equals `U_k phi`) and the branch probability.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Branch {
    pub outcome: BellState,
    pub bob_state: [Complex64; 2],
    pub probability: f64,
}

/// Projects the 8-component state on each Bell state of `A1 A2`.
pub fn standard_decompose(phi: &Qubit) -> Result<[Branch; 4]> {
    if phi.norm_sqr() == 0.0 {
        return Err(Error::ZeroSpinor);
    }
    let psi = initial_state(phi);
    let total = phi.norm_sqr();
    Ok(BellState::ALL.map(|outcome| {
        let bell = outcome.vector();
        let mut bob = [ZERO; 2];
        for (k, amp) in psi.iter().enumerate() {
            bob[k % 2] += bell[k / 2].conj() * amp;
        }
        let probability = (bob[0].norm_sqr() + bob[1].norm_sqr()) / total;
        Branch { outcome, bob_state: vec_scale(bob, c(2.0, 0.0)), probability }
    }))
}

/// Residual of `|phi>|Psi-> = 1/2 sum_k |Bell_k> U_k |phi>` over all 8 components.
pub fn reconstruction_residual(phi: &Qubit) -> f64 {
    let lhs = initial_state(phi);
    let mut rhs = [ZERO; 8];
    for outcome in BellState::ALL {
        let bell = outcome.vector();
        let bob = outcome.unitary().apply(phi.components());
        for (k, slot) in rhs.iter_mut().enumerate() {
            *slot += bell[k / 2] * bob[k % 2] * 0.5;
        }
    }
    lhs.iter().zip(rhs.iter()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
}

/// Runs branch `branch` (1-based, order `Psi-, Psi+, Phi-, Phi+`).
pub fn standard_teleport(phi: &Qubit, branch: usize) -> Result<ProtocolTrace> {
    if !(1..=4).contains(&branch) {
        return Err(Error::InvalidBranch(branch));
    }
    let b = standard_decompose(phi)?[branch - 1];
    let correction = b
        .outcome
        .unitary()
        .inverse()
        .expect("Bell corrections are unitary");
    let final_state = correction.apply(b.bob_state);
    Ok(ProtocolTrace {
        branch: b.outcome.label().to_string(),
        alice_outcome: b.outcome.vector().to_vec(),
        pre_correction: b.bob_state,
        correction,
        final_state,
        scalar: scalar_factor(final_state, phi.components()),
        probability: Some(b.probability),
    })
}

fn hilbert_run(phi: &Qubit) -> Result<ProtocolRun> {
    let branches = (1..=4).map(|k| standard_teleport(phi, k)).collect::<Result<Vec<_>>>()?;
    // Every branch yields phi; Bob's output does not depend on the outcome.
    let assembled = branches[0].final_state;
    let target = phi.components();
    Ok(ProtocolRun {
        formalism: Formalism::Hilbert,
        input: *phi,
        target,
        branches,
        assembled,
        assembled_scalar: scalar_factor(assembled, target),
    })
}

// ---------------------------------------------------------------------------
// Space-time protocol (unprimed Alice, primed Bell pair)

/// `phi^A f_{AA'} eps^{A'B'}`: contracts a rank-2 array `f^{..}` (lowered here)
/// against `phi` on its first index and against `eps` on its second.
fn measure_leg(phi: [Complex64; 2], leg: &Mat2) -> [Complex64; 2] {
    let v = lower_both(leg).apply_left(phi);
    epsilon().apply_left(v)
}

/// Bob's state after Alice projects on `leg`: a primed upper spinor.
pub fn spacetime_branch(phi: &Qubit, frame: &SpinFrame, leg: Leg) -> Result<Spinor> {
    let f = leg_matrix(frame, leg)?;
    let out = measure_leg(phi.in_frame(frame).components(), &f);
    Ok(Spinor::from_components(out, Variance::Upper, Priming::Primed))
}

/// Matrix of `s^{B'} -> f^B_{B'} s^{B'}`.
fn spacetime_correction_matrix(f: &Mat2) -> Mat2 {
    *f * epsilon()
}

/// Bob's correction `state^{B'} f^B_{B'}`.
pub fn spacetime_correct(state: &Spinor, frame: &SpinFrame, leg: Leg) -> Result<Spinor> {
    if state.priming != Priming::Primed || state.variance != Variance::Upper {
        return Err(Error::Priming { left: Priming::Primed, right: state.priming });
    }
    let f = leg_matrix(frame, leg)?;
    let out = spacetime_correction_matrix(&f).apply(state.components());
    Ok(Spinor::from_components(out, Variance::Upper, Priming::Unprimed))
}

/// `phi^A eps^{A'B'} g_a^B_{B'}` assembled from the four corrected branches
/// with the signs of `g = t t - x x - y y - z z`. Equals `2 phi^B`.
pub fn spacetime_full(phi: &Qubit, frame: &SpinFrame) -> Result<Spinor> {
    let mut acc = [ZERO; 2];
    for leg in Leg::ALL {
        let corrected = spacetime_correct(&spacetime_branch(phi, frame, leg)?, frame, leg)?;
        acc = vec_add(acc, vec_scale(corrected.components(), c(leg.metric_sign(), 0.0)));
    }
    Ok(Spinor::from_components(acc, Variance::Upper, Priming::Unprimed))
}

/// The same contraction evaluated directly with `g_{ab} = eps_{AB} eps_{A'B'}`,
/// both epsilons built from the frame and its conjugate.
pub fn spacetime_direct(phi: &Qubit, frame: &SpinFrame) -> Result<Spinor> {
    let eps = epsilon_upper(frame)?;
    let eps_primed = epsilon_upper(&frame.conjugate())?;
    // eps_A^B = eps^{CB} eps_{CA}
    let mixed = epsilon().transpose() * eps;
    let trace_factor = eps_primed.pair(&lower_both(&eps_primed));
    let out = vec_scale(mixed.apply_left(phi.in_frame(frame).components()), trace_factor);
    Ok(Spinor::from_components(out, Variance::Upper, Priming::Unprimed))
}

fn spacetime_run(phi: &Qubit, frame: &SpinFrame) -> Result<ProtocolRun> {
    let target = phi.in_frame(frame).components();
    let mut branches = Vec::with_capacity(4);
    for leg in Leg::ALL {
        let f = leg_matrix(frame, leg)?;
        let pre = spacetime_branch(phi, frame, leg)?;
        let correction = spacetime_correction_matrix(&f);
        let final_state = correction.apply(pre.components());
        branches.push(ProtocolTrace {
            branch: leg.label().to_string(),
            alice_outcome: flatten(&f),
            pre_correction: pre.components(),
            correction,
            final_state,
            scalar: scalar_factor(final_state, target),
            probability: None,
        });
    }
    let assembled = spacetime_full(phi, frame)?.components();
    Ok(ProtocolRun {
        formalism: Formalism::Spacetime,
        input: *phi,
        target,
        branches,
        assembled,
        assembled_scalar: scalar_factor(assembled, target),
    })
}

// ---------------------------------------------------------------------------
// Two-spinor protocol (all indices unprimed)

/// Bell spinors `t^{A1A2}, x^{A1A2}, y^{A1A2}, z^{A1A2}` as arrays `[A1][A2]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BellTetradSpinor {
    pub t: Mat2,
    pub x: Mat2,
    pub y: Mat2,
    pub z: Mat2,
}

impl BellTetradSpinor {
    pub fn leg(&self, leg: Leg) -> &Mat2 {
        match leg {
            Leg::T => &self.t,
            Leg::X => &self.x,
            Leg::Y => &self.y,
            Leg::Z => &self.z,
        }
    }

    /// Full contractions `f^{A1A2} f_{A1A2}` in the order `t, x, y, z`.
    pub fn norms(&self) -> [Complex64; 4] {
        Leg::ALL.map(|leg| full_contraction(self.leg(leg), self.leg(leg)))
    }

    /// Deviation of the pairwise full contractions from `diag(1, -1, -1, -1)`.
    pub fn orthonormality_defect(&self) -> f64 {
        let mut dev: f64 = 0.0;
        for a in Leg::ALL {
            for b in Leg::ALL {
                let expect = if a == b { a.metric_sign() } else { 0.0 };
                dev = dev.max((full_contraction(self.leg(a), self.leg(b)) - c(expect, 0.0)).norm());
            }
        }
        dev
    }

    /// `g^{A1A2B1B2} = t t - x x - y y - z z`, indexed `[a1][a2][b1][b2]`.
    pub fn metric(&self) -> [[[[Complex64; 2]; 2]; 2]; 2] {
        let mut g = [[[[ZERO; 2]; 2]; 2]; 2];
        for leg in Leg::ALL {
            let f = self.leg(leg);
            let s = leg.metric_sign();
            for a1 in 0..2 {
                for a2 in 0..2 {
                    for b1 in 0..2 {
                        for b2 in 0..2 {
                            g[a1][a2][b1][b2] += f.get(a1, a2) * f.get(b1, b2) * s;
                        }
                    }
                }
            }
        }
        g
    }
}

/// `x^{AB} y_{AB}`.
pub fn full_contraction(x: &Mat2, y: &Mat2) -> Complex64 {
    x.pair(&lower_both(y))
}

pub fn bell_tetrad(frame: &SpinFrame) -> Result<BellTetradSpinor> {
    frame.check()?;
    let (o, i) = (frame.o.components(), frame.iota.components());
    let (oo, ii, oi, io) =
        (Mat2::outer(o, o), Mat2::outer(i, i), Mat2::outer(o, i), Mat2::outer(i, o));
    let r = FRAC_1_SQRT_2;
    Ok(BellTetradSpinor {
        t: (oo + ii) * r,
        x: (oi + io) * r,
        y: (oi - io) * c(0.0, r),
        z: (oo - ii) * r,
    })
}

/// Max residual between `t t - x x - y y - z z` and `eps^{A1B1} eps^{A2B2}`.
pub fn bell_metric_residual(tet: &BellTetradSpinor, frame: &SpinFrame) -> Result<f64> {
    let eps = epsilon_upper(frame)?;
    let g = tet.metric();
    let mut dev: f64 = 0.0;
    for a1 in 0..2 {
        for a2 in 0..2 {
            for b1 in 0..2 {
                for b2 in 0..2 {
                    let rhs = eps.get(a1, b1) * eps.get(a2, b2);
                    dev = dev.max((g[a1][a2][b1][b2] - rhs).norm());
                }
            }
        }
    }
    Ok(dev)
}

/// `phi^{A1} eps^{A2B1} f_{A1A2}`: Bob's state after Alice projects on `f`.
pub fn twospinor_branch(phi: &Qubit, frame: &SpinFrame, leg: Leg) -> Result<Spinor> {
    let tet = bell_tetrad(frame)?;
    let out = measure_leg(phi.in_frame(frame).components(), tet.leg(leg));
    Ok(Spinor::upper(out[0], out[1]))
}

/// Matrix of `s^{B1} -> s^{B1} f_{B1}^{B2}`.
fn twospinor_correction_matrix(f: &Mat2) -> Mat2 {
    // f_{B1}^{B2} = f^{C B2} eps_{C B1}; acting from the left on s gives its transpose.
    (epsilon().transpose() * *f).transpose()
}

pub fn twospinor_correct(state: &Spinor, frame: &SpinFrame, leg: Leg) -> Result<Spinor> {
    if state.priming != Priming::Unprimed || state.variance != Variance::Upper {
        return Err(Error::Priming { left: Priming::Unprimed, right: state.priming });
    }
    let tet = bell_tetrad(frame)?;
    let out = twospinor_correction_matrix(tet.leg(leg)).apply(state.components());
    Ok(Spinor::upper(out[0], out[1]))
}

/// `phi^{A1} eps^{A2B1} g_{A1A2B1}^{B2}` evaluated directly from the rank-4
/// Bell metric (no branch decomposition). Equals `phi^{B2}`.
pub fn twospinor_concise(phi: &Qubit, frame: &SpinFrame) -> Result<Spinor> {
    let tet = bell_tetrad(frame)?;
    let g = tet.metric();
    let eps = epsilon_upper(frame)?;
    let e = epsilon();
    let p = phi.in_frame(frame).components();
    let mut out = [ZERO; 2];
    for (b2, slot) in out.iter_mut().enumerate() {
        let mut acc = ZERO;
        for a1 in 0..2 {
            for a2 in 0..2 {
                for b1 in 0..2 {
                    // g_{A1A2B1}^{B2} = g^{C1C2D1B2} eps_{C1A1} eps_{C2A2} eps_{D1B1}
                    let mut lowered = ZERO;
                    for c1 in 0..2 {
                        for c2 in 0..2 {
                            for d1 in 0..2 {
                                lowered += g[c1][c2][d1][b2]
                                    * e.get(c1, a1)
                                    * e.get(c2, a2)
                                    * e.get(d1, b1);
                            }
                        }
                    }
                    acc += p[a1] * eps.get(a2, b1) * lowered;
                }
            }
        }
        *slot = acc;
    }
    Ok(Spinor::upper(out[0], out[1]))
}

/// Residual of `phi^{A1} eps^{A2B1} f_{a'} f_{b'} = 1/2 f_{C1C2} f^{C2C1} phi_{B2}`.
pub fn tele2_residual(phi: &Qubit, frame: &SpinFrame, leg: Leg) -> Result<f64> {
    let tet = bell_tetrad(frame)?;
    let f = tet.leg(leg);
    let branch = twospinor_branch(phi, frame, leg)?.components();
    let lhs = lower_both(f).apply_left(branch);
    let coeff = lower_both(f).pair(&f.transpose()) * 0.5;
    let rhs = vec_scale(lower_components(phi.in_frame(frame).components()), coeff);
    Ok(vec_max_abs_diff(lhs, rhs))
}

pub fn twospinor_teleport(phi: &Qubit, frame: &SpinFrame) -> Result<ProtocolRun> {
    let tet = bell_tetrad(frame)?;
    let target = phi.in_frame(frame).components();
    let mut branches = Vec::with_capacity(4);
    let mut assembled = [ZERO; 2];
    for leg in Leg::ALL {
        let f = tet.leg(leg);
        let pre = measure_leg(target, f);
        let correction = twospinor_correction_matrix(f);
        let final_state = correction.apply(pre);
        assembled = vec_add(assembled, vec_scale(final_state, c(leg.metric_sign(), 0.0)));
        branches.push(ProtocolTrace {
            branch: leg.label().to_string(),
            alice_outcome: flatten(f),
            pre_correction: pre,
            correction,
            final_state,
            scalar: scalar_factor(final_state, target),
            probability: None,
        });
    }
    Ok(ProtocolRun {
        formalism: Formalism::TwoSpinor,
        input: *phi,
        target,
        branches,
        assembled,
        assembled_scalar: scalar_factor(assembled, target),
    })
}

/// Bell-basis coefficients `phi^{B1B2} f_{B1B2}` in the order `t, x, y, z`.
pub fn bell_overlap(state: &Mat2, tet: &BellTetradSpinor) -> [Complex64; 4] {
    Leg::ALL.map(|leg| full_contraction(state, tet.leg(leg)))
}

/// `c_t t - c_x x - c_y y - c_z z`.
pub fn bell_reconstruct(coeffs: &[Complex64; 4], tet: &BellTetradSpinor) -> Mat2 {
    Leg::ALL.iter().fold(Mat2::zero(), |acc, &leg| {
        acc + *tet.leg(leg) * (coeffs[leg.index()] * leg.metric_sign())
    })
}

// ---------------------------------------------------------------------------

/// Runs a formalism end to end. The Hilbert protocol ignores `frame`.
pub fn teleport(phi: &Qubit, formalism: Formalism, frame: &SpinFrame) -> Result<ProtocolRun> {
    match formalism {
        Formalism::Hilbert => hilbert_run(phi),
        Formalism::Spacetime => spacetime_run(phi, frame),
        Formalism::TwoSpinor => twospinor_teleport(phi, frame),
    }
}

/// Expected assembled scalar per formalism: 1, 2 and 1.
pub fn expected_scalar(formalism: Formalism) -> f64 {
    match formalism {
        Formalism::Hilbert | Formalism::TwoSpinor => 1.0,
        Formalism::Spacetime => 2.0,
    }
}

// ---------------------------------------------------------------------------
// Null-tetrad analogue

/// Terms of `g = n l + l n - mbar m - m mbar` as (measured leg, correcting
/// leg, sign).
pub const NULL_TERMS: [(&str, &str, f64); 4] =
    [("n", "l", 1.0), ("l", "n", 1.0), ("mbar", "m", -1.0), ("m", "mbar", -1.0)];

/// Corrected branches of the null-tetrad analogue: Alice projects
/// `phi^A eps^{A'B'}` on one null leg and Bob corrects with the leg it is
/// paired with in the null resolution of the metric. Returned unsigned, in
/// the order of [`NULL_TERMS`].
pub fn null_branches(phi: &Qubit, frame: &SpinFrame) -> Result<[[Complex64; 2]; 4]> {
    let tet = crate::tetrad::null_tetrad(frame)?;
    let leg = |name: &str| match name {
        "l" => tet.l,
        "n" => tet.n,
        "m" => tet.m,
        _ => tet.mbar,
    };
    let p = phi.in_frame(frame).components();
    Ok(NULL_TERMS.map(|(measured, corrector, _)| {
        let pre = measure_leg(p, &leg(measured));
        spacetime_correction_matrix(&leg(corrector)).apply(pre)
    }))
}

/// Signed sum of the null branches (equals `2 phi`).
pub fn null_assembled(phi: &Qubit, frame: &SpinFrame) -> Result<[Complex64; 2]> {
    let branches = null_branches(phi, frame)?;
    Ok(branches
        .iter()
        .zip(NULL_TERMS)
        .fold([ZERO; 2], |acc, (b, (_, _, s))| vec_add(acc, vec_scale(*b, c(s, 0.0)))))
}

/// True if every non-negligible vector is parallel to one common spinor.
pub fn common_proportionality(vectors: &[[Complex64; 2]], rel_tol: f64) -> bool {
    let scale = vectors.iter().map(|v| crate::linalg::vec_norm(*v)).fold(0.0, f64::max);
    if scale == 0.0 {
        return true;
    }
    let live: Vec<_> = vectors
        .iter()
        .filter(|v| crate::linalg::vec_norm(**v) > rel_tol * scale)
        .collect();
    for (i, u) in live.iter().enumerate() {
        for v in &live[i + 1..] {
            let minor = (u[0] * v[1] - u[1] * v[0]).norm();
            if minor > rel_tol * crate::linalg::vec_norm(**u) * crate::linalg::vec_norm(**v) {
                return false;
            }
        }
    }
    true
}

/// Tolerance used by [`common_proportionality`] in the checks of this crate.
pub const PROPORTIONALITY_TOL: f64 = 1e-9;

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: (f64, f64), b: (f64, f64)) -> Qubit {
        Qubit::new(c(a.0, a.1), c(b.0, b.1)).unwrap()
    }

    #[test]
    fn zero_qubit_rejected() {
        assert!(matches!(Qubit::new(ZERO, ZERO), Err(Error::ZeroSpinor)));
    }

    #[test]
    fn bell_basis_and_corrections() {
        assert!(BellBasis::default().orthonormality_defect() < 1e-15);
        assert!(CorrectionSet::default().unitarity_defect() < 1e-15);
        let u = CorrectionSet::default().unitaries;
        assert_eq!(u[0], Mat2::identity() * -1.0);
        assert_eq!(u[1], Mat2::diag(-ONE, ONE));
        assert_eq!(u[2], crate::linalg::pauli(1));
    }

    #[test]
    fn psi_minus_branch_of_zero_state() {
        let b = standard_decompose(&q((1.0, 0.0), (0.0, 0.0))).unwrap();
        assert_eq!(b[0].outcome, BellState::PsiMinus);
        assert!(vec_max_abs_diff(b[0].bob_state, [-ONE, ZERO]) < 1e-15);
        for branch in b {
            assert!((branch.probability - 0.25).abs() < 1e-15);
        }
    }

    #[test]
    fn phi_minus_branch_correction() {
        let tr = standard_teleport(&q((1.0, 0.0), (0.0, 0.0)), 3).unwrap();
        assert!(vec_max_abs_diff(tr.pre_correction, [ZERO, ONE]) < 1e-15);
        assert!(vec_max_abs_diff(tr.final_state, [ONE, ZERO]) < 1e-15);
        assert!((tr.scalar - ONE).norm() < 1e-15);
    }

    #[test]
    fn invalid_branch() {
        let phi = q((1.0, 0.0), (0.0, 0.0));
        assert!(matches!(standard_teleport(&phi, 0), Err(Error::InvalidBranch(0))));
        assert!(matches!(standard_teleport(&phi, 5), Err(Error::InvalidBranch(5))));
    }

    #[test]
    fn spacetime_branches_standard_frame() {
        let f = SpinFrame::standard();
        let phi = q((1.0, 0.0), (0.0, 0.0));
        let r = FRAC_1_SQRT_2;
        let t = spacetime_branch(&phi, &f, Leg::T).unwrap();
        assert_eq!(t.priming, Priming::Primed);
        assert!(vec_max_abs_diff(t.components(), [ZERO, c(r, 0.0)]) < 1e-15);
        let y = spacetime_branch(&phi, &f, Leg::Y).unwrap();
        assert!(vec_max_abs_diff(y.components(), [c(0.0, -r), ZERO]) < 1e-15);
    }

    #[test]
    fn bob_contraction_table() {
        // t^B_{B'} o^{B'} = -iota/sqrt2 and friends, on the standard frame.
        let f = SpinFrame::standard();
        let r = FRAC_1_SQRT_2;
        let o = [ONE, ZERO];
        let i = [ZERO, ONE];
        let k = |leg| spacetime_correction_matrix(&leg_matrix(&f, leg).unwrap());
        let cases = [
            (Leg::T, o, vec_scale(i, c(-r, 0.0))),
            (Leg::T, i, vec_scale(o, c(r, 0.0))),
            (Leg::X, o, vec_scale(o, c(-r, 0.0))),
            (Leg::X, i, vec_scale(i, c(r, 0.0))),
            (Leg::Y, o, vec_scale(o, c(0.0, -r))),
            (Leg::Y, i, vec_scale(i, c(0.0, -r))),
            (Leg::Z, o, vec_scale(i, c(r, 0.0))),
            (Leg::Z, i, vec_scale(o, c(r, 0.0))),
        ];
        for (leg, input, expect) in cases {
            assert!(vec_max_abs_diff(k(leg).apply(input), expect) < 1e-15, "{leg:?}");
        }
    }

    #[test]
    fn spacetime_sum_is_twice_phi() {
        let phi = q((1.0, 0.0), (0.0, 0.0));
        let out = spacetime_full(&phi, &SpinFrame::standard()).unwrap();
        assert!(vec_max_abs_diff(out.components(), [c(2.0, 0.0), ZERO]) < 1e-15);
    }

    #[test]
    fn bell_tetrad_standard_t() {
        let tet = bell_tetrad(&SpinFrame::standard()).unwrap();
        assert!(tet.t.max_abs_diff(&(Mat2::identity() * FRAC_1_SQRT_2)) < 1e-15);
        let n = tet.norms();
        assert!((n[0] - ONE).norm() < 1e-15);
        for k in 1..4 {
            assert!((n[k] + ONE).norm() < 1e-15);
        }
    }

    #[test]
    fn bell_overlap_of_legs() {
        let tet = bell_tetrad(&SpinFrame::standard()).unwrap();
        let co = bell_overlap(&tet.t, &tet);
        assert!((co[0] - ONE).norm() < 1e-15);
        assert!(co[1..].iter().all(|z| z.norm() < 1e-15));
        // -i y is a real multiple of eps: only the y coefficient survives.
        let co = bell_overlap(&(tet.y * c(0.0, -1.0)), &tet);
        assert!(co[0].norm() < 1e-15 && co[1].norm() < 1e-15 && co[3].norm() < 1e-15);
        assert!((co[2] - c(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn proportionality_test_behaviour() {
        let a = [ONE, c(2.0, 0.0)];
        assert!(common_proportionality(&[a, vec_scale(a, c(0.0, 3.0)), [ZERO, ZERO]], 1e-9));
        assert!(!common_proportionality(&[[ONE, ZERO], [ZERO, ONE]], 1e-9));
    }
}
