use thiserror::Error;

use crate::spinor::{Priming, Variance};

/// Errors raised when an operation's preconditions or a type invariant fail.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("expected a spinor with {expected:?} variance, got {found:?}")]
    Variance { expected: Variance, found: Variance },

    #[error("cannot combine a {left:?} spinor with a {right:?} spinor")]
    Priming { left: Priming, right: Priming },

    #[error("spin-frame is not normalized: o_A iota^A = {re}{im:+}i")]
    Unnormalized { re: f64, im: f64 },

    #[error("matrix is not Hermitian (deviation {0:e})")]
    NotHermitian(f64),

    #[error("matrix is not unimodular: |det - 1| = {0:e}")]
    NotUnimodular(f64),

    #[error("tetrad violates its normalization (max deviation {0:e})")]
    InvalidTetrad(f64),

    #[error("four-momentum is not future-pointing (p0 = {0})")]
    NotFuturePointing(f64),

    #[error("four-momentum is off-shell: p.p = {norm}, m^2 = {mass_sq}")]
    OffShell { norm: f64, mass_sq: f64 },

    #[error("invalid mass {0}")]
    InvalidMass(f64),

    #[error("momentum is parallel to the reference flagpole (denominator {0:e})")]
    DegenerateDirection(f64),

    #[error("spinor is zero")]
    ZeroSpinor,

    #[error("reference spinor is not an eigen-spinor of the transformation (residual {0:e})")]
    NotEigenSpinor(f64),

    #[error("branch index {0} out of range 1..=4")]
    InvalidBranch(usize),

    #[error("momentum grid is not closed under the transformation: no source point for p = {0:?}")]
    GridClosure([f64; 4]),

    #[error("amplitude packet is not normalized (total weight {0})")]
    UnnormalizedPacket(f64),

    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),

    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
