//! Two-spinor calculus for qubits: SL(2,C) spinor algebra, Minkowski and null
//! tetrads, three equivalent formulations of teleportation, and relativistic
//! spin-frames with their Wigner action on momentum-space amplitudes.

// Component loops mirror index notation; iterator rewrites obscure them.
#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod experiment;
pub mod linalg;
pub mod relativistic;
pub mod sample;
pub mod spinor;
pub mod teleport;
pub mod tetrad;
pub mod tol;
pub mod verify;

pub use error::{Error, Result};
pub use linalg::Mat2;
pub use num_complex::Complex64;
pub use relativistic::{
    BargmannAmplitudes, FourMomentum, FrameFamily, MomentumSpinFrame, WignerMatrix,
};
pub use spinor::{Priming, Sl2c, SpinFrame, Spinor, Variance, WorldVector};
pub use teleport::{Formalism, ProtocolRun, ProtocolTrace, Qubit};
pub use tetrad::{Leg, MetricTensor, MinkowskiTetrad, NullTetrad};
