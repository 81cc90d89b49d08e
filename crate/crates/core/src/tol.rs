//! Tolerances shared by constructors, checks and the verification suite.

/// Invariants checked when a value is constructed.
pub const CONSTRUCTION: f64 = 1e-12;
/// Checks after chains of transformations.
pub const CHAINED: f64 = 1e-10;
/// Exact round trips (component <-> matrix, Bell-basis Gram matrix).
pub const ROUND_TRIP: f64 = 1e-14;
/// Hermiticity of density matrices and tracelessness of Pauli-Lubanski projections.
pub const HERMITIAN: f64 = 1e-13;
