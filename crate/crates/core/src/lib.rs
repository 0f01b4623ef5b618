//! Two-qubit circuit synthesis over CNOT-based gate libraries.
//!
//! The crate decomposes arbitrary two-qubit unitaries into universal
//! three-CNOT circuits (15 one-parameter rotations, or 10 basic gates),
//! classifies operators up to local equivalence with the `γ` invariant and
//! its characteristic polynomial, and rewrites elementary-gate circuits with
//! standard CNOT/rotation identities.
//!
//! Conventions used throughout:
//!
//! * qubit 0 is the top wire and the *left* tensor factor, so `a ⊗ b` puts
//!   `a` on qubit 0;
//! * a [`Circuit`](circuit::Circuit) lists gates in application order, its
//!   matrix is the product with later gates multiplied on the left;
//! * `R_n(θ) = exp(-i θ σ_n / 2)`.

pub mod circuit;
pub mod cli;
mod error;
pub mod haar;
pub mod invariants;
pub mod numerics;
pub mod rewrite;
pub mod synthesis;

pub use error::{Error, Result};

/// Tolerances shared by the modules.
pub mod tol {
    /// Verification bound for synthesized circuits (phase distance).
    pub const VERIFY: f64 = 1e-8;
    /// Threshold for invariant-based classification (cost classes, coset tests).
    pub const CLASSIFY: f64 = 1e-8;
    /// Accepted deviation from unitarity for inputs, `‖M†M − I‖_F`.
    pub const UNITARY: f64 = 1e-8;
    /// Relative cluster width for degenerate eigenvalues of `Re(P)`.
    pub const CLUSTER: f64 = 1e-8;
    /// Rotations with `|angle|` below this are dropped after merging.
    pub const ANGLE: f64 = 1e-13;
}
