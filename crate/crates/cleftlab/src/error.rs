//! Crate-wide error type.
//!
//! Every fallible operation in the library reports one of these variants.
//! The CLI maps them onto its exit-code contract: `InputError`,
//! `FieldTooSmall`, `NotFiniteDimensional` and `NotCertifiedGorenstein` are
//! input errors (exit 2), `InvalidAlgebra` and `SoundnessViolation` are
//! property violations (exit 1), `Inconclusive` is exit 3.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or inconsistent input data (shape mismatches, failed
    /// invariants, unresolved references, bad manifests).
    #[error("input error: {0}")]
    InputError(String),

    /// An algebra table failed validation: the message lists every violated
    /// invariant (associativity triples, unit failures, radical defects).
    /// Distinct from `InputError` because a well-formed but wrong table is a
    /// property violation, not a malformed file.
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    /// The field modulus is too small for an algorithm that requires
    /// `p > bound` (radical computation, enveloping algebras).
    #[error("field too small: p = {p} but the computation requires p > {bound}")]
    FieldTooSmall { p: u64, bound: u64 },

    /// A path-algebra quotient still has a surviving path at the length cap,
    /// so the algebra is not certified finite-dimensional within the cap.
    #[error("not finite dimensional: {0}")]
    NotFiniteDimensional(String),

    /// A bimodule (or ideal) failed a nilpotence requirement.
    #[error("not nilpotent: {0}")]
    NotNilpotent(String),

    /// Gorenstein-projective membership was requested for an algebra that is
    /// not certified Iwanaga-Gorenstein; the test is refused, not answered.
    #[error("not certified Gorenstein: {0}")]
    NotCertifiedGorenstein(String),

    /// An internal cross-check that must hold mathematically was violated.
    /// This indicates a defect in the tool (or in one of its design
    /// decisions), never in the input; it is surfaced loudly instead of
    /// being folded into a verdict.
    #[error("soundness violation: {0}")]
    SoundnessViolation(String),

    /// A verdict could not be resolved within the configured cutoffs.
    #[error("inconclusive: {0}")]
    Inconclusive(String),
}

pub type Result<T> = std::result::Result<T, Error>;
