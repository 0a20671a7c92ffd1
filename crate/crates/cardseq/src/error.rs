//! Shared error type for all modules.

use alloc::string::String;
use core::fmt;

/// Errors raised by the symbolic machinery.
///
/// Validation problems (violated poset axioms, malformed certificates) are
/// *not* errors: they are collected into reports. `Error` is reserved for
/// precondition failures and resource guards.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Left subtraction `d - z` with `z > d`.
    Underflow,
    /// A ladder or decomposition was requested for a non-limit ordinal.
    NotLimit,
    /// An ordinal fell outside the expected range (e.g. `alpha >= delta`).
    OutOfRange(String),
    /// Interval-tree or closure computation exceeded its depth guard.
    DepthExceeded,
    /// Enumeration index outside the order type of the enumerated set.
    IndexRange,
    /// Extended orbit requested for an ordinal of cofinality below κ.
    CofTooSmall,
    /// Block orbit requested for the block `S`.
    IsSBlock,
    /// Subspace selection applied to a set that is not downward closed.
    OpenRequired,
    /// Toy good-space parameters cannot realise the requested sequences.
    Infeasible(String),
    /// Certificate generator gave up after its retry budget.
    GenerationFailed(String),
    /// The β-recursion of the amalgamation found an empty candidate set.
    BetaUnavailable(String),
    /// Selection plan requested for a sequence outside `D_κ`.
    NotInD(String),
    /// An operation that needs a nonempty sequence received an empty one.
    EmptySequence,
    /// Text or JSON input could not be parsed into the ordinal class.
    Parse(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Underflow => write!(f, "left subtraction underflow"),
            Error::NotLimit => write!(f, "ordinal is not a limit"),
            Error::OutOfRange(s) => write!(f, "out of range: {s}"),
            Error::DepthExceeded => write!(f, "depth guard exceeded"),
            Error::IndexRange => write!(f, "enumeration index out of range"),
            Error::CofTooSmall => write!(f, "cofinality below kappa"),
            Error::IsSBlock => write!(f, "block orbit undefined for S"),
            Error::OpenRequired => write!(f, "subset is not downward closed"),
            Error::Infeasible(s) => write!(f, "infeasible parameters: {s}"),
            Error::GenerationFailed(s) => write!(f, "generation failed: {s}"),
            Error::BetaUnavailable(s) => write!(f, "beta recursion has no candidate: {s}"),
            Error::NotInD(s) => write!(f, "sequence is not in D: {s}"),
            Error::EmptySequence => write!(f, "empty sequence"),
            Error::Parse(s) => write!(f, "parse error: {s}"),
        }
    }
}

impl core::error::Error for Error {}
