//! Error type shared by every module of the crate.

use thiserror::Error;

/// All recoverable failures produced by the library.
///
/// Structural misuse (mismatched shapes, mixed moduli) panics instead;
/// those are programming errors, not data-dependent outcomes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("division by zero")]
    DivisionByZero,

    #[error("cannot enumerate {requested} elements of GF({field_size})")]
    EnumerationExceedsField { requested: u64, field_size: u64 },

    #[error("linear system has no solution")]
    NoSolution,

    #[error("matrix does not lie in the span of the given basis")]
    NotInSpan,

    #[error("precondition failed: {0}")]
    PreconditionFailed(&'static str),

    #[error("field GF({field}) too small; need at least {required} elements")]
    FieldTooSmall { field: u64, required: u64 },

    #[error("rank did not increase; an input hypothesis is violated")]
    RankDidNotIncrease,

    #[error("no invariant complement exists; the module is not semisimple")]
    NoComplement,

    #[error("subspace is not invariant under the module actions")]
    NotInvariant,

    #[error("action count mismatch: {left} vs {right}")]
    ActionCountMismatch { left: usize, right: usize },

    #[error("coefficient matrices at indices {0:?} have rank greater than one")]
    RankOneViolation(Vec<usize>),

    #[error("given vectors do not generate the module")]
    DoesNotGenerate,

    #[error("enumeration of {required} states exceeds the cap of {cap}")]
    CapExceeded { required: u128, cap: u64 },

    #[error("internal invariant breached: {0}")]
    Internal(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
