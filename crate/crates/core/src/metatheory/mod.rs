//! Derivations, the checker, and proof transformations: weakening,
//! contraction, generalised initial sequents, cut elimination and the
//! translation into Kt*.

mod cut;
mod derivation;
mod init;
mod ktstar;
mod structural;

pub use cut::{cut, cut_with_trace, CallKind, CutCall, CutTrace, Measure};
pub use derivation::{check, check_detailed, CheckFailure, Derivation};
pub use init::generalised_init;
pub use ktstar::to_ktstar;
pub use structural::{contract, contract_to, weaken, weaken_to};

use crate::calculus::CalculusVariant;
use crate::formula::Formula;
use crate::sequent::{LinearNestedSequent, SequentError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MetaError {
    #[error("position {position} out of range for a sequent of length {len}")]
    PositionOutOfRange { position: usize, len: usize },
    #[error("`{formula}` does not occur twice at component {position}")]
    NotDuplicated { position: usize, formula: Formula },
    #[error("`{0}` is not on both sides of the last component")]
    NoSharedFormula(Formula),
    #[error("cut premisses are not structurally compatible")]
    StructuralMismatch,
    #[error("`{0}` is not a cut-formula occurrence in the expected component")]
    NotACutFormulaOccurrence(Formula),
    #[error("input derivation rejected: {0}")]
    InvalidInput(String),
    #[error("transformation is undefined for {0}")]
    UnsupportedVariant(CalculusVariant),
    #[error("`{have}` cannot be weakened to `{want}`")]
    NotASubsequent {
        have: LinearNestedSequent,
        want: LinearNestedSequent,
    },
    #[error("cut measure did not decrease: {0}")]
    MeasureViolation(String),
    #[error("internal error: {0}")]
    Internal(String),
    #[error(transparent)]
    Sequent(#[from] SequentError),
}

/// Re-check a transformation output; failure is an internal error.
pub(crate) fn certify(d: Derivation, v: CalculusVariant, what: &str) -> Result<Derivation, MetaError> {
    check_detailed(&d, v)
        .map(|_| d)
        .map_err(|e| MetaError::Internal(format!("{what} produced an invalid derivation: {e}")))
}
