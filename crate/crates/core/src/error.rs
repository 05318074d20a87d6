use thiserror::Error;

use crate::detcalc::DetError;
use crate::plumbing::PlumbingError;
use crate::qres::QresError;
use crate::quotient::QuotientError;
use crate::semigroup::SemigroupError;
use crate::splice::SpliceError;

/// Any failure of the end-to-end pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
    #[error(transparent)]
    Quotient(#[from] QuotientError),
    #[error(transparent)]
    Qres(#[from] QresError),
    #[error(transparent)]
    Det(#[from] DetError),
    #[error(transparent)]
    Plumbing(#[from] PlumbingError),
    #[error(transparent)]
    Splice(#[from] SpliceError),
}

impl Error {
    /// True when the input itself was rejected, as opposed to an internal
    /// consistency failure.
    pub fn is_invalid_input(&self) -> bool {
        matches!(self, Error::Semigroup(_))
    }
}
