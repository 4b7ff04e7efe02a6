use thiserror::Error;

/// Errors raised by constructors and operations of this crate.
///
/// Mathematical check failures (an axiom that does not hold, an obstruction
/// that blocks integration) are reported as data in the various report types,
/// not through this enum.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("alternation violated: {0}")]
    AlternationViolation(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("duplicate entry {0}")]
    DuplicateEntry(String),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),
    #[error("expected a cochain pair at level {expected}, found level {found}")]
    LevelError { expected: usize, found: usize },
    #[error("malformed deformation data: {0}")]
    ShapeError(String),
    #[error("deformation equations violated: {0}")]
    EquationsViolated(String),
    #[error("deformations are not related by the given gauge: {0}")]
    NotEquivalent(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
