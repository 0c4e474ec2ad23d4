use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// A denominator Pochhammer factor vanished while the numerator did not.
    #[error("zero denominator in hypergeometric term k = {k}")]
    ZeroDenominator { k: u64 },

    #[error("expected an integer, got {0}")]
    NonInteger(String),

    #[error("spectral grid has coincident points at a = {0} and a = {1}")]
    DegenerateGrid(usize, usize),

    #[error("recurrence residual nonzero at row b = {b}, column a = {a}")]
    InconsistentRecurrence { b: usize, a: usize },

    #[error("singular recurrence system at row b = {0}")]
    SingularSystem(usize),

    #[error("unknown constraint profile `{0}`")]
    ProfileUnknown(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("parse error: {0}")]
    Parse(String),
}
