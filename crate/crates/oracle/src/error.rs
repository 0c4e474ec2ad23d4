use thiserror::Error;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("dim V_n = {dim} exceeds the cap {cap}")]
    CapExceeded { dim: usize, cap: usize },
    #[error("sector {sector}: numerical rank {found}, expected {expected}")]
    RankMismatch { sector: usize, expected: usize, found: usize },
    #[error("twirl_1 has {found} distinct eigenvalues, expected {expected}")]
    GridMismatch { expected: usize, found: usize },
    #[error("tolerance must be positive and finite")]
    InvalidTolerance,
    #[error(transparent)]
    Core(#[from] pimw_core::Error),
}

pub type Result<T> = std::result::Result<T, OracleError>;
