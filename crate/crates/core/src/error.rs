use thiserror::Error;

/// Errors produced while building registers, Hamiltonians, circuits or
/// while running the variational loop.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid register: {0}")]
    InvalidRegister(String),
    #[error("digit {digit} out of range for site {site} (dim {dim})")]
    DigitOutOfRange { site: usize, digit: usize, dim: usize },
    #[error("basis index {index} out of range (total dim {total_dim})")]
    IndexOutOfRange { index: usize, total_dim: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not unitary (deviation {deviation:.3e})")]
    NotUnitary { deviation: f64 },
    #[error("matrix is not Hermitian (deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },
    #[error("state is not normalized (norm {norm})")]
    NotNormalized { norm: f64 },
    #[error("invalid constraint: {0}")]
    InvalidConstraint(String),
    #[error("slack extension rejected: {0}")]
    SlackNotRepresentable(String),
    #[error("invalid circuit plan: {0}")]
    InvalidPlan(String),
    #[error("invalid bracket for line minimization")]
    InvalidBracket,
    #[error("objective returned a non-finite value at evaluation {n_evaluations}")]
    NonFiniteObjective { n_evaluations: usize },
    #[error("invalid problem instance: {0}")]
    InvalidProblem(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
