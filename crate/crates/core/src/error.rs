use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian (residual {residual:e})")]
    NotHermitian { residual: f64 },

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("degenerate cone: {0}")]
    DegenerateCone(String),

    #[error("{0} has no Jordan-algebraic structure here")]
    NoJordanStructure(&'static str),

    #[error(
        "polyhedral models are not embedded constructively; use the polyhedral decision procedure"
    )]
    NotEmbeddableHere,

    #[error("embedding failed verification: {0}")]
    Unverified(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
