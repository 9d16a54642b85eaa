use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("operator is not Hermitian (max deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("partition mismatch: {0}")]
    PartitionMismatch(String),

    #[error("block index {index} out of range for {blocks} blocks")]
    IndexOutOfRange { index: usize, blocks: usize },

    #[error("Hermitian eigendecomposition did not converge")]
    EigenDecompositionFailure,

    #[error("no multistart run converged")]
    NoConvergedSolution,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unsupported space: {0}")]
    UnsupportedSpace(String),

    #[error("problem too large for the oracle: {0}")]
    DimensionGuard(String),

    #[error("not a density matrix: {0}")]
    NotDensityMatrix(String),

    #[error("malformed input: {0}")]
    Format(String),
}

impl Error {
    /// Stable machine-readable name, used in CLI error objects and the C ABI.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::NotHermitian { .. } => "NotHermitian",
            Error::InvalidPartition(_) => "InvalidPartition",
            Error::PartitionMismatch(_) => "PartitionMismatch",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::EigenDecompositionFailure => "EigenDecompositionFailure",
            Error::NoConvergedSolution => "NoConvergedSolution",
            Error::InvalidArgument(_) => "InvalidArgument",
            Error::UnsupportedSpace(_) => "UnsupportedSpace",
            Error::DimensionGuard(_) => "DimensionGuard",
            Error::NotDensityMatrix(_) => "NotDensityMatrix",
            Error::Format(_) => "Format",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
