use thiserror::Error;

/// Errors shared by every module in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{qubits} qubits exceed the 10-qubit working limit")]
    DimensionLimit { qubits: usize },
    #[error("qubit index {index} out of range for a {num_qubits}-qubit system")]
    QubitIndex { index: usize, num_qubits: usize },
    #[error("qubit subset must be non-empty, sorted and duplicate-free")]
    InvalidSubset,
    #[error("expected a {expected}-qubit object, got {actual} qubits")]
    QubitCount { expected: usize, actual: usize },
    #[error("amplitude count {len} is not a power of two matching {qubits} qubits")]
    AmplitudeCount { len: usize, qubits: usize },
    #[error("matrix is not Hermitian (max deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },
    #[error("not a density matrix: {0}")]
    NotDensityMatrix(String),
    #[error("norm deviates from 1 by {deviation:.3e}, beyond the accepted tolerance")]
    Normalization { deviation: f64 },
    #[error("zero vector cannot be normalized")]
    ZeroVector,
    #[error("non-finite amplitude")]
    NonFinite,
    #[error("eigensolver failed to converge")]
    EigenConvergence,
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("concurrence triple is inconsistent: {0}")]
    InconsistentConcurrences(String),
    #[error("invalid state description: {0}")]
    StateDescription(String),
}

pub type Result<T> = std::result::Result<T, Error>;
