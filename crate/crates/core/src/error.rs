use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("bad mesh: {0}")]
    BadMesh(String),
    #[error("insufficient boundary conditions: stiffness matrix is singular after constraints")]
    InsufficientBoundaryConditions,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("matrix is not symmetric positive definite")]
    NotPositiveDefinite,
    #[error("translation produced zero vector; adjust delta")]
    ZeroNorm,
    #[error("amplitudes are not normalized (norm^2 = {0})")]
    NotNormalized(f64),
    #[error("qubit index {index} out of range for {qubits}-qubit register")]
    QubitOutOfRange { index: usize, qubits: usize },
    #[error("gate uses qubit {0} as both control and target")]
    OverlappingQubits(usize),
    #[error("register of {0} qubits exceeds the simulator cap")]
    TooManyQubits(usize),
    #[error("empty database")]
    EmptyDatabase,
    #[error("index {index} out of range for database of {len} points")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
