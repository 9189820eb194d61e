use thiserror::Error;

/// Errors raised by state construction, gate algebra and the protocols built on top.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix of shape {rows}x{cols} is not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("expected {expected} entries, got {found}")]
    EntryCount { expected: usize, found: usize },
    #[error("dimension {0} is not a register of 1 to 4 qubits")]
    UnsupportedRegister(usize),
    #[error("matrix is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },
    #[error("trace is {trace}, expected 1")]
    TraceNotOne { trace: f64 },
    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:e})")]
    NotPositive { min_eigenvalue: f64 },
    #[error("matrix is not unitary (max deviation of U^dag U from I is {deviation:e})")]
    NotUnitary { deviation: f64 },
    #[error("observable is not dichotomic (O^2 deviates from I by {deviation:e})")]
    NotDichotomic { deviation: f64 },
    #[error("observable is not traceless (trace {trace})")]
    NotTraceless { trace: f64 },
    #[error("state vector is not normalized (norm^2 = {norm_sqr})")]
    NotNormalized { norm_sqr: f64 },
    #[error("qubit index {index} out of range for a {n_qubits}-qubit register")]
    QubitOutOfRange { index: usize, n_qubits: usize },
    #[error("control and target must differ (both are qubit {0})")]
    SameQubit(usize),
    #[error("invalid qubit set: {0}")]
    InvalidQubitSet(String),
    #[error("expectation value has imaginary part {imag:e}; operator or state is not Hermitian")]
    ImaginaryExpectation { imag: f64 },
    #[error("invalid time pair ({k}, {m}); need 1 <= k < m <= 3")]
    InvalidTimePair { k: usize, m: usize },
    #[error("the three-ancilla circuit requires the observable sigma_z")]
    ObservableNotSigmaZ,
    #[error("{name} = {value} is outside [0, 1]")]
    InvalidProbability { name: &'static str, value: f64 },
    #[error("invasive readout (kick {0}) is not allowed here; use invasive_k")]
    InvasiveReadout(f64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("theta grid is empty")]
    EmptyGrid,
}

pub type Result<T> = std::result::Result<T, Error>;
