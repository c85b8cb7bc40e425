use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("qubit index {site} out of range for {n_qubits} qubits")]
    SiteOutOfRange { site: usize, n_qubits: usize },

    #[error("site list must be strictly increasing, got {0:?}")]
    UnsortedSites(Vec<usize>),

    #[error("raised and lowered site sets overlap at qubit {0}")]
    OverlappingSites(usize),

    #[error("size mismatch: expected {expected}, got {actual}")]
    SizeMismatch { expected: usize, actual: usize },

    #[error("{what} with {n_qubits} qubits exceeds the configured cap of {cap}")]
    TooManyQubits {
        what: &'static str,
        n_qubits: usize,
        cap: usize,
    },

    #[error("state needs at least one qubit")]
    NoQubits,

    #[error("state is not normalized (norm² = {0})")]
    NotNormalized(f64),

    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),

    #[error("density matrix trace is {0}, expected 1")]
    BadTrace(f64),

    #[error("density matrix has eigenvalue {0:e} below tolerance")]
    NotPositiveSemidefinite(f64),

    #[error("invalid spin triad: {0}")]
    InvalidTriad(&'static str),

    #[error("correlator value {0} exceeds the 1/4 coherence bound")]
    InvalidCorrelator(f64),

    #[error("correlator order n₊ + n₋ = {order} exceeds {n_qubits} qubits")]
    InvalidOrder { order: usize, n_qubits: usize },

    #[error("eigensolver did not converge after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("dense eigendecomposition failed")]
    EigenFailure,

    #[error("degenerate grid: {0}")]
    DegenerateGrid(&'static str),

    #[error("binomial weights overflowed for {0} atoms")]
    Overflow(usize),
}
