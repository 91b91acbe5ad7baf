use thiserror::Error;

/// Errors raised by graph construction, matrix kernels and certificate constructions.
#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("malformed graph6 at byte {offset}: {message}")]
    Graph6 { offset: usize, message: String },
    #[error("duplicate vertex label {label:?} at vertex index {index}")]
    DuplicateVertex { label: String, index: usize },
    #[error("loop edge on {label:?} at edge index {index}")]
    LoopEdge { label: String, index: usize },
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("clique-sum precondition failed: {0}")]
    CliqueSum(String),
    #[error("{0:?} is not a cut-vertex")]
    NotCutVertex(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("columns are linearly dependent (rank {rank} < {cols})")]
    RankDeficient { rank: usize, cols: usize },
    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:e})")]
    NotPsd { min_eigenvalue: f64 },
    #[error("matrix is not Hermitian (residual {residual:e})")]
    NotHermitian { residual: f64 },
    #[error("columns are not orthonormal (residual {residual:e})")]
    NotOrthonormal { residual: f64 },
    #[error("matrix is not an orthogonal projector (residual {residual:e})")]
    NotProjector { residual: f64 },
    #[error("{what} failed verification: {violations} violation(s), first: {first}")]
    Unverified {
        what: String,
        violations: usize,
        first: String,
    },
    #[error("mismatch: {0}")]
    Mismatch(String),
    #[error("no admissible beta after {retries} draws; block ({row}, {col}) cancels")]
    BetaSearchExhausted {
        retries: usize,
        row: String,
        col: String,
    },
    #[error("refused: {0}")]
    Refused(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
