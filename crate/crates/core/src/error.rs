use thiserror::Error;

/// Errors produced by the workbench.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: malformed header: {reason}")]
    MalformedHeader { line: usize, reason: String },

    #[error("line {line}: malformed edge: {reason}")]
    MalformedEdge { line: usize, reason: String },

    #[error("line {line}: duplicate edge {edge:?}")]
    DuplicateEdge { line: usize, edge: Vec<u32> },

    #[error("line {line}: vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { line: usize, vertex: u64, n: usize },

    #[error("edge count mismatch: header declares {declared}, found {found}")]
    EdgeCountMismatch { declared: usize, found: usize },

    #[error("malformed graph6 string: {0}")]
    Graph6(String),

    #[error("no subgraph spans more than r vertices")]
    NoDenseSubgraph,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("instance too large: {0}")]
    TooLarge(String),

    #[error("search budget of {budget} nodes exceeded ({progress})")]
    BudgetExceeded { budget: u64, progress: String },

    #[error("alpha = {alpha} does not exceed r - 1/m_r(H) = {threshold}")]
    AlphaTooSmall { alpha: String, threshold: String },

    #[error("level too low: {0}")]
    LevelTooLow(String),

    #[error("missing table entry ex({0}, H)")]
    MissingEntry(usize),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("copy hypergraph is not linear: hyperedges {0} and {1} share more than one vertex")]
    NotLinear(usize, usize),

    #[error("i/o: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Io(e.to_string())
    }
}
