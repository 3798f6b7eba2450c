use thiserror::Error;

/// Every failure the library can report.
///
/// Validation failures on user input, exceeded enumeration budgets, and
/// violated preconditions of the witness extractors are kept apart so the
/// CLI can map them onto distinct exit codes.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("a coloring needs at least 2 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("vertex {vertex} is out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("pair {{{0}, {1}}} is colored more than once")]
    DuplicatePair(usize, usize),
    #[error("pair {{{0}, {1}}} has no color")]
    MissingPair(usize, usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("{what} needs {required} steps but the budget is {budget}")]
    BudgetExceeded {
        what: &'static str,
        required: u128,
        budget: u64,
    },

    #[error("invalid number {0:?}")]
    InvalidNumber(String),
    #[error("arithmetic overflow while {0}")]
    Overflow(&'static str),
    #[error("set elements must be distinct, {0} appears twice")]
    DuplicateElement(String),

    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("not enough spare edges of the padding color: {deficit} more needed")]
    InsufficientPadding { deficit: usize },
    #[error("witness check failed: {0}")]
    WitnessRejected(String),
    #[error("inconsistent input: {0}")]
    Corrupted(String),

    #[error("no solution: {0}")]
    NoSolution(String),

    #[error("malformed JSON: {0}")]
    Json(String),
}

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. })
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
