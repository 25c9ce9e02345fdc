use thiserror::Error;

/// Crate-wide error type.
///
/// Variants are grouped by the subsystem that raises them. `Tie` and the
/// budget variants are domain errors a caller may want to react to (the CLI
/// maps them to exit code 1); the rest indicate invalid inputs.
#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop ({0},{0}) is not allowed in a simple graph")]
    SelfLoop(usize),

    #[error("labels must cover all {n} vertices, got {got}")]
    PartialLabels { n: usize, got: usize },

    #[error("overlap is not injective: {side} vertex {vertex} identified twice")]
    OverlapNotInjective { side: &'static str, vertex: usize },

    #[error("graphs are incompatible over the given overlap")]
    IncompatibleOverlap,

    #[error("pebble count k must be at least {min}, got {got}")]
    PebbleCountTooSmall { min: usize, got: usize },

    #[error("ordering is not a permutation of the vertex set")]
    NotAPermutation,

    #[error("alpha must satisfy 0 < alpha < 1, got {0}")]
    AlphaOutOfRange(String),

    #[error("density comparison produced an exact tie for alpha = {alpha} (inadmissible alpha for this instance)")]
    Tie { alpha: String },

    #[error("set difference is empty: the edge/vertex ratio is undefined")]
    EmptyDifference,

    #[error("enumeration budget exceeded: {what} = {got} > {budget}")]
    BudgetExceeded {
        what: &'static str,
        got: usize,
        budget: usize,
    },

    #[error("no verified reference graph is registered for k = {0}")]
    UnsupportedReference(usize),

    #[error("invalid construction parameters: {0}")]
    InvalidParams(String),

    #[error("probability must lie in [0,1], got {0}")]
    ProbabilityOutOfRange(f64),

    #[error("malformed graph file: {0}")]
    MalformedGraph(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for errors that signal a well-formed request whose answer is a
    /// refusal (ties, budgets), as opposed to malformed input.
    pub fn is_domain(&self) -> bool {
        !matches!(
            self,
            Error::MalformedGraph(_) | Error::Io(_) | Error::Json(_)
        )
    }
}
