use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("edge ({0}, {1}) has an endpoint outside 0..{2}")]
    EndpointOutOfRange(usize, usize, usize),
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} is not in a graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("color `{0}` is declared twice")]
    DuplicateColor(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("variable `{0}` is bound twice on one branch")]
    Shadowing(String),
    #[error("no value assigned to free variable `{0}`")]
    MissingAssignment(String),
    #[error("edge formula is reflexive at vertex {0}")]
    ReflexiveEdge(usize),
    #[error("edge formula is asymmetric on the pair ({0}, {1})")]
    AsymmetricEdge(usize, usize),
    #[error("pipeline stage {stage}: {msg}")]
    Stage { stage: usize, msg: String },
    #[error("search space of about 2^{log2_size:.1} exceeds the budget of {budget}")]
    BudgetExceeded { log2_size: f64, budget: u64 },
    #[error("not a star coloring: path {0:?} is 2-colored")]
    InvalidStarColoring(Vec<usize>),
    #[error("not a partition: {0}")]
    NotAPartition(String),
    #[error("not a caterpillar: {0}")]
    NotCaterpillar(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("format error: {0}")]
    Format(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Format(e.to_string())
    }
}
