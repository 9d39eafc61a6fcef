use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero polynomial")]
    DivisionByZero,
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("self-loop {0} in edge list; use \"loop {0} w\" instead")]
    SelfLoopInEdgeList(usize),
    #[error("invalid vertex {0}")]
    InvalidVertex(usize),
    #[error("hypothesis (1) violated at position {0}")]
    MirrorViolated(usize),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("excluded case: {0}")]
    ExcludedCase(String),
    #[error("G[θ] undefined: gadget alpha has a pole at position {0}")]
    LoopUndefined(usize),
    #[error("input is not a tree")]
    NotATree,
    #[error("too large: {0}")]
    TooLarge(String),
    #[error("internal invariant failed: {0}")]
    Invariant(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code used by the CLI: 2 for broken invariants, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Invariant(_) => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
