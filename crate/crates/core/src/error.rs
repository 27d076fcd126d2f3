use thiserror::Error;

use crate::rational::Rational;

pub type Result<T> = std::result::Result<T, Error>;

/// Coarse error classes; the CLI maps each one to a fixed exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Parse,
    Validation,
    Capacity,
    Condition,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid rational literal {0:?}")]
    BadNumber(String),

    #[error("self-loop on vertex {0:?}")]
    SelfLoop(String),

    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(String, String),

    #[error("edge {{{0}, {1}}} has non-positive weight {2}")]
    NonPositiveWeight(String, String, Rational),

    #[error("graph is disconnected: vertex {0:?} is unreachable from {1:?}")]
    Disconnected(String, String),

    #[error("graph has no vertices")]
    EmptyGraph,

    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),

    #[error("vertex index {index} out of range for {n} vertices")]
    VertexOutOfRange { index: usize, n: usize },

    #[error("graph is not a tree: edges {0:?} close a cycle")]
    NotATree(Vec<(usize, usize)>),

    #[error("edge set contains a cycle through edges {0:?}")]
    CycleInForest(Vec<usize>),

    #[error("edge index {0} does not belong to the graph")]
    UnknownEdge(usize),

    #[error("spanning tree enumeration stopped after {reached} trees (limit exceeded); use the oracle method instead")]
    TooManySpanningTrees { reached: usize },

    #[error("{what}: size {got} exceeds capacity {limit}")]
    Capacity {
        what: &'static str,
        limit: usize,
        got: usize,
    },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("total mass is {0}, expected 0")]
    NotZeroMass(Rational),

    #[error("not a probability function: {0}")]
    NotProbability(String),

    #[error("function is not 1-Lipschitz: |u({x}) - u({y})| exceeds d({x}, {y})")]
    NotLipschitz { x: usize, y: usize },

    #[error("function does not vanish at its base point {0}")]
    NotPointed(usize),

    #[error("cut family is not adapted to base point {0}")]
    NotAdapted(usize),

    #[error("invalid cut: {0}")]
    InvalidCut(String),

    #[error("map is not surjective: target vertex {0} has an empty fiber")]
    NotSurjective(usize),

    #[error("map expands distances: d_Y({u}, {v}) > d_X({x}, {y})")]
    Expansive {
        x: usize,
        y: usize,
        u: usize,
        v: usize,
    },

    #[error("map is not exact: no fiber pair over ({u}, {v}) attains d_Y({u}, {v})")]
    NotExact { u: usize, v: usize },

    #[error("closed-form tree coupling unavailable: condition fails at vertices {mu_side:?} (mu side) and {nu_side:?} (nu side)")]
    PlanCondition {
        mu_side: Vec<usize>,
        nu_side: Vec<usize>,
    },

    #[error("coupling margin mismatch at vertex {0}")]
    MarginMismatch(usize),

    #[error("{0}")]
    Invalid(String),
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Parse { .. } | Error::BadNumber(_) => ErrorClass::Parse,
            Error::TooManySpanningTrees { .. } | Error::Capacity { .. } => ErrorClass::Capacity,
            Error::PlanCondition { .. } => ErrorClass::Condition,
            _ => ErrorClass::Validation,
        }
    }
}
