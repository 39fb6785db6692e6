use crate::graph::Mode;

/// Errors shared by every module of the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("input graph is not 2-connected")]
    NotTwoConnected,

    #[error("graph has no feasible {mode} solution")]
    Infeasible { mode: Mode },

    #[error("vertex count {n} is below the minimum of {min}")]
    TooFewVertices { n: usize, min: usize },

    #[error("search budget of {budget} nodes exceeded")]
    BudgetExceeded { budget: u64 },

    #[error("invalid dual certificate: {0}")]
    InvalidCertificate(String),

    #[error("precondition violated: {0}")]
    Misuse(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
