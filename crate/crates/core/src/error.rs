use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("digon between {0} and {1} is not allowed in oriented mode")]
    DigonInOrientedMode(usize, usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("threshold blob {0} has no coordinates")]
    MissingCoordinates(usize),
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("invalid pattern: {0}")]
    InvalidPattern(String),
    #[error("generator list is empty")]
    EmptyGenerators,
    #[error("no divisor of {k} fails to divide {ell}")]
    NoSuchDivisor { k: u64, ell: u64 },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("n too small for this construction (need n >= {n_min})")]
    TooSmall { n_min: usize },
    #[error("no closed form for {0}")]
    NoClosedForm(String),
    #[error("weights are not on the probability simplex")]
    WeightsOffSimplex,
    #[error("eigensolver did not converge: {0}")]
    ConvergenceFailure(String),
    #[error("graph is not an orientation of a complete bipartite graph")]
    NotCompleteBipartite,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("instance too large for exhaustive search (n = {n}, max {max})")]
    TooLarge { n: usize, max: usize },
}
