use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unsupported format: {0}")]
    UnsupportedFormat(String),

    #[error("malformed input: {0}")]
    MalformedInput(String),

    #[error("invalid tour: {0}")]
    InvalidTour(String),

    #[error("degenerate instance: {0}")]
    DegenerateInstance(String),

    #[error("degenerate move: {0}")]
    DegenerateMove(String),

    #[error("shape mismatch: expected {expected}, found {found}")]
    ShapeMismatch { expected: String, found: String },

    #[error("corrupt file: {0}")]
    CorruptFile(String),

    #[error("pheromone bounds violated: tau_min {tau_min} > tau_max {tau_max}")]
    BoundViolation { tau_min: f64, tau_max: f64 },

    #[error("no feasible node left to visit from {0}")]
    NoFeasibleNode(usize),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
