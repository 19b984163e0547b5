use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("lattice map is not injective for alpha = {alpha}, N = {n}: indices {first} and {second} both map to {image}")]
    NonBijective {
        alpha: String,
        n: usize,
        first: usize,
        second: usize,
        image: usize,
    },

    #[error("inverse lattice map disagrees with the permutation inverse at flat index {index} (alpha = {alpha}, N = {n})")]
    InverseMismatch {
        alpha: String,
        n: usize,
        index: usize,
    },

    #[error(
        "float-mode floor at {value} is within {tolerance:e} of an integer; use a rational alpha"
    )]
    BoundaryAmbiguity { value: f64, tolerance: f64 },

    #[error("grid mismatch: observable has N = {found}, permutation has N = {expected}")]
    GridMismatch { expected: usize, found: usize },

    #[error("curve index {requested} exceeds the configured maximum depth {max}")]
    DepthExceeded { requested: i64, max: i64 },

    #[error("precondition unsatisfiable: {0}")]
    PreconditionUnsatisfiable(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
