use thiserror::Error;

/// Errors raised by construction, arithmetic and audit routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("q must be odd, got {0}")]
    EvenCharacteristic(u64),
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("field size p^k too large for this implementation")]
    FieldTooLarge,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("element has no square root")]
    NotASquare,
    #[error("incompatible tower: {0}")]
    IncompatibleTower(String),
    #[error("polynomial must be non-constant")]
    ConstantPolynomial,
    #[error("polynomial is reducible: {0}")]
    Reducible(String),
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("singular matrix")]
    SingularMatrix,
    #[error("ragged or empty matrix")]
    RaggedMatrix,
    #[error("closure exceeded cap of {cap} elements")]
    CapExceeded { cap: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("generator set is not inverse-closed")]
    NotInverseClosed,
    #[error("generator not contained in closure")]
    GeneratorNotInClosure,
    #[error("group order mismatch: expected {expected}, found {found}")]
    OrderMismatch { expected: u64, found: u64 },
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid subset: {0}")]
    InvalidSubset(String),
    #[error("graph is not regular")]
    NotRegular,
    #[error("graph is not connected")]
    NotConnected,
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("dense eigensolve limited to {limit} vertices, graph has {n}")]
    SizeLimit { n: usize, limit: usize },
    #[error("iterative eigensolver did not converge after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("vertex {0} has degree 1; peel leaves first")]
    DegreeOneVertex(usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("identity violated: {0}")]
    IdentityViolation(String),
    #[error("radius too small for interior audit: {0}")]
    BoundaryContamination(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
