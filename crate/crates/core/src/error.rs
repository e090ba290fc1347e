use alloc::string::String;

/// Errors raised by the core library.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid affine type: {0}")]
    InvalidType(String),
    #[error("index {index} out of range (size {size})")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("ambient mismatch: cannot mix classical and affine weights")]
    AmbientMismatch,
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("non-integral weight: {0}")]
    NonIntegral(String),
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("integrality violation: maximum of h^{label} is {value}")]
    IntegralityViolation { label: usize, value: String },
    #[error("breakpoint {0} is not on the 1/{1} grid")]
    GridViolation(String, u64),
    #[error("path is already classical")]
    AlreadyClassical,
    #[error("Weyl action failed at label {0}: operator string ended early")]
    WeylAction(usize),
    #[error("a window bound is required to generate an affine crystal")]
    BoundRequired,
    #[error("node cap of {0} exceeded")]
    NodeCap(usize),
    #[error("graph is truncated; operation needs a closed crystal")]
    Truncated,
    #[error("unregistered element: {0}")]
    Unregistered(String),
    #[error("inconsistent energy at pair ({0}, {1}): {2} vs {3}")]
    InconsistentEnergy(usize, usize, i64, i64),
    #[error("tensor square is disconnected: {0} of {1} pairs reached")]
    DisconnectedTensorSquare(usize, usize),
    #[error("vector is not weight-homogeneous")]
    NotHomogeneous,
    #[error("shape mismatch")]
    ShapeMismatch,
    #[error("negative valuation: element is not in the lattice")]
    NotInLattice,
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = core::result::Result<T, Error>;
