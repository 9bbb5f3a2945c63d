use alloc::string::String;

/// Errors reported by the numerical core.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An input value violates the invariants of its type.
    #[error("rejected input: {0}")]
    RejectedInput(String),
    /// An argument is out of range or inconsistent with the others.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// Shapes of two operands do not fit together.
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    /// The circuit carries no information about the trace (prefactor vanishes).
    #[error("uninformative circuit: trace prefactor magnitude {0:e} is below 1e-14")]
    UninformativeCircuit(f64),
    /// An operation restricted to qubits was asked to act on another dimension.
    #[error("unsupported dimension {0}: the measured side must be a qubit")]
    UnsupportedDimension(usize),
    /// A desk-scale size guard was exceeded.
    #[error("size limit exceeded: {what} is {value}, limit {limit}")]
    SizeLimit {
        what: &'static str,
        value: usize,
        limit: usize,
    },
    /// A stated precondition of a theorem-backed operation does not hold.
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// Two independent evaluation routes disagreed.
    #[error("consistency check failed: {0}")]
    Inconsistent(String),
    /// Malformed textual input.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = core::result::Result<T, Error>;
