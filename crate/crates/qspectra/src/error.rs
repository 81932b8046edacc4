//! Crate-wide error type.

/// Errors produced by domain construction, transforms, and analyses.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid domain: {0}")]
    InvalidDomain(String),

    #[error("cyclotomic order mismatch: {0} vs {1}")]
    OrderMismatch(u32, u32),

    #[error("order {0} does not divide {1}")]
    OrderNotDivisible(u32, u32),

    #[error("coordinate value {value} out of range for q = {q}")]
    CoordOutOfRange { value: u32, q: u32 },

    #[error("point index {index} out of range for domain of size {size}")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("variable index {index} out of range for n = {n}")]
    VariableOutOfRange { index: usize, n: u32 },

    #[error("coordinate tuple has {got} entries, expected n = {expected}")]
    WrongArity { got: usize, expected: u32 },

    #[error("value table has {got} entries, expected q^n = {expected}")]
    WrongLength { got: usize, expected: usize },

    #[error("value {value} not allowed for kind {kind}")]
    InvalidValue { value: String, kind: &'static str },

    #[error("operation requires q = 2, got q = {0}")]
    RequiresBinary(u32),

    #[error("kind {kind} not supported here: {why}")]
    KindMismatch {
        kind: &'static str,
        why: &'static str,
    },

    #[error("degree undefined: the function is identically zero")]
    ZeroFunction,

    #[error("inverse transform is not integral at flat index {0}")]
    NonIntegralInverse(usize),

    #[error("interpolation nodes must be pairwise distinct")]
    RepeatedNodes,

    #[error("retract requires n >= 2, got n = {0}")]
    RetractArity(u32),

    #[error("no applicable bound")]
    NoApplicableBound,

    #[error("infeasible corpus: {0}")]
    InfeasibleCorpus(String),

    #[error("law {law} does not apply to {what}")]
    LawNotApplicable { law: &'static str, what: String },

    #[error("unknown family: {0}")]
    UnknownFamily(String),

    #[error("invalid family parameters: {0}")]
    InvalidFamily(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
