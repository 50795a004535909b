use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("malformed input: {0}")]
    Format(String),
    #[error("subset index {index} outside 1..={n}")]
    OutOfRange { index: usize, n: usize },
    #[error("antichain members must be nonempty")]
    EmptyMember,
    #[error("generator count mismatch: {0} vs {1}")]
    GeneratorMismatch(usize, usize),
    #[error("N = {n} exceeds the enumeration cap {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("not an ideal: {0}")]
    NotAnIdeal(String),
    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),
    #[error("covering precondition failed: {0}")]
    Covering(String),
    #[error("covering is not distributive; refusing to glue")]
    NotDistributive,
    #[error("incompatible local data: {0}")]
    Incompatible(String),
    #[error("invalid sheaf: {0}")]
    InvalidSheaf(String),
    #[error("invalid Hopf data: {0}")]
    InvalidHopf(String),
    #[error("invalid comodule algebra: {0}")]
    InvalidComodule(String),
    #[error("strong connection check failed: {0}")]
    Connection(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}
