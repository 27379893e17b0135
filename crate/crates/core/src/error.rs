use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("pole: {value} is undefined at q = {point}")]
    Pole { value: String, point: String },

    #[error("ambient dimension mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },

    #[error("cannot combine quantum and classical modules")]
    FlavorMismatch,

    #[error("inconsistent module: {0}")]
    InconsistentModule(String),

    #[error("resource limit: {what} needs block of size {size}, limit is {limit}")]
    ResourceLimit { what: String, size: usize, limit: usize },

    #[error("polynomials over different modules (l = {left} vs l = {right})")]
    MixedModule { left: usize, right: usize },

    #[error("indices must satisfy 0 <= a < b < c <= l, got ({a}, {b}, {c}) with l = {l}")]
    IndexOrder { a: usize, b: usize, c: usize, l: usize },

    #[error("variable index {index} out of range 0..={max}")]
    IndexRange { index: usize, max: usize },

    #[error("module structure only available for n in {{1, 2}}, got n = {0}")]
    UnsupportedRank(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
