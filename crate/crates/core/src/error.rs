use thiserror::Error;

/// Everything that can go wrong in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, got {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("matrix is not square: row {row} has {found} entries, expected {expected}")]
    NotSquare { row: usize, expected: usize, found: usize },
    #[error("asymmetric gram matrix: entry ({i},{j}) is {a} but ({j},{i}) is {b}")]
    Asymmetric { i: usize, j: usize, a: i64, b: i64 },
    #[error("unknown root system type '{0}'")]
    UnknownRootKind(String),
    #[error("invalid root system: {0}")]
    InvalidRootSystem(String),
    #[error("class is not ample: omega^2 = {0} is not positive")]
    NotAmple(String),
    #[error("non-integral Mukai vector component n = {0}")]
    NonIntegral(String),
    #[error("zero vector has no finite divisor set")]
    ZeroVector,
    #[error("odd self-pairing {0} violates the even-lattice invariant")]
    OddSelfPairing(String),
    #[error("invalid rational '{0}'")]
    ParseRational(String),
    #[error("config parse error: {0}")]
    ConfigParse(String),
    #[error("invalid config: {0}")]
    InvalidConfig(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("missing algebra value for part {0}")]
    MissingValue(String),
}

pub type Result<T> = std::result::Result<T, Error>;
