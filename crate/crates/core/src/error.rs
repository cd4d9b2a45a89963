use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("not an octavian: {0}")]
    NotOctavian(String),

    #[error("not a lattice vector: {0}")]
    NotLatticeVector(String),

    #[error("self-check failed: {0}")]
    SelfCheck(String),

    #[error("reflection w_{index} disagrees between linear and matrix forms: {detail}")]
    ReflectionMismatch { index: i32, detail: String },

    #[error("invalid generator index {0}")]
    InvalidGenerator(i32),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("series has no inverse over the integers: leading coefficient {0}")]
    NotInvertible(String),

    #[error("unsupported Eisenstein weight {0}")]
    UnsupportedWeight(u32),

    #[error("coefficient at exponent {exponent} is beyond the known precision {prec}")]
    BeyondPrecision { exponent: i64, prec: i64 },

    #[error("expected an integral value, got {0}")]
    NonIntegral(String),

    #[error("height {height} exceeds the configured bound {bound}")]
    HeightBound { height: i64, bound: i64 },

    #[error("table format: {0}")]
    Table(String),
}
