use thiserror::Error;

/// Errors raised by constructions and computations in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("simplex `{simplex}`: face {face} refers to missing simplex `{target}`")]
    DanglingReference {
        simplex: String,
        face: usize,
        target: String,
    },
    #[error("simplex `{simplex}`: simplicial identity d_{i} d_{j} = d_{jm1} d_{i} fails ({left} vs {right})", jm1 = j - 1)]
    IdentityViolation {
        simplex: String,
        i: usize,
        j: usize,
        left: String,
        right: String,
    },
    #[error("simplex `{simplex}`: formal simplex `{formal}` is not in canonical form")]
    NonCanonical { simplex: String, formal: String },
    #[error("simplex `{simplex}`: {reason}")]
    Malformed { simplex: String, reason: String },
    #[error("duplicate simplex identifier `{0}`")]
    DuplicateId(String),
    #[error("dimension cap {dim_cap} is smaller than required dimension {required}")]
    DimCapTooSmall { dim_cap: usize, required: usize },
    #[error("degree {degree} is outside the validated range (max {max})")]
    DegreeOutOfRange { degree: usize, max: usize },
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("incompatible relation: {0}")]
    IncompatibleRelation(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("invalid homomorphism: {0}")]
    InvalidHomomorphism(String),
    #[error("invalid cocycle: {0}")]
    InvalidCocycle(String),
    #[error("space is not connected ({components} components)")]
    Disconnected { components: usize },
    #[error("enumeration bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("mismatch: {0}")]
    Mismatch(String),
    #[error("invalid tower: {0}")]
    InvalidTower(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("unknown corpus entry `{0}`")]
    UnknownCorpusEntry(String),
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
