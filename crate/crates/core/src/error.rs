use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse rational `{0}`")]
    ParseScalar(String),
    #[error("incompatible base ring: {0}")]
    IncompatibleBaseRing(String),
    #[error("elements belong to different algebras: {0} vs {1}")]
    SpecMismatch(String, String),
    #[error("image of x is not a unit, so x^-1 has no image: {0}")]
    NonInvertibleImage(String),
    #[error("{0} admits no two-dimensional calculus of this family")]
    NotAdmissibleSpec(String),
    #[error("no divergence preimage found for {0}")]
    NoPreimage(String),
    #[error("invalid algebra: {0}")]
    InvalidSpec(String),
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
