use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("cone is not full-dimensional")]
    NotFullDimensional,
    #[error("cone contains a line")]
    NotPointed,
    #[error("monoid is not sharp")]
    NotSharp,
    #[error("cone is not Gorenstein")]
    NotGorenstein,
    #[error("{0:?} is not an element of the monoid")]
    NotInMonoid(crate::lattice::IntVector),
    #[error("{0:?} is not a ray generator of the dual cone")]
    NotARay(crate::lattice::IntVector),
    #[error("origin is not an interior point of the polytope")]
    OriginNotInterior,
    #[error("polytope is not reflexive")]
    NotReflexive,
    #[error("points are collinear")]
    Collinear,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
