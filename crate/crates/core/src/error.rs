use thiserror::Error;

use crate::extremal::FamilyViolation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("not a point of the upper half-plane: {re}+{im}i (imaginary part must be finite and > 0)")]
    InvalidPoint { re: f64, im: f64 },

    #[error("cannot parse complex literal {0:?} (expected e.g. 0.5+0.866i)")]
    Parse(String),

    #[error("matrix is not unimodular: det = {0}")]
    NotUnimodular(f64),

    #[error("matrix is singular")]
    Singular,

    #[error("map reverses orientation: det = {0}")]
    OrientationReversing(f64),

    #[error("geodesic parameter t = {0} outside [0, 1]")]
    ParameterOutOfRange(f64),

    #[error("endpoints coincide")]
    CoincidentPoints,

    #[error("(0, 0) does not name an essential curve")]
    ZeroClass,

    #[error("({0}, {1}) is not a primitive class")]
    NotPrimitive(i64, i64),

    #[error("tori carry different normalizations")]
    NormalizationMismatch,

    #[error("invalid family parameters: {0}")]
    InvalidFamily(FamilyViolation),

    #[error("point ({0}, {1}) lies outside the unit square")]
    OutsideDomain(f64, f64),

    #[error("map does not respect the lattice identifications (boundary mismatch {0:e})")]
    IncompatibleMap(f64),

    #[error("{0}")]
    InvalidArgument(String),
}
