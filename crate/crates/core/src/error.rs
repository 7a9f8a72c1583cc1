use thiserror::Error;

/// Errors shared by the whole engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomials belong to different variable tables")]
    TableMismatch,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("substitution target `{0}` occurs in the replacement polynomial")]
    SelfReference(String),
    #[error("no value assigned to variable `{0}`")]
    MissingAssignment(String),
    #[error("assignment for `{0}` is not the conjugate of its partner on the real locus")]
    ConjugationInconsistency(String),
    #[error("variable `{0}` has no weight")]
    MissingWeight(String),
    #[error("invalid weight: weights must be positive integers")]
    InvalidWeight,
    #[error("jet component `{0}` not present in shape")]
    UnknownComponent(String),
    #[error("empty jet window")]
    EmptyWindow,
    #[error("degenerate Hermitian form")]
    DegenerateForm,
    #[error("quadratic form K is identically zero")]
    ZeroForm,
    #[error("invalid class constraints: {0}")]
    InvalidClass(String),
    #[error("group element violates the Hermitian compatibility condition")]
    IncompatibleElement,
    #[error("denominator vanishes at the origin")]
    DenominatorVanishes,
    #[error("point does not lie on the surface")]
    PointOffSurface,
    #[error("surface construction: {0}")]
    BadSurface(String),
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
