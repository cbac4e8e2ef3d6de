//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("ambient dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("malformed rational literal `{0}`")]
    BadNumber(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("generator {index} is not invertible")]
    NonInvertibleGenerator { index: usize },
    #[error("generator {index} has dimension {got}, expected {expected}")]
    GeneratorDimension { index: usize, expected: usize, got: usize },
    #[error("group too large or infinite (cap {cap} exceeded)")]
    CapExceeded { cap: usize },
    #[error("element index {index} out of range (order {order})")]
    BadElementIndex { index: usize, order: usize },
    #[error("member set is not a subgroup: {reason}")]
    NotASubgroup { reason: String },
    #[error("circle weight must be nonzero")]
    ZeroWeight,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupoidError {
    #[error("structure table `{table}` has length {got}, expected {expected}")]
    TableLength { table: &'static str, expected: usize, got: usize },
    #[error("index {index} out of range in table `{table}`")]
    BadIndex { table: &'static str, index: usize },
    #[error("invalid action table: {reason}")]
    InvalidAction { reason: String },
    #[error("map is not total: missing value for {0}")]
    PartialMap(usize),
    #[error("morphism does not commute with structure maps: {0}")]
    NotAMorphism(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StrataError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("intersection poset exceeds cap {cap}")]
    PosetCapExceeded { cap: usize },
    #[error("strata {base} and {upper} are not incident")]
    NotIncident { base: usize, upper: usize },
    #[error("stratified-map hypothesis fails on piece {piece}: {reason}")]
    HypothesisViolation { piece: String, reason: String },
    #[error("subspace is not spanned by coordinate axes; restrict after a linear change of coordinates")]
    NonCoordinateSubspace,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormsError {
    #[error("ambient dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("subspace is not spanned by coordinate axes; restrict after a linear change of coordinates")]
    NonCoordinateSubspace,
    #[error("polynomial map has {got} components, expected {expected}")]
    BadMapArity { expected: usize, got: usize },
    #[error("form parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProbeError {
    #[error("strata {base} and {upper} are not incident")]
    NotIncident { base: usize, upper: usize },
    #[error("polynomial {index} is not invariant under the group action")]
    NotInvariant { index: usize },
    #[error("probe configuration invalid: {0}")]
    BadConfig(String),
    #[error("base point does not lie in the closure of the base stratum")]
    BadBasePoint,
}
