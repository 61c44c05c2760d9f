use thiserror::Error;

use crate::shape::Location;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid tabloid: {0}")]
    InvalidTabloid(String),

    #[error("column {column} is not strictly increasing")]
    NotColumnStrict { column: usize },

    #[error("value {value} outside [1, {n}]")]
    ValueOutOfRange { value: usize, n: usize },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("tabloid is not a tableau")]
    NotATableau,

    #[error("tabloid is already a tableau")]
    AlreadyTableau,

    #[error("tableau is already Demazure for the given chain")]
    AlreadyDemazure,

    #[error("invalid Q-set: {0}")]
    InvalidQSet(String),

    #[error("invalid chain: {0}")]
    InvalidChain(String),

    #[error("Q-set mismatch: {0}")]
    QSetMismatch(String),

    #[error("column lengths {shape_q:?} of the shape are not contained in Q = {q:?}")]
    ColumnLengthsNotInQ { shape_q: Vec<usize>, q: Vec<usize> },

    #[error("invalid Q-permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid reflection indices ({i}, {j})")]
    InvalidReflection { i: usize, j: usize },

    #[error("chain is not strictly below the other in Bruhat order")]
    NotStrictlyBelow,

    #[error("empty sequence")]
    EmptySequence,

    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid row set: {0}")]
    InvalidRows(String),

    #[error("matrix is singular")]
    Singular,

    #[error("location {0} lies outside the shape")]
    RegionOutsideShape(Location),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("missing input: {0}")]
    Missing(String),
}
