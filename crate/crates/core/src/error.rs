use thiserror::Error;

use crate::comb::DependenceWitness;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension {got} out of range 0..={max}")]
    DimensionOutOfRange { got: usize, max: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unknown cell `{0}`")]
    UnknownCell(String),

    #[error("cell `{id}` has dimension {dim}, expected a top-dimensional cell of dimension {top}")]
    NotTopCell { id: String, dim: usize, top: usize },

    #[error("duplicate cell id `{0}`")]
    DuplicateCell(String),

    #[error("malformed cell `{id}`: {reason}")]
    MalformedCell { id: String, reason: String },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid complex file at `{field}`: {message}")]
    Schema { field: String, message: String },

    #[error("invalid face word `{0}`")]
    InvalidFace(String),

    #[error("the top cell has no dual under the proper-face pairing")]
    TopCellHasNoDual,

    #[error("ambient complex has nonzero β_{dim} = {betti}; spanning trees are undefined")]
    AmbientNotAcyclic { dim: isize, betti: usize },

    #[error("input is not a spanning tree: {0}")]
    NotATree(String),

    #[error("configuration is {}-dependent with difference {}", .0.pairs.len(), .0.difference)]
    Dependent(Box<DependenceWitness>),

    #[error("no generic configuration found after {0} attempts")]
    SamplingExhausted(usize),

    #[error("arithmetic identity produced a non-integral value {0}")]
    NonIntegral(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
