use thiserror::Error;

/// Errors reported by the library and the command line front end.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown root system type {0:?}")]
    UnknownType(String),
    #[error("invalid rank {rank} for type {label}")]
    InvalidRank { label: char, rank: usize },
    #[error("vertex {vertex} is out of range 1..={rank}")]
    VertexOutOfRange { vertex: usize, rank: usize },
    #[error("invalid subset: {0}")]
    InvalidSubset(String),
    #[error("word {0:?} is not reduced")]
    NotReduced(Vec<usize>),
    #[error("composition has length {len}, expected {expected}")]
    CompositionLength { len: usize, expected: usize },
    #[error("composition sums to {sum}, expected {expected}")]
    CompositionSum { sum: usize, expected: usize },
    #[error("class has grade {grade}, not top degree {rank}")]
    NotTopDegree { grade: usize, rank: usize },
    #[error("polynomial has degree {degree}, expected {expected}")]
    Degree { degree: usize, expected: usize },
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error(
        "Weyl group order {order} exceeds the enumeration cap {cap}; use the quotient-ring method"
    )]
    OverCap { order: String, cap: u64 },
    #[error("unknown render format {0:?}")]
    UnknownFormat(String),
    #[error("pair is not a valid (K, J, i) triple: {0}")]
    InvalidPair(String),
    #[error("{0}")]
    Usage(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
