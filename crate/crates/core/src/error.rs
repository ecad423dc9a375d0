use thiserror::Error;

/// Errors raised at module boundaries.
///
/// Every variant corresponds to a violated precondition; check failures that
/// are part of a verification run are reported as data, not as errors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generator index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: i64, rank: usize },
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("invalid rank {0}")]
    InvalidRank(usize),
    #[error("invalid generator indices: {0}")]
    InvalidIndices(String),
    #[error("supplied inverse does not invert the automorphism")]
    NotAnInverse,
    #[error("zero functional")]
    ZeroFunctional,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not an involution: {0}")]
    NotInvolution(String),
    #[error("matrices do not commute: {0}")]
    NotCommuting(String),
    #[error("matrix is singular")]
    Singular,
    #[error("invalid partition {0:?} of {1}")]
    InvalidPartition(Vec<usize>, usize),
    #[error("unknown representation name {0}")]
    UnknownRepresentation(String),
    #[error("character inner product is not a nonnegative integer: {0}")]
    NonIntegralMultiplicity(String),
    #[error("relation {relation} fails for generator set {group}")]
    RelationFails { group: String, relation: String },
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid graph automorphism: {0}")]
    InvalidGraphAut(String),
    #[error("graph has {edges} edges, above the enumeration cap {cap}")]
    TooManyEdges { edges: usize, cap: usize },
    #[error("{orbits} edge orbits exceed the enumeration bound {bound}")]
    TooManyOrbits { orbits: usize, bound: usize },
    #[error("size out of range: {0}")]
    SizeOutOfRange(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("word is not in the kernel of the base functional")]
    NotInKernel,
    #[error("automorphism does not stabilise the base functional")]
    NotInStabilizer,
    #[error("unsupported partition {0}")]
    UnsupportedPartition(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
