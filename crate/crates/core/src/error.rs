use thiserror::Error;

use crate::complex::Simplex;

/// Errors raised by the library. Mathematical check failures are not errors;
/// they are reported through [`crate::harness::CheckReport`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // perversity
    #[error("perversity step p_{k} -> p_{next} is not 0 or 1", next = .k + 1)]
    GrowthViolation { k: usize },
    #[error("perversity must start with p_2 = 0, got {0}")]
    BaseViolation(i32),
    #[error("expected {expected} perversity values, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("ambient dimension {0} is too small for this operation")]
    AmbientTooSmall(usize),
    #[error("truncation to {target} out of range for a {ambient}-perversity")]
    RangeError { ambient: usize, target: usize },
    #[error("cannot parse perversity {0:?}")]
    PerversityParse(String),

    // complexes
    #[error("simplex {0:?} repeats a vertex")]
    DuplicateVertexInSimplex(Vec<u32>),
    #[error("empty simplex")]
    EmptySimplex,
    #[error("vertex {0} not found")]
    VertexNotFound(u32),
    #[error("simplex {0} is not in the complex")]
    SimplexNotFound(Simplex),

    // stratification
    #[error("depth {depth} of vertex {vertex} outside [0, {dim}]")]
    DepthOutOfRange { vertex: u32, depth: i64, dim: usize },
    #[error("vertex {0} has no depth")]
    MissingDepth(u32),
    #[error("boundary is not a full {expected}-dimensional subcomplex: {reason}")]
    BoundaryNotFull { expected: usize, reason: String },
    #[error("coface count violation at {simplex}: expected {expected}, found {found}")]
    CofaceCountViolation { simplex: Simplex, expected: usize, found: usize },
    #[error("stratified space failed validation: {0}")]
    ValidationRequired(String),
    #[error("space has no boundary")]
    NoBoundary,
    #[error("vertex {0} does not lie on the boundary at depth 0")]
    VertexNotOnBoundary(u32),
    #[error("invalid space pair: {0}")]
    PairInvalid(String),
    #[error("space is not compact")]
    NotCompact,
    #[error("open-set carrier is not a subcomplex: {0}")]
    CarrierNotSubcomplex(String),
    #[error("Borel-Moore pair sequence needs a product-collared open set")]
    CollarRequired,
    #[error("vertex identification is not simplicial: {0}")]
    InvalidQuotient(String),

    // chains
    #[error("boundary chains are not contained in the ambient intersection chains (degree {degree})")]
    InclusionViolated { degree: usize },
    #[error("map does not commute with boundaries in degree {degree}")]
    NotAChainMap { degree: usize },

    // catalog / io
    #[error("unknown example {0:?}")]
    UnknownName(String),
    #[error("invalid input file: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
