//! Intersection homology of stratified ∂-pseudomanifolds over the rationals.
//!
//! Spaces are finite simplicial complexes with a filtration given by vertex
//! depths (`X_i` is the full subcomplex on vertices of depth `≤ i`) and an
//! optional boundary given by a vertex set. Intersection chains are built
//! from allowable simplices of an iterated barycentric subdivision, and
//! homology is computed by exact fraction-free elimination.

pub mod chains;
pub mod cli;
pub mod complex;
pub mod constructions;
pub mod error;
pub mod format;
pub mod harness;
pub mod homology;
pub mod linalg;
pub mod perversity;
pub mod stratified;

pub use complex::{Chain, Rational, Simplex, SimplicialComplex};
pub use error::{Error, Result};
pub use perversity::{Perversity, PerversityKind};
pub use stratified::{SpacePair, StratifiedSpace, ValidationReport, VertexSet};
