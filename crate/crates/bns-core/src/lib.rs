//! Filtered Bar-Natan complexes over the integers and the invariants
//! extracted from them: the field s-invariants, the integral s-invariant
//! tuple, the graded length and the slice genus bound.

pub mod algebra;
pub mod bncomplex;
pub mod cube;
pub mod diagram;
pub mod invariants;

pub use algebra::{FilteredComplex, GradedPiece, GroupDescriptor, SparseIntMatrix};
pub use bncomplex::BnComplex;
pub use diagram::PlanarDiagram;
pub use invariants::SInvariantReport;

/// Errors shared across the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("malformed token: {0}")]
    MalformedToken(String),
    #[error("edge {0} does not appear exactly twice")]
    EdgeMultiplicity(u32),
    #[error("no consistent orientation of the diagram exists")]
    InconsistentOrientation,
    #[error("diagram is not a knot (component count {0})")]
    NotAKnot(usize),
    #[error("face tracing does not close up; corrupt planar data")]
    NonPlanarData,
    #[error("DT code is not realizable as a planar diagram")]
    UnrealizableDt,
    #[error("graded piece at q={0} is not cyclic")]
    NonCyclicPiece(i64),
    #[error("bad complex dump: {0}")]
    BadDump(String),
}

pub type Result<T> = std::result::Result<T, Error>;
