//! Orthogonal subspace representations, faithful representations and
//! fitting matrices of graphs, with certified bounds for the r-fold and
//! fractional orthogonal rank and minimum positive semidefinite rank.

pub mod error;
pub mod fit;
pub mod graph;
pub mod linalg;
pub mod parameters;
pub mod representations;

pub use error::{Error, Result};
pub use fit::FitMatrix;
pub use graph::{Graph, GraphFormat, GraphKind, Rational};
pub use parameters::{BoundReport, Budget, Engine, Parameter, RatioSequence};
pub use linalg::{BlockDiagonal, CMatrix, Subspace, Tolerances};
pub use representations::{
    Certificate, ProjectiveRepresentation, SubspaceRepresentation, VerificationReport,
};
