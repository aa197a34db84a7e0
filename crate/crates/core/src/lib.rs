//! Exact lattice-point counting and volume computation for lattice polytopes,
//! with constructions of polytopes attaining the minimal volume
//! `d! vol(P) = d c + (d - 1) b - d^2 + 2` for their boundary count `b` and
//! interior count `c`.
//!
//! All arithmetic is over arbitrary-precision integers and rationals.

pub mod castelnuovo;
pub mod cli;
pub mod counting;
pub mod error;
pub mod families;
pub mod hull;
pub mod lattice;
pub mod linalg;
pub mod scan;
pub mod triangulate;
pub mod unimodular;

pub use castelnuovo::{CastelnuovoTriplet, FamilyTag, Verdict};
pub use counting::{LatticeProfile, ScanLimits};
pub use error::{Error, Result};
pub use families::FamilyPrediction;
pub use hull::{FacetInequality, PointLocation};
pub use lattice::{LatticePoint, LatticePolytope, RationalValue};
pub use triangulate::SimplexDecomposition;
