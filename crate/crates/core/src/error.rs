use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} coordinates, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("empty point set")]
    EmptyPointSet,

    #[error("point set has affine rank {rank}, but the polytope must have dimension {dim}")]
    NotFullDimensional { dim: usize, rank: usize },

    #[error("duplicate vertex {0}")]
    DuplicateVertex(String),

    #[error("lattice scan visited more than {limit} cells ({cells} when aborted)")]
    BoxLimitExceeded { cells: u128, limit: u128 },

    #[error("parameter out of range: {0}")]
    Domain(String),

    #[error("degenerate simplex: vertices span a space of dimension {rank}, expected {dim}")]
    DegenerateSimplex { dim: usize, rank: usize },

    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("the minimal-volume bound is undefined without interior lattice points")]
    UndefinedBound,

    #[error("triplet ({b}, {c}, {d}) is outside the range realized by the known families ({lo} <= b <= {hi})")]
    NotRealizable {
        b: u64,
        c: u64,
        d: usize,
        lo: u64,
        hi: u64,
    },

    #[error("malformed polytope data: {0}")]
    Format(String),
}
