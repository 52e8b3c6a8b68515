//! Metric-space primitives: points, norms, distances, excess, sampled
//! multifunctions with a `d(x,∅)=∞` convention, and the conversion from
//! analytic image oracles to finite relations.
//!
//! All types are immutable after construction and all operations are pure;
//! reductions use order-independent min/max.

mod extreal;
mod multifunction;
mod norm;
mod oracle;
mod parametric;
mod scalar;
mod set;

pub use extreal::ExtReal;
pub use multifunction::{FiniteMultifunction, MfMeta};
pub use norm::{product_dist, NormSpec};
pub use oracle::{sample_description, sample_multifunction, ImageOracle, SetDescription, SetPiece};
pub use parametric::{OracleParametric, ParamEval, ParamMeta, ParametricMultifunction};
pub use scalar::Scalar;
pub use set::{dist_point_set, excess, lattice_1d, lattice_nd, FiniteSet, Point, Window};

pub(crate) use set::{dist_point_set_unchecked, excess_unchecked, hausdorff};

/// Errors of the metric-space core.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("degenerate window: lo > hi on some axis")]
    DegenerateWindow,
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
