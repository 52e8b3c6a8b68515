//! Numerical toolkit for regularity properties of sampled set-valued
//! mappings: openness, calmness, metric (sub)regularity and their moduli,
//! implicit-multifunction and sum-stability verifiers, and the
//! scalarization–penalization pipeline for solid vector optimization.
//!
//! The metric core ([`setcore`]) is generic over the scalar type via
//! `num-traits`; the checkers and the built-in corpus run on the concrete
//! `f64` aliases exported at the crate root.

pub mod regmoduli;
pub mod setcore;

pub use setcore::Scalar;

/// Concrete `f64` aliases used by the checkers, the corpus and the CLI.
pub type Point = setcore::Point<f64>;
pub type FiniteSet = setcore::FiniteSet<f64>;
pub type ExtReal = setcore::ExtReal<f64>;
pub type Window = setcore::Window<f64>;
pub type FiniteMultifunction = setcore::FiniteMultifunction<f64>;
pub type MfMeta = setcore::MfMeta<f64>;
pub type ImageOracle = setcore::ImageOracle<f64>;
pub type SetDescription = setcore::SetDescription<f64>;
pub type SetPiece = setcore::SetPiece<f64>;
pub type ParametricMultifunction = setcore::ParametricMultifunction<f64>;
pub type ParamMeta = setcore::ParamMeta<f64>;
pub type OracleParametric = setcore::OracleParametric<f64>;
pub use setcore::NormSpec;
