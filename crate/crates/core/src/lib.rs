//! Diversities on ℝᵏ.
//!
//! A diversity assigns a nonnegative value to every finite subset of a space,
//! vanishing on singletons and the empty set, and satisfying a triangle-style
//! inequality on unions. This crate implements the classical diversities of
//! convex geometry — diameter, ℓ₁, circumradius, generalized circumradius
//! (Minkowski diversities with a polytope kernel), mean width, zonotope length —
//! together with the machinery that relates them:
//!
//! - [`geom`]: finite point sets and their support-function algebra
//!   (support, width, Minkowski sums, scaling, translation);
//! - [`lp`]: a self-contained dense two-phase simplex solver (Bland's rule)
//!   used for generalized circumradii, zonotope fitting, and convex-hull
//!   membership;
//! - [`kernels`]: H-polytope kernels, balanced discrete spherical measures,
//!   and the constructive conversions between simplex kernels and measures;
//! - [`diversity`]: the [`DiversitySpec`](diversity::DiversitySpec) evaluation
//!   interface over all implemented variants plus weighted-sum and max
//!   combinators;
//! - [`table`]: finite diversity tables, restriction of ℝᵏ diversities to
//!   labeled points, and the negative-type decision that characterizes
//!   embeddability into a linear diversity;
//! - [`checkers`]: a seeded randomized harness verifying the defining
//!   axioms and the (sub)linearity, invariance, deletion, and Lipschitz
//!   properties of any implemented variant.
//!
//! All values are immutable after construction and every operation is a pure
//! function, so concurrent evaluation needs no synchronization.

use thiserror::Error;

pub mod checkers;
pub mod diversity;
pub mod geom;
pub mod kernels;
pub mod lp;
pub mod numerics;
pub mod table;
mod welzl;

pub use diversity::DiversitySpec;
pub use geom::{PointSet, Vector};
pub use kernels::{DiscreteSphericalMeasure, HPolytope, SimplexKernelSpec};
pub use table::DiversityTable;

/// Errors shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimMismatch { expected: usize, got: usize },

    #[error("support undefined on empty set")]
    EmptySupport,

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("non-finite coordinate encountered")]
    NonFinite,

    #[error("negative scale factor {0}")]
    NegativeScale(f64),

    #[error("malformed linear program: {0}")]
    MalformedProgram(String),

    #[error("invalid measure: {0}")]
    InvalidMeasure(String),

    #[error("invalid kernel: {0}")]
    InvalidKernel(String),

    #[error("invalid spec: {0}")]
    InvalidSpec(String),

    #[error("not extremal: {0}")]
    NotExtremal(String),

    #[error("kernel slice unbounded: origin not in the convex hull of the rescaled normals")]
    UnboundedSlice,

    #[error("directions insufficient: they do not span the affine hull of the point set")]
    DirectionsInsufficient,

    #[error("ground set too large: {n} labels exceeds cap {cap}")]
    GroundTooLarge { n: usize, cap: usize },

    #[error("ground sets do not match")]
    GroundMismatch,

    #[error("table incomplete: missing value for subset {0}")]
    MissingSubset(String),

    #[error("unknown label: {0}")]
    UnknownLabel(String),
}

pub type Result<T> = std::result::Result<T, Error>;
