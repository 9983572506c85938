//! Convex-set calculus in low dimension and a verification engine for
//! set-valued Pexider decompositions.
//!
//! The crate provides three layers:
//!
//! * [`convex`] — compact convex subsets of R^1 and R^2 (interval boxes,
//!   2-D V-polytopes, sampled support functions) with Minkowski arithmetic,
//!   inclusion tests and Hausdorff distance;
//! * [`laws`] and [`limits`] — executable oracles for the Minkowski algebra
//!   identities, Radstrom cancellation, and limit arithmetic of decreasing
//!   compact sequences;
//! * [`decompose`] and [`scenario`] — the decomposition engine that recovers
//!   the additive core and constant sets of a map triple satisfying
//!   `F(ax+by+c) = A G(x) + B H(y) + C`, plus generators for ground-truth
//!   solution triples to score the recovery against.

pub mod batch;
pub mod convex;
pub mod corpus;
pub mod decompose;
pub mod error;
pub mod laws;
pub mod limits;
pub mod scenario;

pub use convex::{ConvexSet, FinitePointSet, IntervalBox, SetLiteral, SupportGrid, VPolytope2};
pub use error::Error;
