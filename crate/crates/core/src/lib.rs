//! Exact-arithmetic engine for the graded algebras `B(M)` defined by a cubic
//! superpotential `w = fz`, their classification in three generators, and the
//! comparison of Hochschild homology (via the bimodule Koszul complex) with
//! the Poisson homology of the semiclassical limit (via the Brylinski
//! complex).
//!
//! All computations run over the rationals with exact arithmetic; homology
//! dimensions are produced degree by degree and checked against explicitly
//! enumerated bases.

pub mod brylinski;
pub mod free;
pub mod linalg;
pub mod poisson;
pub mod potential;
pub mod quotient;
pub mod report;

pub use linalg::{frac, rat, Rat};

/// Error type shared by the whole engine.
///
/// Caller bugs (index mismatches, inhomogeneous inputs to homogeneous-only
/// routines) panic instead; `Error` is reserved for conditions a caller can
/// meaningfully react to.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("bad input: {0}")]
    BadInput(String),
    #[error("singular matrix: {0}")]
    Singular(String),
    #[error("rewrite system not confluent: {0} unresolved overlap(s)")]
    NotConfluent(usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

