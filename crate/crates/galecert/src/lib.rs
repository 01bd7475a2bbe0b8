//! Exact certificates for the existence of positive (and real-torus) solutions
//! of sparse generalized polynomial systems.
//!
//! The library works on a system `f_i(x) = sum_j c_ij x^{a_j} = 0`, `i = 1..d`,
//! given by its support (the exponent vectors `a_j`) and its coefficient matrix
//! `C`. Certification runs entirely in exact rational arithmetic: it builds Gale
//! dual matrices of the lifted exponent matrix and of `C`, slices the dual cone
//! into a polytope, and checks sign conditions on the dual pair that force a
//! zero of the associated Gale map inside that polytope by a degree argument.
//! A separate floating-point verifier locates the roots numerically, both
//! through the Gale map and directly in `x`-space, so certificates can be
//! cross-checked on desk-scale instances.
//!
//! Modules follow the pipeline:
//! - [`matrix`]: dense rational/integer matrices, kernels, integer lattice kernels.
//! - [`simplex`]: exact rational linear programming (feasibility and optimization).
//! - [`linalg`]: kernel bases, maximal minors, uniformity, mod-2 ranks, strict
//!   sign feasibility in kernels.
//! - [`geometry`]: Gale dual pairs, the sliced dual polytope, its face lattice,
//!   and boundary signs of the Gale map.
//! - [`combinatorics`]: mixed/dominating sign patterns, circuits, configuration
//!   decompositions, index-set compatibility.
//! - [`certify`]: the certificate record and all certification routes.
//! - [`verify`]: the numeric root oracle (Newton in the polytope and in
//!   log-`x` space, exact univariate counts).
//! - [`system`]: the input description and its JSON wire format.
//! - [`cli`]: the `galecert` command-line surface.

pub mod matrix;
pub mod simplex;
pub mod linalg;
pub mod geometry;
pub mod combinatorics;
pub mod sturm;
pub mod certify;
pub mod verify;
pub mod system;
pub mod cli;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GaleError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is not of full rank")]
    NotFullRank,
    #[error("matrix has more rows than columns")]
    RowsExceedCols,
    #[error("matrix is not uniform: {0}")]
    NonUniform(String),
    #[error("cannot bound the dual slice: {0}")]
    CannotBound(String),
    #[error("polytope is infeasible (empty interior)")]
    Infeasible,
    #[error("polytope is unbounded; normalize the Gale dual first")]
    Unbounded,
    #[error("domain error: {0}")]
    Domain(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, GaleError>;
