//! Entrywise powers that preserve positive semidefiniteness on matrices
//! with a prescribed pattern of zeros.
//!
//! Given a sparsity graph `G`, the cone `P_G` holds the real symmetric
//! positive semidefinite matrices whose off-diagonal entries vanish outside
//! the edges of `G`. For the three power families (`x^a` on nonnegative
//! matrices, the odd extension `sgn(x)|x|^a` and the even extension
//! `|x|^a`), this crate computes the set of exponents that map `P_G` into
//! itself: exactly for chordal graphs, trees, cycles, bipartite graphs and
//! coalescences of those, and as certified lower/upper bounds otherwise.
//! The [`verifier`] module checks such claims numerically by hunting for
//! counterexamples.

pub mod chordal;
pub mod cli;
pub mod error;
pub mod graph;
pub mod hset;
pub mod matrix;
mod real;
pub mod verifier;

pub use error::{Error, Result};
pub use graph::{FamilySpec, Graph};
pub use hset::{HSet, HSetReport};
pub use matrix::{PowerKind, PowerMap, SymMatrix};
pub use real::Real;
