//! Information-lossless functional decomposition of logic truth tables,
//! treated as relations: a truth table F = f(X) splits into W = g(Y) and
//! F = h(W, Z) by merging equivalent (or compatible) columns of its
//! decomposition chart, and every result is machine-verified against the
//! lossless-join criteria — the functional dependencies Y -> W and WZ -> F,
//! the multi-valued dependency W ->> Y, the join round-trip, and per-tuple
//! recomposition.
//!
//! Values are symbolic, so binary and multi-valued functions are handled by
//! the same code paths; incompletely specified functions are covered through
//! column compatibility and minimum clique partitions.
//!
//! The `decomp-forge` binary exposes the same operations on a small text
//! format for truth tables; see the crate README.

pub mod bigraph;
pub mod chart;
pub mod cli;
pub mod cliquecover;
pub mod dependency;
pub mod decompose;
pub mod error;
pub mod partition;
pub mod relation;
pub mod text;

#[cfg(test)]
pub(crate) mod testutil;

pub use error::{Error, Result};
pub use relation::{Attribute, Domain, Relation, Role, TupleId, Val};
