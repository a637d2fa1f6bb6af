//! Exact counting of zero signed sums of positive roots.
//!
//! For a complex simple Lie algebra with positive roots `a_1 … a_r`, the
//! invariant spinors on its maximal flag manifold correspond one-to-one to
//! sign vectors `ε` with `Σ ε_i a_i = 0`. This crate builds the root systems,
//! counts those sign vectors exactly, certifies existence or non-existence,
//! and cross-checks the counts against a direct model of the spin
//! representation.

pub mod analysis;
pub mod certs;
pub mod error;
pub mod lattice;
pub mod rootsys;
pub mod sigsum;
pub mod spinor;

pub use error::{Error, Result};
pub use rootsys::{positive_roots, root_count, Family, FamilyRank, RootSystem};
pub use sigsum::{CountKind, CountResult, Method, SignVector};
