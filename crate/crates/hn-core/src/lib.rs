//! Exact-arithmetic machinery for Hessian-nilpotent polynomials: sparse
//! multivariate polynomials over Q, Q(i) and prime fields, truncated formal
//! maps and their inversion, inversion-pair algorithms, tree expansions,
//! harmonic-polynomial graphs and characteristic-p vanishing checks.
//!
//! The crate is `no_std` (with `alloc`); IO, parsing and the floating-point
//! layer live in the companion `hn-cli` crate.

#![no_std]

extern crate alloc;

pub mod analysis;
pub mod charp;
pub mod corpus;
pub mod error;
pub mod graph;
pub mod inversion;
#[doc(hidden)]
pub mod oracle;
pub mod poly;
pub mod scalar;
pub mod series;
pub mod tree;

pub use error::HnError;
pub use poly::{Poly, PolyMatrix};
pub use scalar::{Ring, Scalar};
