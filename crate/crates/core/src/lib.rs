//! Exact decomposition of multivariate rational functions.
//!
//! A rational function `f = f1/f2` in `K(X1, ..., Xn)` is *composite* when
//! `f = u(h)` for a univariate `u` of degree at least two. This crate finds
//! such decompositions over the rationals and over finite fields, computes
//! generators of subfields `K(f1, ..., fm)` of transcendence degree one, and
//! provides several indecomposability tests.

pub mod cli;
pub mod decompose;
pub mod error;
pub mod factor;
pub mod fields;
pub mod grs;
pub mod luroth;
pub mod pencil;
pub mod polys;
pub mod polytope;

pub use error::{Error, Result};

/// Pseudorandom stream threaded through every randomized algorithm.
pub type Stream = rand_chacha::ChaCha8Rng;
