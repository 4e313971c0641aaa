//! Exact lattice-polytope toolkit: hulls, slices and normal fans, smoothness and IDP
//! checks, and constructive covers of centrally symmetric smooth 3-polytopes by
//! parallelepipeds and unimodular simplices.

pub mod analysis;
pub mod cli;
pub mod covering;
pub mod error;
pub mod generators;
pub mod geometry;
pub mod io;
pub mod lattice;

pub use error::{Error, Result};
