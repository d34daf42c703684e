//! Exact computations for the homotopy theory of profinite spaces.
//!
//! Profinite spaces are represented by towers of levelwise-finite simplicial
//! sets truncated at a dimension cap. On top of that representation the crate
//! computes continuous (co)homology with finite, twisted and tower
//! coefficients, nonabelian `H¹`, finite quotient systems of fundamental
//! groups, coverings, classifying spaces, Hurewicz comparisons, the
//! Cartan–Leray spectral sequence of a finite Galois covering, and a bounded
//! weak-equivalence checker.
//!
//! Every result that depends on a truncation reports the bounds it is valid
//! for; nothing here claims an unbounded answer.

pub mod algebra;
pub mod cartan_leray;
pub mod classifying;
pub mod cohomology;
pub mod corpus;
mod error;
pub mod homotopy;
pub mod simplicial;
pub mod towers;

pub use error::{Error, Result};
