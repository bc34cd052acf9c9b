//! Exact computations with wild automorphisms of `k[[t]]` in characteristic
//! p, their Artin-Schreier covers, and their infinitesimal deformations.
#![no_std]

extern crate alloc;

pub mod addpoly;
pub mod ascover;
pub mod autoreps;
pub mod coeffring;
pub mod cohomology;
pub mod deform;
pub mod error;
pub mod linalg;
pub mod series;

pub use coeffring::{ArtinAlgebra, ArtinElem, CoeffRing, Fe, FiniteField};
pub use error::Error;
pub use series::{DistinguishedPolynomial, Series};
