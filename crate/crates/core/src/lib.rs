//! Exact-arithmetic toolkit for the Belavin-Drinfeld classification on sl(n):
//! admissible triples, r-matrix construction and verification, twisted and
//! untwisted cohomology over quadratic extensions, and the Brauer-group
//! descriptors attached to twisted classes.

pub mod brauer;
pub mod cohomology;
pub mod error;
pub mod exactfield;
pub mod lie;
pub mod matrix;
pub mod rmatrix;
pub mod triples;

pub use error::{Error, Result};
