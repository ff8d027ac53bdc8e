//! Sums of k-th powers for polynomials in one and two variables over finite
//! fields.

pub mod approxroot;
pub mod cli;
pub mod decomposition;
pub mod error;
pub mod field;
pub mod poly;
pub mod strategies;
pub mod vandermonde;

pub use error::{Error, ErrorClass, Result};
