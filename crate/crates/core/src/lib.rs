//! Khovanov homology, Lee homology and Rasmussen invariants, colored Jones
//! polynomials via cabling, spectral sequences of the colored bicomplex, and
//! nanophrase homotopy functors.

pub mod algebra;
pub mod budget;
pub mod colored;
pub mod diagrams;
pub mod error;
pub mod khovanov;
pub mod lee;
pub mod nano;
pub mod poly;

pub use budget::Budget;
pub use error::{Error, Result};
pub use poly::LaurentPoly;
