//! Colored Jones polynomials by cabling, the colored bicomplex and its
//! spectral sequences.

mod bicomplex;
mod binom;
mod jones;
mod sequences;

pub use bicomplex::{assemble_colored_bicomplex, ColoredBicomplex, DPrime, Summand, SummandRef};
pub use binom::{binom_product, color_levels};
pub use jones::{colored_cable, colored_jones};
pub use sequences::{
    euler_identity_check, three_sequences, EulerReport, PageCheck, SequenceCheck, SummandLee,
    ThreeSequences,
};
