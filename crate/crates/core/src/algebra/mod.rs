//! Exact linear algebra and homological algebra over ℤ and ℚ.

pub mod bicomplex;
pub mod dense;
pub mod filtered;
pub mod homology;
pub mod matrix;
pub mod reduce;
pub mod ring;

pub use bicomplex::{page_key_to_kij, BiGen, Bicomplex, Orientation};
pub use filtered::{
    reference_pages, signed_rank_sum, spectral_pages, spectral_sequence, FilteredComplex, PageKey,
    SpectralPage, SpectralSequence,
};
pub use homology::{GradedChainComplex, HomologyGroup, HomologyTable};
pub use matrix::{smith_normal_form, IntegerMatrix, Smith};
pub use reduce::{Gen, SparseComplex};
pub use ring::Ring;
