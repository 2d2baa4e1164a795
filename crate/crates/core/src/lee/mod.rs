//! Lee homology, canonical generators and Rasmussen invariants.

mod canonical;
mod complex;
mod rasmussen;

pub use canonical::{
    canonical_generators, canonical_generators_in, oriented_resolution, seifert_circles,
    CanonicalGenerators,
};
pub use complex::{lee_complex, lee_homology, lee_pages, LeeComplex, LeeHomology};
pub use rasmussen::{
    canonical_degrees, colored_rasmussen, orientation_labels, rasmussen_cable, s_knot, s_link,
    ColoredRasmussen, ColoredRasmussenEntry, SLinkFormula,
};
