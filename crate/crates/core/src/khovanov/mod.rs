//! Khovanov homology from the cube of resolutions.

mod complex;
mod cube;
mod jones;

pub use complex::{
    homology_of, khovanov_complex, khovanov_homology, Enhanced, Frobenius, KhovanovComplex,
};
pub use cube::{edge_sign, CubeEdge, EdgeKind, ResolutionCube};
pub use jones::{
    chain_euler, jones_from_euler, kauffman_bracket_jones, kauffman_bracket_jones_gauss,
};

use crate::diagrams::PdCode;

/// The cube of resolutions of a diagram.
pub fn resolution_cube(pd: &PdCode) -> ResolutionCube {
    ResolutionCube::new(pd)
}
