//! Nanophrases: homotopy data, moves, bounded homotopy search, sign
//! functors and the bridge to signed Gauss phrases.

mod data;
mod functors;
mod invariants;
mod moves;
mod phrase;
mod search;

pub use data::{alpha_one, alpha_star, alpha_two, alpha_zero, make_s_sharp, HomotopyData, Triple};
pub use functors::{
    check_representatives, from_gauss, functor_u, functor_v, functor_v1, functor_v2, project_p,
    sign_couple, sign_in, star_symbol, to_gauss, SignProfile, A_MINUS, A_PLUS, B_MINUS, B_PLUS,
};
pub use invariants::{nanophrase_invariants, NanoInvariants};
pub use moves::{applicable_moves, apply_move, inverse_move, neighbors, Move, Site};
pub use phrase::{NanoDocument, Nanophrase};
pub use search::{homotopic, homotopic_within, SearchBounds, Verdict, DEFAULT_MAX_STATES};
