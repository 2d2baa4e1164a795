//! Link diagrams: PD codes, Gauss phrases, framing, cabling and smoothings.

pub mod cable;
pub mod framing;
pub mod gauss;
pub mod pd;
pub mod smoothing;

pub use cable::{cable, cable_crossing_count, orient_cable, zero_framed_cable};
pub use framing::normalize_framing;
pub use gauss::{GaussLetter, GaussPhrase};
pub use pd::{Arc, Component, ComponentSeed, FreeLoop, PdCode};
pub use smoothing::{count_loops_gauss, count_loops_pd, LoopCounter, Loops, SmoothingState};
