//! The cube of resolutions and enhanced states.

use rayon::prelude::*;

use crate::diagrams::{LoopCounter, Loops, PdCode, SmoothingState};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeKind {
    Merge,
    Split,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CubeEdge {
    pub from: SmoothingState,
    pub to: SmoothingState,
    pub crossing: usize,
    pub kind: EdgeKind,
    /// `(−1)^{number of 1-bits before the flipped coordinate}`
    pub sign: i8,
}

/// Loops of every vertex of the cube, indexed by the state bits.
#[derive(Clone, Debug)]
pub struct ResolutionCube {
    counter: LoopCounter,
    loops: Vec<Loops>,
    n_plus: usize,
    n_minus: usize,
}

pub fn edge_sign(from: SmoothingState, x: usize) -> i8 {
    let below = from.0 & ((1u64 << x) - 1);
    if below.count_ones() % 2 == 0 {
        1
    } else {
        -1
    }
}

impl ResolutionCube {
    pub fn new(pd: &PdCode) -> Self {
        assert!(pd.crossing_count() < 63, "cube dimension too large");
        let counter = LoopCounter::new(pd);
        let loops = (0..1u64 << pd.crossing_count())
            .into_par_iter()
            .map(|s| counter.loops(SmoothingState(s)))
            .collect();
        let (n_plus, n_minus) = pd.sign_counts();
        Self {
            counter,
            loops,
            n_plus,
            n_minus,
        }
    }

    pub fn dimension(&self) -> usize {
        self.counter.crossing_count()
    }

    pub fn vertex_count(&self) -> usize {
        self.loops.len()
    }

    pub fn n_plus(&self) -> usize {
        self.n_plus
    }

    pub fn n_minus(&self) -> usize {
        self.n_minus
    }

    pub fn loops(&self, s: SmoothingState) -> &Loops {
        &self.loops[s.0 as usize]
    }

    pub fn loop_count(&self, s: SmoothingState) -> usize {
        self.loops[s.0 as usize].count
    }

    /// Loops through crossings (free loops excluded).
    fn traced(&self, s: SmoothingState) -> usize {
        self.loops[s.0 as usize].count - self.counter.free_loops()
    }

    /// The two loop indices at crossing `x` in state `s`: the loop through
    /// slot 0 and the loop through slot 2.
    pub fn loops_at(&self, s: SmoothingState, x: usize) -> (u32, u32) {
        let t = self.counter.tuple(x);
        let l = &self.loops[s.0 as usize];
        (l.of_arc[t[0] as usize], l.of_arc[t[2] as usize])
    }

    pub fn edge(&self, from: SmoothingState, x: usize) -> CubeEdge {
        assert_eq!(from.bit(x), 0, "edges flip a 0-bit");
        let to = SmoothingState(from.0 | (1 << x));
        let (a, b) = self.loops_at(from, x);
        CubeEdge {
            from,
            to,
            crossing: x,
            kind: if a != b {
                EdgeKind::Merge
            } else {
                EdgeKind::Split
            },
            sign: edge_sign(from, x),
        }
    }

    pub fn edges(&self) -> Vec<CubeEdge> {
        let c = self.dimension();
        let mut out = Vec::new();
        for s in 0..self.vertex_count() as u64 {
            for x in 0..c {
                if (s >> x) & 1 == 0 {
                    out.push(self.edge(SmoothingState(s), x));
                }
            }
        }
        out
    }

    /// For an edge, the image in `to` of every loop of `from`. For a merge
    /// both merged loops map to the merged loop; for a split the split loop
    /// maps to the new loop through slot 0.
    pub fn loop_map(&self, e: &CubeEdge) -> Vec<u32> {
        let src = &self.loops[e.from.0 as usize];
        let dst = &self.loops[e.to.0 as usize];
        let traced = self.traced(e.from);
        let mut map = vec![u32::MAX; src.count];
        for (arc, &l) in src.of_arc.iter().enumerate() {
            if map[l as usize] == u32::MAX {
                map[l as usize] = dst.of_arc[arc];
            }
        }
        let dst_traced = self.traced(e.to) as u32;
        for f in 0..self.counter.free_loops() {
            map[traced + f] = dst_traced + f as u32;
        }
        map
    }

    /// Homological and quantum grading of an enhanced state; bit `ℓ` of
    /// `minus` set means loop `ℓ` is labelled `x`.
    pub fn grading(&self, s: SmoothingState, minus: u64) -> (i64, i64) {
        let r = s.ones() as i64;
        let loops = self.loop_count(s) as i64;
        let m = minus.count_ones() as i64;
        let deg = loops - 2 * m;
        let (np, nm) = (self.n_plus as i64, self.n_minus as i64);
        (r - nm, deg + r + np - 2 * nm)
    }

    /// `Σ_s 2^{loops(s)}`, the rank of the chain complex.
    pub fn total_rank(&self) -> u128 {
        self.loops.iter().map(|l| 1u128 << l.count).sum()
    }
}
