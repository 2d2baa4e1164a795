//! Kauffman states and loop counting.
//!
//! The 0-smoothing joins slots 0–1 and 2–3 of a crossing tuple, the
//! 1-smoothing joins 0–3 and 1–2. Only the tuple order is used, so virtual
//! diagrams are handled the same way.

use std::collections::BTreeMap;

use crate::diagrams::gauss::GaussPhrase;
use crate::diagrams::pd::PdCode;

/// One smoothing bit per crossing; bit `x` is the smoothing of crossing `x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SmoothingState(pub u64);

impl SmoothingState {
    pub fn bit(self, x: usize) -> u8 {
        ((self.0 >> x) & 1) as u8
    }

    pub fn ones(self) -> u32 {
        self.0.count_ones()
    }
}

/// The loops of one smoothing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Loops {
    pub count: usize,
    /// Loop index of every arc (by arc position in the counter's arc list).
    /// Loops are numbered by their smallest arc position; free loops come
    /// after all loops through crossings.
    pub of_arc: Vec<u32>,
}

/// Precomputed arc indices for fast loop counting.
#[derive(Clone, Debug)]
pub struct LoopCounter {
    tuples: Vec<[u32; 4]>,
    arcs: usize,
    free: usize,
}

impl LoopCounter {
    pub fn new(pd: &PdCode) -> Self {
        let index: BTreeMap<u32, u32> = pd.arcs().enumerate().map(|(i, a)| (a, i as u32)).collect();
        let tuples = pd
            .crossings()
            .iter()
            .map(|c| c.map(|a| index[&a]))
            .collect();
        let free = pd.free_loops().count();
        Self {
            tuples,
            arcs: index.len(),
            free,
        }
    }

    pub fn crossing_count(&self) -> usize {
        self.tuples.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs
    }

    pub fn free_loops(&self) -> usize {
        self.free
    }

    pub fn tuple(&self, x: usize) -> [u32; 4] {
        self.tuples[x]
    }

    fn unite(&self, state: SmoothingState, parent: &mut [u32]) {
        for (i, p) in parent.iter_mut().enumerate() {
            *p = i as u32;
        }
        fn find(parent: &mut [u32], mut i: u32) -> u32 {
            while parent[i as usize] != i {
                let g = parent[parent[i as usize] as usize];
                parent[i as usize] = g;
                i = g;
            }
            i
        }
        let join = |parent: &mut [u32], a: u32, b: u32| {
            let (ra, rb) = (find(parent, a), find(parent, b));
            if ra != rb {
                let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
                parent[hi as usize] = lo;
            }
        };
        for (x, t) in self.tuples.iter().enumerate() {
            if state.bit(x) == 0 {
                join(parent, t[0], t[1]);
                join(parent, t[2], t[3]);
            } else {
                join(parent, t[0], t[3]);
                join(parent, t[1], t[2]);
            }
        }
        for i in 0..parent.len() {
            let r = find(parent, i as u32);
            parent[i] = r;
        }
    }

    /// Number of loops, including crossingless components.
    pub fn count(&self, state: SmoothingState) -> usize {
        let mut parent = vec![0u32; self.arcs];
        self.unite(state, &mut parent);
        parent
            .iter()
            .enumerate()
            .filter(|&(i, &p)| p as usize == i)
            .count()
            + self.free
    }

    pub fn loops(&self, state: SmoothingState) -> Loops {
        let mut parent = vec![0u32; self.arcs];
        self.unite(state, &mut parent);
        // roots are the smallest index in their class, so numbering roots in
        // index order numbers loops by smallest arc
        let mut number = vec![u32::MAX; self.arcs];
        let mut count = 0u32;
        let mut of_arc = vec![0u32; self.arcs];
        for i in 0..self.arcs {
            let r = parent[i] as usize;
            if number[r] == u32::MAX {
                number[r] = count;
                count += 1;
            }
            of_arc[i] = number[r];
        }
        Loops {
            count: count as usize + self.free,
            of_arc,
        }
    }
}

pub fn count_loops_pd(pd: &PdCode, state: SmoothingState) -> usize {
    LoopCounter::new(pd).count(state)
}

/// Loop count of a Gauss phrase smoothing; bit `x` smooths letter `x`.
pub fn count_loops_gauss(g: &GaussPhrase, state: SmoothingState) -> usize {
    LoopCounter::new(&g.to_virtual_pd()).count(state)
}
