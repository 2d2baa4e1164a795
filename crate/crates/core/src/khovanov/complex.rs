//! Enhanced states, the Khovanov differential and its Lee deformation.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::algebra::{Gen, GradedChainComplex, HomologyTable, IntegerMatrix, SparseComplex};
use crate::diagrams::{PdCode, SmoothingState};
use crate::error::Result;
use crate::khovanov::cube::{EdgeKind, ResolutionCube};

/// Which Frobenius algebra labels the loops.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Frobenius {
    /// `ℤ[x]/(x²)`.
    Khovanov,
    /// `ℚ[x]/(x² − 1)`: adds `m(x⊗x) = 1` and `Δ(x) = x⊗x + 1⊗1`.
    Lee,
}

/// An enhanced state: a smoothing plus one label per loop. Bit `ℓ` of
/// `minus` is set when loop `ℓ` carries `x`, clear when it carries `1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Enhanced {
    pub state: SmoothingState,
    pub minus: u64,
}

/// All enhanced states of a diagram, ordered lexicographically by
/// `(state bits, labels)`.
#[derive(Clone, Debug)]
pub struct KhovanovComplex {
    cube: ResolutionCube,
    offsets: Vec<usize>,
}

impl KhovanovComplex {
    pub fn new(pd: &PdCode) -> Self {
        let cube = ResolutionCube::new(pd);
        let mut offsets = Vec::with_capacity(cube.vertex_count() + 1);
        let mut acc = 0usize;
        for s in 0..cube.vertex_count() as u64 {
            offsets.push(acc);
            acc += 1usize << cube.loop_count(SmoothingState(s));
        }
        offsets.push(acc);
        Self { cube, offsets }
    }

    pub fn cube(&self) -> &ResolutionCube {
        &self.cube
    }

    pub fn len(&self) -> usize {
        *self.offsets.last().expect("offsets are nonempty")
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn index(&self, e: Enhanced) -> usize {
        self.offsets[e.state.0 as usize] + e.minus as usize
    }

    pub fn enhanced(&self, idx: usize) -> Enhanced {
        let s = self.offsets.partition_point(|&o| o <= idx) - 1;
        Enhanced {
            state: SmoothingState(s as u64),
            minus: (idx - self.offsets[s]) as u64,
        }
    }

    pub fn grading(&self, e: Enhanced) -> (i64, i64) {
        self.cube.grading(e.state, e.minus)
    }

    pub fn generators(&self) -> impl Iterator<Item = Enhanced> + '_ {
        (0..self.cube.vertex_count() as u64).flat_map(move |s| {
            let st = SmoothingState(s);
            (0..1u64 << self.cube.loop_count(st)).map(move |m| Enhanced {
                state: st,
                minus: m,
            })
        })
    }

    /// `d(e)` as a list of `(target, coefficient)`.
    pub fn differential(&self, e: Enhanced, algebra: Frobenius) -> Vec<(Enhanced, i64)> {
        let mut out = Vec::new();
        for x in 0..self.cube.dimension() {
            if e.state.bit(x) == 1 {
                continue;
            }
            let edge = self.cube.edge(e.state, x);
            let map = self.cube.loop_map(&edge);
            let sign = edge.sign as i64;
            let (a, b) = self.cube.loops_at(e.state, x);
            let (c0, c1) = self.cube.loops_at(edge.to, x);
            // labels of the untouched loops carried over
            let mut base = 0u64;
            for (l, &img) in map.iter().enumerate() {
                if l as u32 != a && l as u32 != b && (e.minus >> l) & 1 == 1 {
                    base |= 1 << img;
                }
            }
            let bit = |l: u32| (e.minus >> l) & 1;
            let to = |m: u64| Enhanced {
                state: edge.to,
                minus: m,
            };
            match edge.kind {
                EdgeKind::Merge => {
                    let c = c0;
                    match bit(a) + bit(b) {
                        0 => out.push((to(base), sign)),
                        1 => out.push((to(base | 1 << c), sign)),
                        _ => {
                            if algebra == Frobenius::Lee {
                                out.push((to(base), sign));
                            }
                        }
                    }
                }
                EdgeKind::Split => {
                    if bit(a) == 0 {
                        out.push((to(base | 1 << c1), sign));
                        out.push((to(base | 1 << c0), sign));
                    } else {
                        out.push((to(base | 1 << c0 | 1 << c1), sign));
                        if algebra == Frobenius::Lee {
                            out.push((to(base), sign));
                        }
                    }
                }
            }
        }
        out
    }

    /// The integral Khovanov complex: degree `i`, level and tag `j`.
    pub fn sparse(&self) -> SparseComplex<BigInt> {
        let gens = self
            .generators()
            .map(|e| {
                let (i, j) = self.grading(e);
                Gen {
                    degree: i,
                    level: j,
                    tag: j,
                }
            })
            .collect();
        let mut c = SparseComplex::new(gens);
        for e in self.generators() {
            let x = self.index(e);
            for (t, v) in self.differential(e, Frobenius::Khovanov) {
                c.add_entry(x, self.index(t), BigInt::from(v));
            }
        }
        c
    }

    /// Generators of quantum grading `j`, in basis order.
    pub fn slice(&self, j: i64) -> Vec<Enhanced> {
        let (np, nm) = (self.cube.n_plus() as i64, self.cube.n_minus() as i64);
        let mut out = Vec::new();
        for s in 0..self.cube.vertex_count() as u64 {
            let st = SmoothingState(s);
            let loops = self.cube.loop_count(st) as i64;
            let r = st.ones() as i64;
            let twice = loops + r + np - 2 * nm - j;
            if twice < 0 || twice % 2 != 0 || twice / 2 > loops {
                continue;
            }
            let m = (twice / 2) as u32;
            for minus in 0..1u64 << loops {
                if minus.count_ones() == m {
                    out.push(Enhanced { state: st, minus });
                }
            }
        }
        out
    }

    /// Quantum gradings that occur.
    pub fn quantum_gradings(&self) -> Vec<i64> {
        let (np, nm) = (self.cube.n_plus() as i64, self.cube.n_minus() as i64);
        let mut js = std::collections::BTreeSet::new();
        for s in 0..self.cube.vertex_count() as u64 {
            let st = SmoothingState(s);
            let loops = self.cube.loop_count(st) as i64;
            let r = st.ones() as i64;
            for m in 0..=loops {
                js.insert(loops - 2 * m + r + np - 2 * nm);
            }
        }
        js.into_iter().collect()
    }

    /// The summand of quantum grading `j` as a sparse integral complex.
    pub fn slice_complex(
        &self,
        j: i64,
        algebra: Frobenius,
    ) -> (Vec<Enhanced>, SparseComplex<BigInt>) {
        assert_eq!(
            algebra,
            Frobenius::Khovanov,
            "the Lee differential does not preserve j"
        );
        let gens = self.slice(j);
        let pos: HashMap<Enhanced, usize> = gens.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let mut c = SparseComplex::new(
            gens.iter()
                .map(|&e| {
                    let (i, j) = self.grading(e);
                    Gen {
                        degree: i,
                        level: j,
                        tag: j,
                    }
                })
                .collect(),
        );
        for (x, &e) in gens.iter().enumerate() {
            for (t, v) in self.differential(e, algebra) {
                c.add_entry(x, pos[&t], BigInt::from(v));
            }
        }
        (gens, c)
    }

    /// Dense graded form keyed `[i, j]` with step `[1, 0]`.
    pub fn to_graded(&self) -> GradedChainComplex {
        let mut blocks: BTreeMap<(i64, i64), Vec<Enhanced>> = BTreeMap::new();
        for e in self.generators() {
            blocks.entry(self.grading(e)).or_default().push(e);
        }
        let mut g = GradedChainComplex::new(vec![1, 0]);
        let pos: HashMap<Enhanced, usize> = blocks
            .values()
            .flat_map(|v| v.iter().enumerate().map(|(i, &e)| (e, i)))
            .collect();
        for (&(i, j), src) in &blocks {
            g.set_rank(vec![i, j], src.len());
        }
        for (&(i, j), src) in &blocks {
            let Some(dst) = blocks.get(&(i + 1, j)) else {
                continue;
            };
            let mut trip = Vec::new();
            for (col, &e) in src.iter().enumerate() {
                for (t, v) in self.differential(e, Frobenius::Khovanov) {
                    trip.push((pos[&t], col, BigInt::from(v)));
                }
            }
            g.set_differential(
                vec![i, j],
                IntegerMatrix::from_triplets(dst.len(), src.len(), trip),
            );
        }
        g
    }
}

/// The Khovanov chain complex of a diagram.
pub fn khovanov_complex(pd: &PdCode) -> KhovanovComplex {
    KhovanovComplex::new(pd)
}

/// Integral Khovanov homology keyed `[i, j]`, one quantum grading per task.
pub fn khovanov_homology(pd: &PdCode) -> Result<HomologyTable> {
    let kc = KhovanovComplex::new(pd);
    homology_of(&kc)
}

pub fn homology_of(kc: &KhovanovComplex) -> Result<HomologyTable> {
    let parts: Vec<Result<HomologyTable>> = kc
        .quantum_gradings()
        .into_par_iter()
        .map(|j| kc.slice_complex(j, Frobenius::Khovanov).1.homology())
        .collect();
    let mut table = HomologyTable::new();
    for p in parts {
        for (k, g) in p?.iter() {
            table.insert(k.clone(), g.clone());
        }
    }
    Ok(table)
}
