//! The Lee complex `(C, d + Φ)` over ℚ, filtered by quantum grading.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::algebra::{spectral_sequence, FilteredComplex, Gen, SparseComplex, SpectralSequence};
use crate::diagrams::PdCode;
use crate::error::Result;
use crate::khovanov::{Enhanced, Frobenius, KhovanovComplex};

type Q = BigRational;

/// Enhanced states with differential `d + Φ`; generator `g` has degree
/// `i`, filtration level `j` and tag `j`.
#[derive(Clone, Debug)]
pub struct LeeComplex {
    kc: KhovanovComplex,
    complex: SparseComplex<Q>,
}

impl LeeComplex {
    pub fn new(pd: &PdCode) -> Self {
        let kc = KhovanovComplex::new(pd);
        let gens = kc
            .generators()
            .map(|e| {
                let (i, j) = kc.grading(e);
                Gen {
                    degree: i,
                    level: j,
                    tag: j,
                }
            })
            .collect();
        let mut complex = SparseComplex::new(gens);
        for e in kc.generators() {
            let x = kc.index(e);
            for (t, v) in kc.differential(e, Frobenius::Lee) {
                complex.add_entry(x, kc.index(t), Q::from_integer(BigInt::from(v)));
            }
        }
        Self { kc, complex }
    }

    pub fn khovanov(&self) -> &KhovanovComplex {
        &self.kc
    }

    pub fn complex(&self) -> &SparseComplex<Q> {
        &self.complex
    }

    pub fn into_complex(self) -> SparseComplex<Q> {
        self.complex
    }

    /// The deformation `Φ = (d + Φ) − d`: the arrows raising `j` by 4.
    pub fn phi(&self, e: Enhanced) -> Vec<(Enhanced, i64)> {
        let j = self.kc.grading(e).1;
        self.kc
            .differential(e, Frobenius::Lee)
            .into_iter()
            .filter(|&(t, _)| self.kc.grading(t).1 != j)
            .collect()
    }

    /// `(d + Φ) v` for an integral vector on enhanced states.
    pub fn apply(&self, v: &BTreeMap<Enhanced, i64>) -> BTreeMap<Enhanced, i64> {
        let mut out: BTreeMap<Enhanced, i64> = BTreeMap::new();
        for (&e, &c) in v {
            for (t, w) in self.kc.differential(e, Frobenius::Lee) {
                *out.entry(t).or_default() += c * w;
            }
        }
        out.retain(|_, c| *c != 0);
        out
    }

    pub fn filtered(self) -> Result<FilteredComplex> {
        FilteredComplex::new(self.complex)
    }
}

pub fn lee_complex(pd: &PdCode) -> LeeComplex {
    LeeComplex::new(pd)
}

/// Lee homology: its dimension and the filtration grading of each class of
/// a filtered basis, with the spectral sequence that computed it.
#[derive(Clone, Debug)]
pub struct LeeHomology {
    pub dimension: usize,
    /// Sorted quantum filtration gradings of a filtered basis.
    pub gradings: Vec<i64>,
    pub sequence: SpectralSequence,
}

/// Spectral sequence of the quantum filtration; pages are indexed by the
/// `j`-gap, so only every fourth differential can be nonzero.
pub fn lee_pages(pd: &PdCode, r_max: usize) -> Result<SpectralSequence> {
    Ok(spectral_sequence(LeeComplex::new(pd).filtered()?, r_max).0)
}

pub fn lee_homology(pd: &PdCode) -> Result<LeeHomology> {
    let sequence = lee_pages(pd, 1)?;
    let mut gradings = Vec::new();
    for (&(p, _, _), &r) in &sequence.infinity.ranks {
        gradings.extend(std::iter::repeat(p).take(r));
    }
    gradings.sort_unstable();
    Ok(LeeHomology {
        dimension: gradings.len(),
        gradings,
        sequence,
    })
}
