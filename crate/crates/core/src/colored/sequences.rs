//! The three spectral sequences of the colored bicomplex and the Euler
//! characteristic identities between them and the colored Jones polynomial.

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::algebra::{Orientation, SpectralSequence};
use crate::budget::Budget;
use crate::colored::bicomplex::{assemble_colored_bicomplex, ColoredBicomplex, DPrime};
use crate::colored::jones::colored_jones;
use crate::diagrams::PdCode;
use crate::error::Result;
use crate::lee::lee_pages;
use crate::poly::LaurentPoly;

/// Lee spectral sequence of one summand.
#[derive(Clone, Debug)]
pub struct SummandLee {
    pub k: Vec<usize>,
    pub s: usize,
    pub sequence: Arc<SpectralSequence>,
}

#[derive(Clone, Debug)]
pub struct ThreeSequences {
    /// `′E`: filtered by `k`, `E₁` = vertical (Khovanov) homology.
    pub row_first: SpectralSequence,
    /// `″E`: filtered by `i`, `E₁` = horizontal homology.
    pub column_first: SpectralSequence,
    /// The quantum-filtration sequence of each summand's Lee complex.
    pub lee: Vec<SummandLee>,
}

impl ThreeSequences {
    /// `Σ_s (−1)^{|k|} χ_q(E_r)` over the per-summand Lee pages.
    pub fn lee_signed_rank_sum(&self, r: usize) -> LaurentPoly {
        let mut total = LaurentPoly::zero();
        for sl in &self.lee {
            let sign = if sl.k.iter().sum::<usize>() % 2 == 0 {
                1
            } else {
                -1
            };
            total = &total + &sl.sequence.page(r).signed_rank_sum().scale(sign);
        }
        total
    }

    pub fn lee_signed_rank_sum_infinity(&self) -> LaurentPoly {
        self.lee_signed_rank_sum(usize::MAX)
    }
}

pub fn three_sequences(b: &ColoredBicomplex, r_max: usize) -> Result<ThreeSequences> {
    let row_first = b.bicomplex.pages(Orientation::RowFirst, r_max)?;
    let column_first = b.bicomplex.pages(Orientation::ColumnFirst, r_max)?;
    // summands at one level share their cable; compute each cable once
    let mut distinct: Vec<Arc<PdCode>> = Vec::new();
    let mut which = Vec::with_capacity(b.summands.len());
    let mut seen: HashMap<*const PdCode, usize> = HashMap::new();
    for sm in &b.summands {
        let idx = *seen.entry(Arc::as_ptr(&sm.cable)).or_insert_with(|| {
            distinct.push(sm.cable.clone());
            distinct.len() - 1
        });
        which.push(idx);
    }
    let seqs: Vec<Result<SpectralSequence>> =
        distinct.par_iter().map(|c| lee_pages(c, r_max)).collect();
    let seqs: Vec<Arc<SpectralSequence>> = seqs
        .into_iter()
        .map(|s| s.map(Arc::new))
        .collect::<Result<_>>()?;
    let lee = b
        .summands
        .iter()
        .zip(which)
        .map(|(sm, w)| SummandLee {
            k: sm.k.clone(),
            s: sm.s,
            sequence: seqs[w].clone(),
        })
        .collect();
    Ok(ThreeSequences {
        row_first,
        column_first,
        lee,
    })
}

/// One page of one sequence compared with the colored Jones polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PageCheck {
    /// `None` for the limit page.
    pub r: Option<usize>,
    pub polynomial: LaurentPoly,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceCheck {
    pub name: &'static str,
    pub pages: Vec<PageCheck>,
}

impl SequenceCheck {
    pub fn all_equal(&self) -> bool {
        self.pages.iter().all(|p| p.equal)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerReport {
    pub n: Vec<usize>,
    pub colored_jones: LaurentPoly,
    pub sequences: Vec<SequenceCheck>,
}

fn poly_json(p: &LaurentPoly) -> Value {
    json!({"terms": p.to_pairs(), "text": p.to_string()})
}

impl EulerReport {
    pub fn all_equal(&self) -> bool {
        self.sequences.iter().all(SequenceCheck::all_equal)
    }

    pub fn sequence(&self, name: &str) -> Option<&SequenceCheck> {
        self.sequences.iter().find(|s| s.name == name)
    }

    pub fn to_json_value(&self) -> Value {
        let seqs: Vec<Value> = self
            .sequences
            .iter()
            .map(|s| {
                let pages: Vec<Value> = s
                    .pages
                    .iter()
                    .map(|p| {
                        let r = p.r.map_or(json!("infinity"), |r| json!(r));
                        json!({"r": r, "polynomial": poly_json(&p.polynomial), "equal": p.equal})
                    })
                    .collect();
                json!({"name": s.name, "pages": pages, "all_equal": s.all_equal()})
            })
            .collect();
        json!({
            "n": self.n,
            "colored_jones": poly_json(&self.colored_jones),
            "sequences": seqs,
            "all_equal": self.all_equal(),
        })
    }
}

/// Compares `colored_jones(D, n)` with the signed rank polynomial of pages
/// `0..=r_max` and the limit of `′E`, `″E` and the summed Lee sequences.
pub fn euler_identity_check(
    pd: &PdCode,
    n: &[usize],
    r_max: usize,
    dprime: Option<&dyn DPrime>,
    budget: &Budget,
) -> Result<EulerReport> {
    let jn = colored_jones(pd, n, budget)?;
    let b = assemble_colored_bicomplex(pd, n, dprime, budget)?;
    let seqs = three_sequences(&b, r_max)?;
    let check = |r: Option<usize>, p: LaurentPoly| PageCheck {
        r,
        equal: p == jn,
        polynomial: p,
    };
    let from_ss = |name: &'static str, ss: &SpectralSequence| SequenceCheck {
        name,
        pages: (0..=r_max)
            .map(|r| check(Some(r), ss.page(r).signed_rank_sum()))
            .chain(std::iter::once(check(None, ss.infinity.signed_rank_sum())))
            .collect(),
    };
    let lee = SequenceCheck {
        name: "lee",
        pages: (0..=r_max)
            .map(|r| check(Some(r), seqs.lee_signed_rank_sum(r)))
            .chain(std::iter::once(check(
                None,
                seqs.lee_signed_rank_sum_infinity(),
            )))
            .collect(),
    };
    Ok(EulerReport {
        n: n.to_vec(),
        colored_jones: jn.clone(),
        sequences: vec![
            from_ss("row_first", &seqs.row_first),
            from_ss("column_first", &seqs.column_first),
            lee,
        ],
    })
}
