//! Rasmussen invariants of knots and links, and the colored set.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{spectral_sequence, FilteredComplex};
use crate::budget::Budget;
use crate::colored::{binom_product, color_levels};
use crate::diagrams::{orient_cable, zero_framed_cable, PdCode};
use crate::error::{Error, Result};
use crate::khovanov::Enhanced;
use crate::lee::canonical::canonical_generators_in;
use crate::lee::complex::{lee_homology, LeeComplex};

/// How `s` of a link is read off the degrees `d₊ = deg(𝔰_o + 𝔰_ō)` and
/// `d₋ = deg(𝔰_o − 𝔰_ō)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SLinkFormula {
    /// `(d₊ + d₋) / 2`.
    #[default]
    Mean,
    /// `(d₊ − d₋) / 2`.
    Difference,
}

/// `s = s_min + 1`, `s_min` the lowest filtration grading of a nonzero Lee
/// class.
pub fn s_knot(pd: &PdCode) -> Result<i64> {
    if pd.component_count() != 1 {
        return Err(Error::MultiComponent(pd.component_count()));
    }
    let h = lee_homology(pd)?;
    let min = *h
        .gradings
        .first()
        .ok_or_else(|| Error::Internal("Lee homology of a knot is zero".into()))?;
    Ok(min + 1)
}

/// Filtration degrees `(d₊, d₋)` of `𝔰_o ± 𝔰_ō`.
pub fn canonical_degrees(pd: &PdCode) -> Result<(i64, i64)> {
    let lee = LeeComplex::new(pd);
    let gens = canonical_generators_in(&lee, pd)?;
    let kc = lee.khovanov().clone();
    let to_vec = |v: &BTreeMap<Enhanced, i64>, sign: i64| {
        let mut out = BTreeMap::new();
        for (&e, &c) in v {
            let w = gens.s_obar.get(&e).copied().unwrap_or(0);
            let t = c + sign * w;
            if t != 0 {
                out.insert(kc.index(e), BigRational::from_integer(BigInt::from(t)));
            }
        }
        out
    };
    let plus = to_vec(&gens.s_o, 1);
    let minus = to_vec(&gens.s_o, -1);
    let mut c = lee.into_complex();
    let hp = c.track(plus);
    let hm = c.track(minus);
    let (_, reduced) = spectral_sequence(FilteredComplex::new(c)?, 0);
    let degree = |h: usize, name: &str| {
        reduced
            .tracked(h)
            .keys()
            .map(|&x| reduced.gen(x).level)
            .min()
            .ok_or_else(|| Error::Internal(format!("{name} is zero in Lee homology")))
    };
    Ok((degree(hp, "𝔰_o + 𝔰_ō")?, degree(hm, "𝔰_o − 𝔰_ō")?))
}

/// `s` of an oriented link diagram; the empty diagram has `s = 0` by
/// convention.
pub fn s_link(pd: &PdCode, formula: SLinkFormula) -> Result<i64> {
    if pd.component_count() == 0 {
        return Ok(0);
    }
    let (dp, dm) = canonical_degrees(pd)?;
    Ok(match formula {
        SLinkFormula::Mean => (dp + dm).div_euclid(2),
        SLinkFormula::Difference => (dp - dm).div_euclid(2),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColoredRasmussenEntry {
    pub k: Vec<usize>,
    /// One `+` (as drawn) or `-` (reversed) per component.
    pub orientation: String,
    pub s: i64,
    /// `binom_product(n, k) · s`.
    pub weighted: i64,
    /// The cable is empty and `s = 0` by convention.
    pub empty: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColoredRasmussen {
    pub n: Vec<usize>,
    pub entries: Vec<ColoredRasmussenEntry>,
}

impl ColoredRasmussen {
    pub fn to_json_value(&self) -> Value {
        json!({"n": self.n, "entries": self.entries})
    }

    pub fn get(&self, k: &[usize], orientation: &str) -> Option<&ColoredRasmussenEntry> {
        self.entries
            .iter()
            .find(|e| e.k == k && e.orientation == orientation)
    }
}

/// The orientation labels of an `l`-component link, in mask order.
pub fn orientation_labels(l: usize) -> Vec<String> {
    (0..1usize << l)
        .map(|mask| {
            (0..l)
                .map(|i| if (mask >> i) & 1 == 1 { '-' } else { '+' })
                .collect()
        })
        .collect()
}

/// The cable used for the cell `(k, o)`: reorient by `o`, pass to the
/// 0-framed `(n − 2k)`-cable and alternate the copies.
pub fn rasmussen_cable(pd: &PdCode, n: &[usize], k: &[usize], orientation_mask: usize) -> PdCode {
    let reversed: BTreeSet<usize> = (0..pd.component_count())
        .filter(|i| (orientation_mask >> i) & 1 == 1)
        .collect();
    let base = pd.reverse_components(&reversed);
    let m: Vec<usize> = n.iter().zip(k).map(|(a, b)| a - 2 * b).collect();
    orient_cable(&zero_framed_cable(&base, &m), &m)
}

/// `{s(D^{n−2k}, o)}` over `0 ≤ k ≤ ⌊n/2⌋` and every orientation of `D`.
pub fn colored_rasmussen(
    pd: &PdCode,
    n: &[usize],
    budget: &Budget,
    formula: SLinkFormula,
) -> Result<ColoredRasmussen> {
    let l = pd.component_count();
    if n.len() != l {
        return Err(Error::ColorRange(format!(
            "{} colors for {l} components",
            n.len()
        )));
    }
    let labels = orientation_labels(l);
    let mut cells = Vec::new();
    for k in color_levels(n) {
        for (mask, label) in labels.iter().enumerate() {
            cells.push((k.clone(), mask, label.clone()));
        }
    }
    // budget check up front, before any state space is allocated
    let cables: Vec<PdCode> = cells
        .iter()
        .map(|(k, mask, _)| rasmussen_cable(pd, n, k, *mask))
        .collect();
    for (cable, (k, _, label)) in cables.iter().zip(&cells) {
        budget.check_homology(
            &format!("cable for k = {k:?}, orientation {label}"),
            cable.crossing_count(),
        )?;
    }
    let entries: Vec<Result<ColoredRasmussenEntry>> = cells
        .par_iter()
        .zip(cables.par_iter())
        .map(|((k, _, label), cable)| {
            let empty = cable.component_count() == 0;
            let s = if empty { 0 } else { s_link(cable, formula)? };
            let weight = binom_product(n, k)? as i64;
            Ok(ColoredRasmussenEntry {
                k: k.clone(),
                orientation: label.clone(),
                s,
                weighted: weight * s,
                empty,
            })
        })
        .collect();
    Ok(ColoredRasmussen {
        n: n.to_vec(),
        entries: entries.into_iter().collect::<Result<_>>()?,
    })
}
