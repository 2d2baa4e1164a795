//! Filtered complexes over ℚ and their spectral sequences.
//!
//! The filtration is decreasing: `F^p` is spanned by generators of level
//! `≥ p` and the differential never lowers the level. Pages are computed by
//! cancelling arrows in order of increasing level gap: after all arrows of
//! gap `< r` are gone, the surviving generators form `E_r` and the arrows of
//! gap exactly `r` form `d_r`.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::algebra::dense::{nullspace, rank};
use crate::algebra::reduce::{Gen, SparseComplex};
use crate::error::{Error, Result};
use crate::poly::LaurentPoly;

pub type Q = BigRational;

/// Page key: filtration level `p`, total degree `n`, internal grading.
pub type PageKey = (i64, i64, i64);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralPage {
    pub r: usize,
    pub ranks: BTreeMap<PageKey, usize>,
    /// Rank of `d_r` on each source key.
    pub differential: BTreeMap<PageKey, usize>,
    /// Generator pairs `(source, target)` cancelled by `d_r`.
    pub pairs: Vec<(usize, usize)>,
}

impl SpectralPage {
    pub fn total_rank(&self) -> usize {
        self.ranks.values().sum()
    }

    pub fn differential_rank(&self) -> usize {
        self.differential.values().sum()
    }

    pub fn rank(&self, key: PageKey) -> usize {
        self.ranks.get(&key).copied().unwrap_or(0)
    }

    /// `Σ q^j (−1)^n rk` over the page, with `j` the internal grading.
    pub fn signed_rank_sum(&self) -> LaurentPoly {
        signed_rank_sum(&self.ranks)
    }

    pub fn to_json_value(&self) -> Value {
        let ranks: Vec<Value> = self
            .ranks
            .iter()
            .map(|(&(p, n, j), r)| json!([p, n, j, r]))
            .collect();
        let diff: Vec<Value> = self
            .differential
            .iter()
            .map(|(&(p, n, j), r)| json!([p, n, j, r]))
            .collect();
        json!({"r": self.r, "ranks": ranks, "differential": diff})
    }
}

pub fn signed_rank_sum(ranks: &BTreeMap<PageKey, usize>) -> LaurentPoly {
    LaurentPoly::from_terms(ranks.iter().map(|(&(_, n, j), &r)| {
        let s = if n.rem_euclid(2) == 0 { 1 } else { -1 };
        (j, s * r as i64)
    }))
}

#[derive(Clone, Debug)]
pub struct SpectralSequence {
    /// Pages `E_0 … E_{r_max}`.
    pub pages: Vec<SpectralPage>,
    /// The limit page.
    pub infinity: SpectralPage,
    /// First `r` from which every `d_r` vanishes.
    pub stable_from: usize,
}

impl SpectralSequence {
    pub fn page(&self, r: usize) -> &SpectralPage {
        self.pages.get(r).unwrap_or(&self.infinity)
    }

    pub fn to_json_value(&self) -> Value {
        json!({
            "pages": self.pages.iter().map(|p| p.to_json_value()).collect::<Vec<_>>(),
            "infinity": self.infinity.to_json_value(),
            "stable_from": self.stable_from,
        })
    }
}

/// A complex over ℚ whose generators carry filtration levels.
#[derive(Clone, Debug)]
pub struct FilteredComplex {
    pub complex: SparseComplex<Q>,
}

impl FilteredComplex {
    pub fn new(complex: SparseComplex<Q>) -> Result<Self> {
        complex.check()?;
        complex.check_filtered()?;
        Ok(Self { complex })
    }
}

fn snapshot(c: &SparseComplex<Q>, r: usize) -> SpectralPage {
    let mut ranks = BTreeMap::new();
    for x in c.alive() {
        let g = c.gen(x);
        *ranks.entry((g.level, g.degree, g.tag)).or_insert(0) += 1;
    }
    SpectralPage {
        r,
        ranks,
        differential: BTreeMap::new(),
        pairs: Vec::new(),
    }
}

fn gap(c: &SparseComplex<Q>, x: usize, y: usize) -> i64 {
    c.gen(y).level - c.gen(x).level
}

/// Cancels every arrow of gap exactly `r`, returning the number of
/// cancellations per source key.
fn cancel_gap(c: &mut SparseComplex<Q>, r: i64) -> (BTreeMap<PageKey, usize>, Vec<(usize, usize)>) {
    let mut counts = BTreeMap::new();
    let mut pairs = Vec::new();
    loop {
        let mut changed = false;
        for x in 0..c.len() {
            if !c.is_alive(x) {
                continue;
            }
            let pick = c
                .column(x)
                .iter()
                .filter(|(&y, v)| gap(c, x, y) == r && !v.is_zero())
                .map(|(&y, _)| y)
                .next();
            if let Some(y) = pick {
                let g = c.gen(x);
                *counts.entry((g.level, g.degree, g.tag)).or_insert(0) += 1;
                c.cancel(x, y);
                pairs.push((x, y));
                changed = true;
            }
        }
        if !changed {
            return (counts, pairs);
        }
    }
}

/// Spectral sequence of a filtered complex. Returns the pages and the fully
/// reduced complex (whose tracked vectors are the images of the registered
/// cycles).
pub fn spectral_sequence(f: FilteredComplex, r_max: usize) -> (SpectralSequence, SparseComplex<Q>) {
    let mut c = f.complex;
    let mut pages = Vec::new();
    let mut stable_from = 0usize;
    for r in 0.. {
        let mut page = snapshot(&c, r);
        if !c.differential_is_zero() {
            (page.differential, page.pairs) = cancel_gap(&mut c, r as i64);
            if !page.differential.is_empty() {
                stable_from = r + 1;
            }
        }
        if r <= r_max {
            pages.push(page);
        }
        if r >= r_max && c.differential_is_zero() {
            break;
        }
    }
    let infinity = snapshot(&c, usize::MAX);
    (
        SpectralSequence {
            pages,
            infinity,
            stable_from,
        },
        c,
    )
}

pub fn spectral_pages(f: FilteredComplex, r_max: usize) -> SpectralSequence {
    spectral_sequence(f, r_max).0
}

/// Pages from the quotient formula
/// `E_r^p = Z_r^p / (Z_{r−1}^{p+1} + d Z_{r−1}^{p−r+1})`,
/// `Z_r^p = {x ∈ F^p : dx ∈ F^{p+r}}`, by dense linear algebra. Intended
/// for small complexes (test oracle).
pub fn reference_pages(
    c: &SparseComplex<Q>,
    r_max: usize,
) -> Result<Vec<BTreeMap<PageKey, usize>>> {
    c.check()?;
    c.check_filtered()?;
    let alive: Vec<usize> = c.alive().collect();
    let preserves_tags = alive
        .iter()
        .all(|&x| c.column(x).keys().all(|&y| c.gen(y).tag == c.gen(x).tag));
    if !preserves_tags && alive.iter().any(|&x| c.gen(x).tag != c.gen(x).level) {
        return Err(Error::Filtration(
            "tags must be preserved or equal the level".into(),
        ));
    }
    let mut blocks: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for &x in &alive {
        let key = if preserves_tags { c.gen(x).tag } else { 0 };
        blocks.entry(key).or_default().push(x);
    }
    let mut out = vec![BTreeMap::new(); r_max + 1];
    for gens in blocks.values() {
        let levels: BTreeSet<i64> = gens.iter().map(|&x| c.gen(x).level).collect();
        let degrees: BTreeSet<i64> = gens.iter().map(|&x| c.gen(x).degree).collect();
        let by_degree = |n: i64| -> Vec<usize> {
            gens.iter()
                .copied()
                .filter(|&x| c.gen(x).degree == n)
                .collect()
        };
        for &n in &degrees {
            let here = by_degree(n);
            let below = by_degree(n - 1);
            let above = by_degree(n + 1);
            let pos_here: BTreeMap<usize, usize> =
                here.iter().enumerate().map(|(i, &x)| (x, i)).collect();
            // Z_r^p in degree m as vectors over the full degree-m basis
            let z = |p: i64, r: i64, src: &[usize], dst: &[usize]| -> Vec<Vec<Q>> {
                let cols: Vec<usize> = src
                    .iter()
                    .copied()
                    .filter(|&x| c.gen(x).level >= p)
                    .collect();
                let rows: Vec<usize> = dst
                    .iter()
                    .copied()
                    .filter(|&y| c.gen(y).level < p + r)
                    .collect();
                let row_pos: BTreeMap<usize, usize> =
                    rows.iter().enumerate().map(|(i, &y)| (y, i)).collect();
                let mut m = vec![vec![Q::zero(); cols.len()]; rows.len()];
                for (j, &x) in cols.iter().enumerate() {
                    for (y, v) in c.column(x) {
                        if let Some(&i) = row_pos.get(y) {
                            m[i][j] = v.clone();
                        }
                    }
                }
                let src_pos: BTreeMap<usize, usize> =
                    src.iter().enumerate().map(|(i, &x)| (x, i)).collect();
                nullspace(&m, cols.len())
                    .into_iter()
                    .map(|k| {
                        let mut v = vec![Q::zero(); src.len()];
                        for (j, &x) in cols.iter().enumerate() {
                            v[src_pos[&x]] = k[j].clone();
                        }
                        v
                    })
                    .collect()
            };
            let apply_d = |v: &[Q], src: &[usize]| -> Vec<Q> {
                let mut out = vec![Q::zero(); here.len()];
                for (i, &x) in src.iter().enumerate() {
                    if v[i].is_zero() {
                        continue;
                    }
                    for (y, w) in c.column(x) {
                        if let Some(&k) = pos_here.get(y) {
                            out[k] += &v[i] * w;
                        }
                    }
                }
                out
            };
            for &p in &levels {
                for r in 0..=r_max as i64 {
                    let zr = z(p, r, &here, &above);
                    let mut denom = z(p + 1, r - 1, &here, &above);
                    for v in z(p - r + 1, r - 1, &below, &here) {
                        denom.push(apply_d(&v, &below));
                    }
                    let dim = rank(&zr) - rank(&denom);
                    if dim > 0 {
                        let tag = if preserves_tags {
                            c.gen(here[0]).tag
                        } else {
                            p
                        };
                        out[r as usize].insert((p, n, tag), dim);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Builds a filtered complex from explicit generators and arrows.
pub fn filtered_from_arrows(
    gens: Vec<Gen>,
    arrows: &[(usize, usize, i64)],
) -> Result<FilteredComplex> {
    let mut c = SparseComplex::new(gens);
    for &(x, y, v) in arrows {
        c.add_entry(x, y, Q::from_integer(v.into()));
    }
    FilteredComplex::new(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gen(degree: i64, level: i64) -> Gen {
        Gen {
            degree,
            level,
            tag: level,
        }
    }

    fn compare(gens: Vec<Gen>, arrows: &[(usize, usize, i64)], r_max: usize) {
        let f = filtered_from_arrows(gens, arrows).unwrap();
        let reference = reference_pages(&f.complex, r_max).unwrap();
        let ss = spectral_pages(f, r_max);
        for r in 0..=r_max {
            assert_eq!(ss.page(r).ranks, reference[r], "page {r}");
        }
    }

    #[test]
    fn trivial_filtration_gives_homology() {
        let gens = vec![gen(0, 0), gen(1, 0), gen(1, 0)];
        let f = filtered_from_arrows(gens.clone(), &[(0, 1, 1)]).unwrap();
        let ss = spectral_pages(f, 3);
        assert_eq!(ss.page(1).total_rank(), 1);
        assert_eq!(
            ss.page(3),
            &SpectralPage {
                r: 3,
                ..ss.page(1).clone()
            }
        );
        compare(gens, &[(0, 1, 1)], 3);
    }

    #[test]
    fn two_level_differential() {
        // x at level 0 hits y at level 2: survives to E_2, dies on E_3
        let gens = vec![gen(0, 0), gen(1, 2)];
        let f = filtered_from_arrows(gens.clone(), &[(0, 1, 3)]).unwrap();
        let ss = spectral_pages(f, 4);
        assert_eq!(ss.page(2).total_rank(), 2);
        assert_eq!(ss.page(2).differential_rank(), 1);
        assert_eq!(ss.page(3).total_rank(), 0);
        assert_eq!(ss.stable_from, 3);
        compare(gens, &[(0, 1, 3)], 4);
    }

    #[test]
    fn rejects_decreasing_arrow() {
        let gens = vec![gen(0, 1), gen(1, 0)];
        assert!(matches!(
            filtered_from_arrows(gens, &[(0, 1, 1)]),
            Err(Error::Filtration(_))
        ));
    }

    #[test]
    fn zigzag_matches_reference() {
        // a staircase with differentials of several lengths
        let gens = vec![
            gen(0, 0),
            gen(1, 1),
            gen(0, 1),
            gen(1, 3),
            gen(0, 2),
            gen(1, 4),
            gen(1, 2),
        ];
        let arrows = [
            (0, 1, 1),
            (0, 3, 1),
            (2, 3, 2),
            (4, 5, 1),
            (4, 6, 1),
            (2, 6, 1),
        ];
        compare(gens, &arrows, 5);
    }
}
