//! Bicomplexes over ℚ and the spectral sequences of their two filtrations.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::algebra::filtered::{spectral_sequence, FilteredComplex, SpectralSequence, Q};
use crate::algebra::reduce::{Gen, SparseComplex};
use crate::error::{Error, Result};

/// Generator of a bicomplex: column `k`, row `i`, internal grading `j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BiGen {
    pub k: i64,
    pub i: i64,
    pub j: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    /// Filter by `k`; `E_1` is the homology of `d″` (vertical).
    RowFirst,
    /// Filter by `i`; `E_1` is the homology of `d′` (horizontal).
    ColumnFirst,
}

/// `d′` raises `k`, `d″` raises `i`; both preserve `j`.
#[derive(Clone, Debug, Default)]
pub struct Bicomplex {
    gens: Vec<BiGen>,
    horizontal: Vec<BTreeMap<usize, Q>>,
    vertical: Vec<BTreeMap<usize, Q>>,
}

fn compose(a: &[BTreeMap<usize, Q>], b: &[BTreeMap<usize, Q>], x: usize) -> BTreeMap<usize, Q> {
    // a(b(x))
    let mut out: BTreeMap<usize, Q> = BTreeMap::new();
    for (y, v) in &b[x] {
        for (z, w) in &a[*y] {
            *out.entry(*z).or_insert_with(Q::zero) += v * w;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

impl Bicomplex {
    pub fn new(gens: Vec<BiGen>) -> Self {
        let n = gens.len();
        Self {
            gens,
            horizontal: vec![BTreeMap::new(); n],
            vertical: vec![BTreeMap::new(); n],
        }
    }

    pub fn gens(&self) -> &[BiGen] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn add_horizontal(&mut self, x: usize, y: usize, v: Q) {
        let e = self.horizontal[x].entry(y).or_insert_with(Q::zero);
        *e += v;
        if e.is_zero() {
            self.horizontal[x].remove(&y);
        }
    }

    pub fn add_vertical(&mut self, x: usize, y: usize, v: Q) {
        let e = self.vertical[x].entry(y).or_insert_with(Q::zero);
        *e += v;
        if e.is_zero() {
            self.vertical[x].remove(&y);
        }
    }

    pub fn horizontal_is_zero(&self) -> bool {
        self.horizontal.iter().all(|c| c.is_empty())
    }

    /// Ranks of the underlying modules by `(k, i, j)`.
    pub fn ranks(&self) -> BTreeMap<(i64, i64, i64), usize> {
        let mut out = BTreeMap::new();
        for g in &self.gens {
            *out.entry((g.k, g.i, g.j)).or_insert(0) += 1;
        }
        out
    }

    /// Checks bidegrees, `d′² = 0`, `d″² = 0` and `d′d″ + d″d′ = 0`.
    pub fn validate(&self) -> Result<()> {
        for x in 0..self.gens.len() {
            let g = self.gens[x];
            for &y in self.horizontal[x].keys() {
                let h = self.gens[y];
                if (h.k, h.i, h.j) != (g.k + 1, g.i, g.j) {
                    return Err(Error::NotAComplex(format!(
                        "d′ arrow {x} → {y} has the wrong bidegree"
                    )));
                }
            }
            for &y in self.vertical[x].keys() {
                let h = self.gens[y];
                if (h.k, h.i, h.j) != (g.k, g.i + 1, g.j) {
                    return Err(Error::NotAComplex(format!(
                        "d″ arrow {x} → {y} has the wrong bidegree"
                    )));
                }
            }
            if !compose(&self.horizontal, &self.horizontal, x).is_empty() {
                return Err(Error::NotAComplex(format!("d′² ≠ 0 on generator {x}")));
            }
            if !compose(&self.vertical, &self.vertical, x).is_empty() {
                return Err(Error::NotAComplex(format!("d″² ≠ 0 on generator {x}")));
            }
            let mut s = compose(&self.horizontal, &self.vertical, x);
            for (z, v) in compose(&self.vertical, &self.horizontal, x) {
                *s.entry(z).or_insert_with(Q::zero) += v;
            }
            if s.values().any(|v| !v.is_zero()) {
                return Err(Error::Anticommutation(format!(
                    "d′d″ + d″d′ ≠ 0 on generator {x}"
                )));
            }
        }
        Ok(())
    }

    /// Total complex filtered by `k` (row-first) or `i` (column-first).
    pub fn total(&self, orientation: Orientation) -> SparseComplex<Q> {
        let gens = self
            .gens
            .iter()
            .map(|g| Gen {
                degree: g.k + g.i,
                level: match orientation {
                    Orientation::RowFirst => g.k,
                    Orientation::ColumnFirst => g.i,
                },
                tag: g.j,
            })
            .collect();
        let mut c = SparseComplex::new(gens);
        for x in 0..self.gens.len() {
            for (y, v) in self.horizontal[x].iter().chain(self.vertical[x].iter()) {
                c.add_entry(x, *y, v.clone());
            }
        }
        c
    }

    /// `′E` (row-first) or `″E` (column-first) pages up to `r_max`.
    pub fn pages(&self, orientation: Orientation, r_max: usize) -> Result<SpectralSequence> {
        self.validate()?;
        let f = FilteredComplex::new(self.total(orientation))?;
        Ok(spectral_sequence(f, r_max).0)
    }
}

/// `(k, i, j)` of a page key produced by [`Bicomplex::pages`].
pub fn page_key_to_kij(orientation: Orientation, key: (i64, i64, i64)) -> (i64, i64, i64) {
    let (p, n, j) = key;
    match orientation {
        Orientation::RowFirst => (p, n - p, j),
        Orientation::ColumnFirst => (n - p, p, j),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::filtered::reference_pages;
    use crate::poly::LaurentPoly;

    fn q(v: i64) -> Q {
        Q::from_integer(v.into())
    }

    #[test]
    fn zero_differentials() {
        let b = Bicomplex::new(vec![BiGen { k: 0, i: 0, j: 1 }, BiGen { k: 1, i: 0, j: 1 }]);
        let ss = b.pages(Orientation::RowFirst, 3).unwrap();
        for r in 0..=3 {
            assert_eq!(ss.page(r).total_rank(), 2);
        }
    }

    #[test]
    fn square_with_anticommuting_arrows() {
        // k,i ∈ {0,1}, one generator each, d′ = 1, d″ = ±1 so the square anticommutes
        let gens = vec![
            BiGen { k: 0, i: 0, j: 0 },
            BiGen { k: 1, i: 0, j: 0 },
            BiGen { k: 0, i: 1, j: 0 },
            BiGen { k: 1, i: 1, j: 0 },
        ];
        let mut b = Bicomplex::new(gens);
        b.add_horizontal(0, 1, q(1));
        b.add_horizontal(2, 3, q(1));
        b.add_vertical(0, 2, q(1));
        b.add_vertical(1, 3, q(-1));
        b.validate().unwrap();
        for o in [Orientation::RowFirst, Orientation::ColumnFirst] {
            let ss = b.pages(o, 3).unwrap();
            assert_eq!(ss.page(1).total_rank(), 0);
            for r in 0..=3 {
                assert_eq!(ss.page(r).signed_rank_sum(), LaurentPoly::zero());
            }
            let reference = reference_pages(&b.total(o), 3).unwrap();
            for r in 0..=3 {
                assert_eq!(ss.page(r).ranks, reference[r]);
            }
        }
    }

    #[test]
    fn commuting_square_is_rejected() {
        let gens = vec![
            BiGen { k: 0, i: 0, j: 0 },
            BiGen { k: 1, i: 0, j: 0 },
            BiGen { k: 0, i: 1, j: 0 },
            BiGen { k: 1, i: 1, j: 0 },
        ];
        let mut b = Bicomplex::new(gens);
        b.add_horizontal(0, 1, q(1));
        b.add_horizontal(2, 3, q(1));
        b.add_vertical(0, 2, q(1));
        b.add_vertical(1, 3, q(1));
        assert!(matches!(b.validate(), Err(Error::Anticommutation(_))));
    }

    #[test]
    fn page_keys_round_trip() {
        assert_eq!(page_key_to_kij(Orientation::RowFirst, (2, 5, 7)), (2, 3, 7));
        assert_eq!(
            page_key_to_kij(Orientation::ColumnFirst, (2, 5, 7)),
            (3, 2, 7)
        );
    }
}
