//! Sparse chain complexes reduced by Gaussian cancellation.
//!
//! Cancelling an arrow `x → y` with unit coefficient `c` removes `x` and `y`
//! and replaces the differential by `d − d(·→y) c⁻¹ d(x→·)`. The result is
//! chain homotopy equivalent to the original complex.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::algebra::homology::{HomologyGroup, HomologyTable};
use crate::algebra::matrix::{smith_normal_form, IntegerMatrix};
use crate::algebra::ring::Ring;
use crate::error::{Error, Result};

/// Grading data of one generator: homological degree, filtration level and
/// an internal grading carried along for reporting.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gen {
    pub degree: i64,
    pub level: i64,
    pub tag: i64,
}

pub type SparseVec<R> = BTreeMap<usize, R>;

#[derive(Clone, Debug)]
pub struct SparseComplex<R: Ring> {
    gens: Vec<Gen>,
    alive: Vec<bool>,
    cols: Vec<SparseVec<R>>,
    rows: Vec<BTreeSet<usize>>,
    tracked: Vec<SparseVec<R>>,
    cancellations: usize,
}

impl<R: Ring> SparseComplex<R> {
    pub fn new(gens: Vec<Gen>) -> Self {
        let n = gens.len();
        Self {
            gens,
            alive: vec![true; n],
            cols: vec![BTreeMap::new(); n],
            rows: vec![BTreeSet::new(); n],
            tracked: Vec::new(),
            cancellations: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn gen(&self, x: usize) -> Gen {
        self.gens[x]
    }

    pub fn gens(&self) -> &[Gen] {
        &self.gens
    }

    pub fn is_alive(&self, x: usize) -> bool {
        self.alive[x]
    }

    pub fn alive(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.gens.len()).filter(|&x| self.alive[x])
    }

    pub fn alive_count(&self) -> usize {
        self.alive.iter().filter(|&&a| a).count()
    }

    pub fn cancellations(&self) -> usize {
        self.cancellations
    }

    /// Differential of `x` in the current (reduced) complex.
    pub fn column(&self, x: usize) -> &SparseVec<R> {
        &self.cols[x]
    }

    /// Adds `c` to the coefficient of `y` in `d(x)`.
    pub fn add_entry(&mut self, x: usize, y: usize, c: R) {
        if c.is_zero() {
            return;
        }
        let e = self.cols[x].entry(y).or_insert_with(R::zero);
        *e = e.add(&c);
        if e.is_zero() {
            self.cols[x].remove(&y);
            self.rows[y].remove(&x);
        } else {
            self.rows[y].insert(x);
        }
    }

    pub fn entry_count(&self) -> usize {
        self.cols.iter().map(|c| c.len()).sum()
    }

    /// Checks that `d` raises degree by one and squares to zero.
    pub fn check(&self) -> Result<()> {
        for x in self.alive() {
            for &y in self.cols[x].keys() {
                if self.gens[y].degree != self.gens[x].degree + 1 {
                    return Err(Error::NotAComplex(format!(
                        "arrow {x} → {y} changes degree {} → {}",
                        self.gens[x].degree, self.gens[y].degree
                    )));
                }
            }
            let mut sq: SparseVec<R> = BTreeMap::new();
            for (y, a) in &self.cols[x] {
                for (z, b) in &self.cols[*y] {
                    let e = sq.entry(*z).or_insert_with(R::zero);
                    *e = e.add(&a.mul(b));
                }
            }
            if let Some((z, _)) = sq.iter().find(|(_, v)| !v.is_zero()) {
                return Err(Error::NotAComplex(format!(
                    "d²({x}) has a nonzero coefficient on {z}"
                )));
            }
        }
        Ok(())
    }

    /// Checks that no arrow decreases the filtration level.
    pub fn check_filtered(&self) -> Result<()> {
        for x in self.alive() {
            for &y in self.cols[x].keys() {
                if self.gens[y].level < self.gens[x].level {
                    return Err(Error::Filtration(format!(
                        "arrow {x} → {y} lowers level {} → {}",
                        self.gens[x].level, self.gens[y].level
                    )));
                }
            }
        }
        Ok(())
    }

    /// Registers a vector to be carried through cancellations; returns its
    /// handle. Only cycles are meaningful to track.
    pub fn track(&mut self, v: SparseVec<R>) -> usize {
        self.tracked.push(v);
        self.tracked.len() - 1
    }

    pub fn tracked(&self, h: usize) -> &SparseVec<R> {
        &self.tracked[h]
    }

    /// Cancels the arrow `x → y`, whose coefficient must be a unit.
    pub fn cancel(&mut self, x: usize, y: usize) {
        let c = self.cols[x]
            .get(&y)
            .expect("cancelled arrow exists")
            .clone();
        let cinv = c.unit_inverse().expect("cancelled coefficient is a unit");
        let xcol: Vec<(usize, R)> = self.cols[x]
            .iter()
            .filter(|(&w, _)| w != y)
            .map(|(&w, v)| (w, v.clone()))
            .collect();

        for t in 0..self.tracked.len() {
            if let Some(vy) = self.tracked[t].get(&y).cloned() {
                let f = vy.mul(&cinv);
                let v = &mut self.tracked[t];
                v.remove(&y);
                for (w, b) in &xcol {
                    let e = v.entry(*w).or_insert_with(R::zero);
                    *e = e.sub(&f.mul(b));
                    if e.is_zero() {
                        v.remove(w);
                    }
                }
            }
            self.tracked[t].remove(&x);
        }

        let zs: Vec<usize> = self.rows[y].iter().copied().filter(|&z| z != x).collect();
        for z in zs {
            let a = self.cols[z].remove(&y).expect("row index is consistent");
            let f = a.mul(&cinv);
            for (w, b) in &xcol {
                let e = self.cols[z].entry(*w).or_insert_with(R::zero);
                *e = e.sub(&f.mul(b));
                if e.is_zero() {
                    self.cols[z].remove(w);
                    self.rows[*w].remove(&z);
                } else {
                    self.rows[*w].insert(z);
                }
            }
        }
        self.rows[y].clear();
        for g in [x, y] {
            let out: Vec<usize> = self.cols[g].keys().copied().collect();
            for w in out {
                self.rows[w].remove(&g);
            }
            self.cols[g].clear();
            let inc: Vec<usize> = self.rows[g].iter().copied().collect();
            for z in inc {
                self.cols[z].remove(&g);
            }
            self.rows[g].clear();
            self.alive[g] = false;
        }
        self.cancellations += 1;
    }

    /// Cancels unit arrows accepted by `allow` until none remain. Pivots
    /// are picked greedily to keep fill-in small.
    pub fn reduce_where<F: Fn(&Gen, &Gen) -> bool>(&mut self, allow: F) {
        loop {
            let mut changed = false;
            for x in 0..self.gens.len() {
                if !self.alive[x] {
                    continue;
                }
                let mut best: Option<(usize, usize)> = None;
                let xlen = self.cols[x].len();
                for (&y, c) in &self.cols[x] {
                    if c.unit_inverse().is_none() || !allow(&self.gens[x], &self.gens[y]) {
                        continue;
                    }
                    let cost = (self.rows[y].len() - 1) * (xlen - 1);
                    if best.map_or(true, |(_, b)| cost < b) {
                        best = Some((y, cost));
                        if cost == 0 {
                            break;
                        }
                    }
                }
                if let Some((y, _)) = best {
                    self.cancel(x, y);
                    changed = true;
                }
            }
            if !changed {
                return;
            }
        }
    }

    pub fn reduce(&mut self) {
        self.reduce_where(|_, _| true);
    }

    /// Whether the current differential is zero.
    pub fn differential_is_zero(&self) -> bool {
        self.alive().all(|x| self.cols[x].is_empty())
    }
}

impl SparseComplex<BigInt> {
    /// Integral homology keyed by `[degree, tag]`. The differential must
    /// preserve tags.
    pub fn homology(mut self) -> Result<HomologyTable> {
        self.check()?;
        for x in self.alive() {
            if self.cols[x]
                .keys()
                .any(|&y| self.gens[y].tag != self.gens[x].tag)
            {
                return Err(Error::NotAComplex(
                    "integral homology needs a tag-preserving differential".into(),
                ));
            }
        }
        self.reduce();
        // residual blocks by (degree, tag)
        let mut blocks: BTreeMap<(i64, i64), Vec<usize>> = BTreeMap::new();
        for x in self.alive() {
            blocks
                .entry((self.gens[x].degree, self.gens[x].tag))
                .or_default()
                .push(x);
        }
        let mut table = HomologyTable::new();
        let empty = Vec::new();
        // invariant factors of the map out of each block
        let mut outgoing: BTreeMap<(i64, i64), Vec<BigInt>> = BTreeMap::new();
        for (&(n, t), src) in &blocks {
            let dst = blocks.get(&(n + 1, t)).unwrap_or(&empty);
            if dst.is_empty() {
                continue;
            }
            let pos: BTreeMap<usize, usize> =
                dst.iter().enumerate().map(|(i, &y)| (y, i)).collect();
            let trip = src.iter().enumerate().flat_map(|(j, &x)| {
                self.cols[x]
                    .iter()
                    .map(|(y, v)| (pos[y], j, v.clone()))
                    .collect::<Vec<_>>()
            });
            let m = IntegerMatrix::from_triplets(dst.len(), src.len(), trip);
            if !m.is_zero() {
                outgoing.insert((n, t), smith_normal_form(&m).invariant_factors());
            }
        }
        for (&(n, t), src) in &blocks {
            let out_rank = outgoing.get(&(n, t)).map_or(0, |f| f.len());
            let inc = outgoing.get(&(n - 1, t));
            let in_rank = inc.map_or(0, |f| f.len());
            let torsion: Vec<u64> = inc
                .map(|f| {
                    f.iter()
                        .filter(|v| **v > BigInt::from(1))
                        .map(|v| u64::try_from(v).expect("torsion order fits in u64"))
                        .collect()
                })
                .unwrap_or_default();
            let rank = src.len() - out_rank - in_rank;
            if rank > 0 || !torsion.is_empty() {
                table.insert(vec![n, t], HomologyGroup { rank, torsion });
            }
        }
        Ok(table)
    }
}

impl SparseComplex<BigRational> {
    /// Rational homology ranks keyed by `[degree, tag]`.
    pub fn rational_ranks(mut self) -> Result<BTreeMap<(i64, i64), usize>> {
        self.check()?;
        self.reduce();
        let mut out = BTreeMap::new();
        for x in self.alive() {
            *out.entry((self.gens[x].degree, self.gens[x].tag))
                .or_insert(0) += 1;
        }
        Ok(out)
    }
}

/// Converts an integral complex to rational coefficients.
pub fn to_rational(c: &SparseComplex<BigInt>) -> SparseComplex<BigRational> {
    let mut q = SparseComplex::new(c.gens.clone());
    for x in c.alive() {
        for (&y, v) in &c.cols[x] {
            q.add_entry(x, y, BigRational::from_integer(v.clone()));
        }
    }
    q.alive = c.alive.clone();
    q
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(degree: i64) -> Gen {
        Gen {
            degree,
            level: 0,
            tag: 0,
        }
    }

    #[test]
    fn single_generator() {
        let c: SparseComplex<BigInt> = SparseComplex::new(vec![g(0)]);
        let h = c.homology().unwrap();
        assert_eq!(h.get(&[0, 0]).unwrap().rank, 1);
    }

    #[test]
    fn multiplication_by_two() {
        let mut c: SparseComplex<BigInt> = SparseComplex::new(vec![g(0), g(1)]);
        c.add_entry(0, 1, BigInt::from(2));
        let h = c.homology().unwrap();
        assert!(h.get(&[0, 0]).is_none());
        assert_eq!(
            h.get(&[1, 0]).unwrap(),
            &HomologyGroup {
                rank: 0,
                torsion: vec![2]
            }
        );
    }

    #[test]
    fn rejects_non_complex() {
        let mut c: SparseComplex<BigInt> = SparseComplex::new(vec![g(0), g(1), g(2)]);
        c.add_entry(0, 1, BigInt::from(1));
        c.add_entry(1, 2, BigInt::from(1));
        assert!(matches!(c.homology(), Err(Error::NotAComplex(_))));
    }

    #[test]
    fn cancellation_tracks_cycles() {
        // 0 → {1, 2} with d(0) = 1 + 2; the cycle 1 is homologous to -2
        let mut c: SparseComplex<BigRational> = SparseComplex::new(vec![g(0), g(1), g(1)]);
        let one = BigRational::from_integer(1.into());
        c.add_entry(0, 1, one.clone());
        c.add_entry(0, 2, one.clone());
        let h = c.track(BTreeMap::from([(1, one.clone())]));
        c.cancel(0, 1);
        assert_eq!(c.tracked(h), &BTreeMap::from([(2, -one)]));
        assert_eq!(c.alive_count(), 1);
    }
}
