//! The colored bicomplex `C^{k,i,j}_n(D) = ⊕_{s ∈ I_k} C^{i,j}(D^{n−2k})`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use crate::algebra::{BiGen, Bicomplex};
use crate::budget::Budget;
use crate::colored::binom::{binom_product, color_levels};
use crate::colored::jones::{check_colors, colored_cable};
use crate::diagrams::PdCode;
use crate::error::Result;
use crate::khovanov::{Frobenius, KhovanovComplex};

/// One summand `C(D^{n−2k})`, the `s`-th copy at level `k`.
#[derive(Clone, Debug)]
pub struct Summand {
    pub k: Vec<usize>,
    pub s: usize,
    pub cable: Arc<PdCode>,
    pub complex: Arc<KhovanovComplex>,
}

/// What a horizontal differential sees of a summand.
#[derive(Clone, Copy, Debug)]
pub struct SummandRef<'a> {
    pub k: &'a [usize],
    pub s: usize,
    pub complex: &'a KhovanovComplex,
}

/// Supplies `d′` block by block, from a summand at level `|k|` to one at
/// level `|k| + 1`, as `(source, target, coefficient)` in the summands'
/// own basis indices. Must depend only on the `(k, s)` indices.
pub trait DPrime: Sync {
    fn block(&self, from: SummandRef<'_>, to: SummandRef<'_>) -> Vec<(usize, usize, BigRational)>;
}

impl<F> DPrime for F
where
    F: Fn(SummandRef<'_>, SummandRef<'_>) -> Vec<(usize, usize, BigRational)> + Sync,
{
    fn block(&self, from: SummandRef<'_>, to: SummandRef<'_>) -> Vec<(usize, usize, BigRational)> {
        self(from, to)
    }
}

#[derive(Clone, Debug)]
pub struct ColoredBicomplex {
    pub n: Vec<usize>,
    pub summands: Vec<Summand>,
    /// Offset of each summand's basis in the bicomplex.
    pub offsets: Vec<usize>,
    pub bicomplex: Bicomplex,
}

impl ColoredBicomplex {
    /// Number of summands at level `k`.
    pub fn summand_count(&self, k: &[usize]) -> usize {
        self.summands.iter().filter(|s| s.k == k).count()
    }

    /// Summand containing bicomplex generator `g`.
    pub fn summand_of(&self, g: usize) -> usize {
        self.offsets.partition_point(|&o| o <= g) - 1
    }
}

fn level(k: &[usize]) -> usize {
    k.iter().sum()
}

/// Builds every summand from the alternately oriented 0-framed cables,
/// with `d″` the blockwise Khovanov differential and `d′` from `dprime`
/// (zero when absent). A supplied `d′` is validated.
pub fn assemble_colored_bicomplex(
    pd: &PdCode,
    n: &[usize],
    dprime: Option<&dyn DPrime>,
    budget: &Budget,
) -> Result<ColoredBicomplex> {
    check_colors(pd, n)?;
    let levels = color_levels(n);
    let mut cables = Vec::new();
    for k in &levels {
        let m: Vec<usize> = n.iter().zip(k).map(|(a, b)| a - 2 * b).collect();
        let cable = colored_cable(pd, &m);
        budget.check_homology(&format!("cable for k = {k:?}"), cable.crossing_count())?;
        cables.push(cable);
    }
    let complexes: Vec<Arc<KhovanovComplex>> = cables
        .par_iter()
        .map(|c| Arc::new(KhovanovComplex::new(c)))
        .collect();

    let mut summands = Vec::new();
    for ((k, cable), complex) in levels.iter().zip(cables).zip(complexes) {
        let cable = Arc::new(cable);
        for s in 0..binom_product(n, k)? as usize {
            summands.push(Summand {
                k: k.clone(),
                s,
                cable: cable.clone(),
                complex: complex.clone(),
            });
        }
    }

    let mut offsets = Vec::with_capacity(summands.len());
    let mut gens = Vec::new();
    for sm in &summands {
        offsets.push(gens.len());
        let kk = level(&sm.k) as i64;
        for e in sm.complex.generators() {
            let (i, j) = sm.complex.grading(e);
            gens.push(BiGen { k: kk, i, j });
        }
    }
    let mut b = Bicomplex::new(gens);
    for (sm, &off) in summands.iter().zip(&offsets) {
        let c = &sm.complex;
        for e in c.generators() {
            let x = off + c.index(e);
            for (t, v) in c.differential(e, Frobenius::Khovanov) {
                b.add_vertical(
                    x,
                    off + c.index(t),
                    BigRational::from_integer(BigInt::from(v)),
                );
            }
        }
    }
    if let Some(dp) = dprime {
        let by_level: BTreeMap<usize, Vec<usize>> =
            (0..summands.len()).fold(BTreeMap::new(), |mut m, i| {
                m.entry(level(&summands[i].k))
                    .or_insert_with(Vec::new)
                    .push(i);
                m
            });
        for (&lv, srcs) in &by_level {
            let Some(dsts) = by_level.get(&(lv + 1)) else {
                continue;
            };
            for &a in srcs {
                for &t in dsts {
                    let (sa, st) = (&summands[a], &summands[t]);
                    let from = SummandRef {
                        k: &sa.k,
                        s: sa.s,
                        complex: &sa.complex,
                    };
                    let to = SummandRef {
                        k: &st.k,
                        s: st.s,
                        complex: &st.complex,
                    };
                    for (x, y, v) in dp.block(from, to) {
                        b.add_horizontal(offsets[a] + x, offsets[t] + y, v);
                    }
                }
            }
        }
        b.validate()?;
    }
    Ok(ColoredBicomplex {
        n: n.to_vec(),
        summands,
        offsets,
        bicomplex: b,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn unknot_two() {
        let b =
            assemble_colored_bicomplex(&PdCode::unknot(), &[2], None, &Budget::default()).unwrap();
        assert_eq!(b.summands.len(), 2);
        assert_eq!(b.summands[0].complex.len(), 4);
        assert_eq!(b.summands[1].k, vec![1]);
        assert_eq!(b.summands[1].complex.len(), 1);
        assert_eq!(b.bicomplex.ranks().get(&(1, 0, 0)), Some(&1));
    }

    #[test]
    fn multiplicities() {
        let b =
            assemble_colored_bicomplex(&PdCode::unknot(), &[4], None, &Budget::default()).unwrap();
        assert_eq!(b.summand_count(&[0]), 1);
        assert_eq!(b.summand_count(&[1]), 3);
        assert_eq!(b.summand_count(&[2]), 1);
        let trefoil =
            PdCode::parse_json(r#"{"crossings": [[1,5,2,4],[3,1,4,6],[5,3,6,2]]}"#).unwrap();
        let b = assemble_colored_bicomplex(&trefoil, &[1], None, &Budget::default()).unwrap();
        assert_eq!(b.summands.len(), 1);
        assert_eq!(b.summands[0].cable.crossing_count(), 3);
    }

    #[test]
    fn budget_is_enforced() {
        let trefoil =
            PdCode::parse_json(r#"{"crossings": [[1,5,2,4],[3,1,4,6],[5,3,6,2]]}"#).unwrap();
        let r = assemble_colored_bicomplex(&trefoil, &[2], None, &Budget::default());
        assert!(matches!(r, Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn non_anticommuting_dprime_is_rejected() {
        let hopf = PdCode::parse_json(r#"{"crossings": [[1,3,2,4],[3,1,4,2]]}"#).unwrap();
        // a map onto the unknot summand that is nonzero on a boundary
        let bad = |from: SummandRef<'_>, to: SummandRef<'_>| {
            let mut out = Vec::new();
            for e in from.complex.generators() {
                for (t, _) in from.complex.differential(e, Frobenius::Khovanov) {
                    let (i, j) = from.complex.grading(t);
                    for u in to.complex.generators() {
                        if to.complex.grading(u) == (i, j) && out.is_empty() {
                            out.push((
                                from.complex.index(t),
                                to.complex.index(u),
                                BigRational::from_integer(1.into()),
                            ));
                        }
                    }
                }
            }
            out
        };
        let r = assemble_colored_bicomplex(&hopf, &[2, 1], Some(&bad), &Budget::default());
        assert!(matches!(r, Err(Error::Anticommutation(_))), "{r:?}");
        let zero = |_: SummandRef<'_>, _: SummandRef<'_>| Vec::new();
        assert!(
            assemble_colored_bicomplex(&hopf, &[2, 1], Some(&zero), &Budget::default()).is_ok()
        );
    }
}
