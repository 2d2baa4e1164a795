//! The unnormalized Jones polynomial, from the Euler characteristic and
//! from the Kauffman state sum.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::algebra::HomologyTable;
use crate::diagrams::{GaussPhrase, LoopCounter, PdCode, SmoothingState};
use crate::khovanov::complex::KhovanovComplex;
use crate::poly::LaurentPoly;

/// `Σ (−1)^i q^j rk H^{i,j}`.
pub fn jones_from_euler(h: &HomologyTable) -> LaurentPoly {
    LaurentPoly::from_terms(h.iter().map(|(k, g)| {
        let s = if k[0].rem_euclid(2) == 0 { 1 } else { -1 };
        (k[1], s * g.rank as i64)
    }))
}

/// Euler characteristic of the chain groups, which equals that of homology.
pub fn chain_euler(kc: &KhovanovComplex) -> LaurentPoly {
    let mut p = LaurentPoly::zero();
    for e in kc.generators() {
        let (i, j) = kc.grading(e);
        p.add_term(j, if i.rem_euclid(2) == 0 { 1 } else { -1 });
    }
    p
}

const CHUNK: u64 = 1 << 12;

fn state_histogram(counter: &LoopCounter) -> BTreeMap<(u32, usize), u64> {
    let states = 1u64 << counter.crossing_count();
    let chunks = states.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut h: BTreeMap<(u32, usize), u64> = BTreeMap::new();
            for s in c * CHUNK..((c + 1) * CHUNK).min(states) {
                let st = SmoothingState(s);
                *h.entry((st.ones(), counter.count(st))).or_default() += 1;
            }
            h
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_default() += v;
            }
            a
        })
}

/// `(−1)^{n₋} q^{n₊−2n₋} Σ_s (−q)^{r(s)} (q + q⁻¹)^{loops(s)}`.
pub fn kauffman_bracket_jones(pd: &PdCode) -> LaurentPoly {
    let counter = LoopCounter::new(pd);
    let (np, nm) = pd.sign_counts();
    let circle = LaurentPoly::unknot();
    let mut total = LaurentPoly::zero();
    for ((r, loops), count) in state_histogram(&counter) {
        let sign = if r % 2 == 0 { 1 } else { -1 };
        let term = circle
            .pow(loops as u32)
            .shift(r as i64)
            .scale(sign * count as i64);
        total = &total + &term;
    }
    let sign = if nm % 2 == 0 { 1 } else { -1 };
    total.shift(np as i64 - 2 * nm as i64).scale(sign)
}

/// The same state sum on a (possibly virtual) Gauss phrase.
pub fn kauffman_bracket_jones_gauss(g: &GaussPhrase) -> LaurentPoly {
    kauffman_bracket_jones(&g.to_virtual_pd())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::khovanov::complex::khovanov_homology;

    fn trefoil() -> PdCode {
        PdCode::parse_json(r#"{"crossings": [[1,5,2,4],[3,1,4,6],[5,3,6,2]]}"#).unwrap()
    }

    #[test]
    fn trefoil_jones() {
        let want = LaurentPoly::from_terms([(1, 1), (3, 1), (5, 1), (9, -1)]);
        assert_eq!(
            jones_from_euler(&khovanov_homology(&trefoil()).unwrap()),
            want
        );
        assert_eq!(kauffman_bracket_jones(&trefoil()), want);
    }

    #[test]
    fn empty_and_unknot() {
        assert_eq!(kauffman_bracket_jones(&PdCode::empty()), LaurentPoly::one());
        assert_eq!(
            jones_from_euler(&khovanov_homology(&PdCode::empty()).unwrap()),
            LaurentPoly::one()
        );
        assert_eq!(
            kauffman_bracket_jones(&PdCode::unknot()),
            LaurentPoly::unknot()
        );
    }

    #[test]
    fn virtual_phrase_has_a_bracket() {
        let g = GaussPhrase::parse("A:+O B:+U\n---\nABAB\n").unwrap();
        let p = kauffman_bracket_jones_gauss(&g);
        assert!(!p.is_zero());
    }
}
