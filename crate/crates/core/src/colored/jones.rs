use rayon::prelude::*;

use crate::budget::Budget;
use crate::colored::binom::{binom_product, color_levels};
use crate::diagrams::{orient_cable, zero_framed_cable, PdCode};
use crate::error::{Error, Result};
use crate::khovanov::kauffman_bracket_jones;
use crate::poly::LaurentPoly;

/// The alternately oriented, 0-framed `m`-cable.
pub fn colored_cable(pd: &PdCode, m: &[usize]) -> PdCode {
    orient_cable(&zero_framed_cable(pd, m), m)
}

pub(crate) fn check_colors(pd: &PdCode, n: &[usize]) -> Result<()> {
    if n.len() != pd.component_count() {
        return Err(Error::ColorRange(format!(
            "{} colors for {} components",
            n.len(),
            pd.component_count()
        )));
    }
    Ok(())
}

/// `J_n = Σ_k (−1)^{|k|} ∏C(nᵢ−kᵢ, kᵢ) J(D^{n−2k})`.
pub fn colored_jones(pd: &PdCode, n: &[usize], budget: &Budget) -> Result<LaurentPoly> {
    check_colors(pd, n)?;
    let levels = color_levels(n);
    let cables: Vec<(Vec<usize>, PdCode)> = levels
        .into_iter()
        .map(|k| {
            let m: Vec<usize> = n.iter().zip(&k).map(|(a, b)| a - 2 * b).collect();
            (k, colored_cable(pd, &m))
        })
        .collect();
    for (k, c) in &cables {
        budget.check_bracket(&format!("cable for k = {k:?}"), c.crossing_count())?;
    }
    let terms: Vec<Result<LaurentPoly>> = cables
        .par_iter()
        .map(|(k, c)| {
            let sign = if k.iter().sum::<usize>() % 2 == 0 {
                1
            } else {
                -1
            };
            Ok(kauffman_bracket_jones(c).scale(sign * binom_product(n, k)? as i64))
        })
        .collect();
    let mut total = LaurentPoly::zero();
    for t in terms {
        total = &total + &t?;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknot_colors() {
        let b = Budget::default();
        let u = PdCode::unknot();
        assert_eq!(colored_jones(&u, &[1], &b).unwrap(), LaurentPoly::unknot());
        assert_eq!(
            colored_jones(&u, &[2], &b).unwrap(),
            LaurentPoly::from_terms([(2, 1), (0, 1), (-2, 1)])
        );
        assert_eq!(colored_jones(&u, &[0], &b).unwrap(), LaurentPoly::one());
    }

    #[test]
    fn color_count_must_match() {
        assert!(matches!(
            colored_jones(&PdCode::unknot(), &[1, 1], &Budget::default()),
            Err(Error::ColorRange(_))
        ));
    }
}
