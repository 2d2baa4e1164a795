//! Integer Laurent polynomials in one variable `q`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// A Laurent polynomial `Σ c_e q^e` with integer coefficients.
///
/// Zero coefficients are never stored, so structural equality is polynomial
/// equality.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `coeff · q^exp`
    pub fn monomial(coeff: i64, exp: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff);
        p
    }

    /// `q + q^{-1}`, the value on the crossingless unknot.
    pub fn unknot() -> Self {
        Self::from_terms([(1, 1), (-1, 1)])
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs; repeated
    /// exponents are summed.
    pub fn from_terms<I: IntoIterator<Item = (i64, i64)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exp: i64, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let slot = self.terms.entry(exp).or_insert(0);
        *slot = slot
            .checked_add(coeff)
            .expect("Laurent coefficient overflow");
        if *slot == 0 {
            self.terms.remove(&exp);
        }
    }

    pub fn coeff(&self, exp: i64) -> i64 {
        self.terms.get(&exp).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(&e, &c)| (e + k, c)).collect(),
        }
    }

    pub fn scale(&self, s: i64) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (e, c * s)))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluates at `q = 1` (the sum of coefficients).
    pub fn eval_one(&self) -> i64 {
        self.terms.values().sum()
    }

    /// The quantum integer `[n]_q = (q^n - q^{-n}) / (q - q^{-1})`, with
    /// `[0] = 0` and `[-n] = -[n]`.
    pub fn quantum_integer(n: i64) -> Self {
        if n == 0 {
            return Self::zero();
        }
        let sign = n.signum();
        let m = n.abs();
        Self::from_terms((0..m).map(|k| (m - 1 - 2 * k, sign)))
    }

    /// Serialisable `[[exp, coeff], ...]` form sorted by exponent.
    pub fn to_pairs(&self) -> Vec<(i64, i64)> {
        self.terms().collect()
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Formats as sorted `coeff q^exp` terms joined by ` + `, e.g. `1 q^-1 + 1 q^1`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms().map(|(e, c)| format!("{c} q^{e}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_pairs().serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let pairs = Vec::<(i64, i64)>::deserialize(d)?;
        Ok(Self::from_terms(pairs))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in rhs.terms() {
            self.add_term(e, c);
        }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, -c);
        }
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(-1)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.add_term(
                    e1 + e2,
                    c1.checked_mul(c2).expect("Laurent coefficient overflow"),
                );
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_coefficients_are_dropped() {
        let p = LaurentPoly::from_terms([(1, 2), (1, -2), (0, 3)]);
        assert_eq!(p, LaurentPoly::monomial(3, 0));
        assert_eq!(p.terms().count(), 1);
    }

    #[test]
    fn quantum_integers() {
        assert_eq!(LaurentPoly::quantum_integer(1), LaurentPoly::one());
        assert_eq!(LaurentPoly::quantum_integer(2), LaurentPoly::unknot());
        assert_eq!(
            LaurentPoly::quantum_integer(3),
            LaurentPoly::from_terms([(2, 1), (0, 1), (-2, 1)])
        );
        // [n][2] = [n+1] + [n-1]
        for n in 1..8 {
            let lhs = &LaurentPoly::quantum_integer(n) * &LaurentPoly::unknot();
            let rhs = &LaurentPoly::quantum_integer(n + 1) + &LaurentPoly::quantum_integer(n - 1);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn display_is_sorted() {
        let p = LaurentPoly::from_terms([(9, -1), (1, 1), (5, 1), (3, 1)]);
        assert_eq!(p.to_string(), "1 q^1 + 1 q^3 + 1 q^5 + -1 q^9");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
    }

    #[test]
    fn serde_pairs() {
        let p = LaurentPoly::from_terms([(-1, 1), (1, 1)]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, "[[-1,1],[1,1]]");
        let back: LaurentPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }
}
