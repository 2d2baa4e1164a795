//! Sign functions and the functors `V_{L₁⊂L}`, `V¹_L`, `V²_L`, `U_L`, plus
//! the bridge from `α_*` to signed Gauss phrases.

use std::collections::BTreeSet;

use crate::diagrams::gauss::{letter_name, GaussLetter, GaussPhrase};
use crate::error::{Error, Result};
use crate::nano::data::{alpha_star, HomotopyData};
use crate::nano::phrase::Nanophrase;

/// `α_*` symbol indices.
pub const A_PLUS: usize = 0;
pub const A_MINUS: usize = 1;
pub const B_PLUS: usize = 2;
pub const B_MINUS: usize = 3;

/// `sign_L(x)` with respect to the involution `f`: `1` on `L`, `−1` on `f(L)`,
/// `0` elsewhere.
pub fn sign_in(l: &BTreeSet<usize>, f: &[usize], x: usize) -> i8 {
    if l.contains(&x) {
        1
    } else if l.contains(&f[x]) {
        -1
    } else {
        0
    }
}

/// Checks `L ∩ f(L) = ∅` and that `L` is a nonempty subset of `α`.
pub fn check_representatives(l: &BTreeSet<usize>, f: &[usize], what: &str) -> Result<()> {
    if l.is_empty() {
        return Err(Error::HomotopyData(format!("{what} is empty")));
    }
    if l.iter().any(|&x| x >= f.len()) {
        return Err(Error::HomotopyData(format!(
            "{what} is not a subset of the alphabet"
        )));
    }
    if l.iter().any(|&x| l.contains(&f[x])) {
        return Err(Error::HomotopyData(format!(
            "{what} meets its image under the involution"
        )));
    }
    Ok(())
}

/// `L ⊂ α` with `L ∩ τ(L) = ∅` and `L₁ ⊂ L` with `L₁ ∩ ν(L₁) = ∅`,
/// `ν(L₁) ⊂ L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignProfile {
    l: BTreeSet<usize>,
    l1: BTreeSet<usize>,
}

impl SignProfile {
    pub fn new(data: &HomotopyData, l: BTreeSet<usize>, l1: BTreeSet<usize>) -> Result<Self> {
        check_representatives(&l, data.tau_map(), "L")?;
        check_representatives(&l1, data.nu_map(), "L1")?;
        if !l1.is_subset(&l) {
            return Err(Error::HomotopyData("L1 is not contained in L".into()));
        }
        if l1.iter().any(|&x| !l.contains(&data.nu(x))) {
            return Err(Error::HomotopyData("ν(L1) is not contained in L".into()));
        }
        Ok(Self { l, l1 })
    }

    pub fn from_names(data: &HomotopyData, l: &[&str], l1: &[&str]) -> Result<Self> {
        let set = |ns: &[&str]| {
            ns.iter()
                .map(|n| data.symbol(n))
                .collect::<Result<BTreeSet<_>>>()
        };
        Self::new(data, set(l)?, set(l1)?)
    }

    pub fn l(&self) -> &BTreeSet<usize> {
        &self.l
    }

    pub fn l1(&self) -> &BTreeSet<usize> {
        &self.l1
    }

    /// `(sign_L(x), sign(x; L₁ ⊂ L))`.
    pub fn couple(&self, data: &HomotopyData, x: usize) -> (i8, i8) {
        let first = sign_in(&self.l, data.tau_map(), x);
        let second = match first {
            1 => sign_in(&self.l1, data.nu_map(), x),
            // x ∈ τL: sign_{τL₁}(x) = sign_{L₁}(τx) because ντ = τν
            -1 => sign_in(&self.l1, data.nu_map(), data.tau(x)),
            _ => 0,
        };
        (first, second)
    }
}

/// The couple of letter `a` of `p`.
pub fn sign_couple(
    p: &Nanophrase,
    a: usize,
    data: &HomotopyData,
    profile: &SignProfile,
) -> (i8, i8) {
    profile.couple(data, p.proj(a))
}

/// `α_*` symbol of a couple with no zero entry.
pub fn star_symbol(couple: (i8, i8)) -> Option<usize> {
    match couple {
        (1, 1) => Some(A_PLUS),
        (1, -1) => Some(B_PLUS),
        (-1, 1) => Some(B_MINUS),
        (-1, -1) => Some(A_MINUS),
        _ => None,
    }
}

fn require_sharp(data: &HomotopyData) -> Result<()> {
    if !data.commutes() {
        return Err(Error::HomotopyData("ν and τ do not commute".into()));
    }
    Ok(())
}

/// `V_{L₁⊂L}`: deletes letters with a zero in their couple and relabels the
/// rest into `α_*`.
pub fn functor_v(p: &Nanophrase, data: &HomotopyData, profile: &SignProfile) -> Result<Nanophrase> {
    require_sharp(data)?;
    p.check_alphabet(data)?;
    let sym: Vec<Option<usize>> = (0..p.letter_count())
        .map(|a| star_symbol(sign_couple(p, a, data, profile)))
        .collect();
    let kept = p.delete_letters(|a| sym[a].is_some());
    let survivors: Vec<usize> = (0..p.letter_count())
        .filter(|&a| sym[a].is_some())
        .collect();
    // deletion keeps the relative order of first occurrences
    Ok(kept.relabel(|i| sym[survivors[i]].unwrap()))
}

fn sign_functor(
    p: &Nanophrase,
    l: &BTreeSet<usize>,
    f: &[usize],
    plus: usize,
    minus: usize,
) -> Nanophrase {
    let s: Vec<i8> = (0..p.letter_count())
        .map(|a| sign_in(l, f, p.proj(a)))
        .collect();
    let survivors: Vec<usize> = (0..p.letter_count()).filter(|&a| s[a] != 0).collect();
    p.delete_letters(|a| s[a] != 0)
        .relabel(|i| if s[survivors[i]] > 0 { plus } else { minus })
}

/// `V¹_L` into `α₁`; the source data must have `ν = id`.
pub fn functor_v1(p: &Nanophrase, data: &HomotopyData, l: &BTreeSet<usize>) -> Result<Nanophrase> {
    if !data.nu_is_identity() {
        return Err(Error::HomotopyData("V¹ needs ν = id".into()));
    }
    p.check_alphabet(data)?;
    check_representatives(l, data.tau_map(), "L")?;
    Ok(sign_functor(p, l, data.tau_map(), 0, 1))
}

/// `V²_L` into `α₂ = {c, d}`; the source data must have `τ = id`, and `L`
/// is taken with respect to `ν`.
pub fn functor_v2(p: &Nanophrase, data: &HomotopyData, l: &BTreeSet<usize>) -> Result<Nanophrase> {
    if !data.tau_is_identity() {
        return Err(Error::HomotopyData("V² needs τ = id".into()));
    }
    p.check_alphabet(data)?;
    check_representatives(l, data.nu_map(), "L")?;
    Ok(sign_functor(p, l, data.nu_map(), 0, 1))
}

/// `U_L` into `α₀ = {a, b}`.
pub fn functor_u(p: &Nanophrase, data: &HomotopyData, l: &BTreeSet<usize>) -> Result<Nanophrase> {
    p.check_alphabet(data)?;
    check_representatives(l, data.tau_map(), "L")?;
    Ok(sign_functor(p, l, data.tau_map(), 0, 1))
}

/// `p: α_* → α₁`, `a₊, b₊ ↦ 1` and `a₋, b₋ ↦ −1`.
pub fn project_p(p: &Nanophrase) -> Nanophrase {
    p.relabel(|a| {
        if matches!(p.proj(a), A_PLUS | B_PLUS) {
            0
        } else {
            1
        }
    })
}

fn check_star(p: &Nanophrase) -> Result<()> {
    p.check_alphabet(&alpha_star())
}

/// Letter family `a` has type `t = +1`, family `b` has `t = −1`; the
/// subscript is the crossing sign `ε`; the first occurrence is the over-pass
/// exactly when `ε = t`.
pub fn to_gauss(p: &Nanophrase) -> Result<GaussPhrase> {
    check_star(p)?;
    let letters = (0..p.letter_count())
        .map(|a| {
            let (t, sign) = match p.proj(a) {
                A_PLUS => (1, 1),
                A_MINUS => (1, -1),
                B_PLUS => (-1, 1),
                _ => (-1, -1),
            };
            GaussLetter {
                name: letter_name(a),
                sign,
                first_over: sign == t,
            }
        })
        .collect();
    GaussPhrase::new(letters, p.words().to_vec())
}

/// Inverse of [`to_gauss`].
pub fn from_gauss(g: &GaussPhrase) -> Nanophrase {
    let proj: Vec<usize> = g
        .letters()
        .iter()
        .map(|l| {
            let t = if l.first_over { l.sign } else { -l.sign };
            match (t, l.sign) {
                (1, 1) => A_PLUS,
                (1, _) => A_MINUS,
                (_, 1) => B_PLUS,
                _ => B_MINUS,
            }
        })
        .collect();
    Nanophrase::from_dense(g.words().to_vec(), &proj).expect("Gauss phrases are valid nanophrases")
}
