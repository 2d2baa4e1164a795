//! Homotopy data `(α, S, τ, ν)` and the built-in target alphabets.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::error::{Error, Result};

pub type Triple = (usize, usize, usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomotopyData {
    names: Vec<String>,
    tau: Vec<usize>,
    nu: Vec<usize>,
    triples: BTreeSet<Triple>,
    /// Whether the shift move is part of the homotopy.
    shift: bool,
}

fn is_involution(f: &[usize]) -> bool {
    f.iter().enumerate().all(|(i, &j)| j < f.len() && f[j] == i)
}

/// Characters that cannot occur in alphabet symbols.
const RESERVED: &[char] = &[':', '=', '|', ',', '(', ')', '<', '>', '↔', '#'];

fn check_symbol(s: &str) -> Result<()> {
    if s.is_empty()
        || s.chars()
            .any(|c| c.is_whitespace() || RESERVED.contains(&c))
    {
        return Err(Error::Parse(format!("bad alphabet symbol {s:?}")));
    }
    Ok(())
}

impl HomotopyData {
    /// Data with an explicit triple set.
    pub fn new(
        names: Vec<String>,
        tau: Vec<usize>,
        nu: Vec<usize>,
        triples: BTreeSet<Triple>,
    ) -> Result<Self> {
        let n = names.len();
        for s in &names {
            check_symbol(s)?;
        }
        if names.iter().collect::<BTreeSet<_>>().len() != n {
            return Err(Error::HomotopyData("repeated alphabet symbol".into()));
        }
        if tau.len() != n || !is_involution(&tau) {
            return Err(Error::HomotopyData("τ is not an involution of α".into()));
        }
        if nu.len() != n || !is_involution(&nu) {
            return Err(Error::HomotopyData("ν is not an involution of α".into()));
        }
        if triples.iter().any(|&(a, b, c)| a >= n || b >= n || c >= n) {
            return Err(Error::HomotopyData("triple outside α".into()));
        }
        Ok(Self {
            names,
            tau,
            nu,
            triples,
            shift: true,
        })
    }

    /// `S♯ = {(a,a,a), (a,a,b), (b,a,a), (b,b,a), (a,b,b), (b,b,b) | ντ(b) = a}`.
    pub fn s_sharp(names: Vec<String>, tau: Vec<usize>, nu: Vec<usize>) -> Result<Self> {
        let mut d = Self::new(names, tau, nu, BTreeSet::new())?;
        if !d.commutes() {
            return Err(Error::HomotopyData("ν and τ do not commute".into()));
        }
        d.triples = sharp_triples(&d.tau, &d.nu);
        debug_assert!((0..d.len()).all(|a| d.triples.contains(&(a, a, a))));
        Ok(d)
    }

    /// Data whose triple set is the diagonal of `α³`.
    pub fn diagonal(names: Vec<String>, tau: Vec<usize>, nu: Vec<usize>) -> Result<Self> {
        let n = names.len();
        Self::new(names, tau, nu, (0..n).map(|a| (a, a, a)).collect())
    }

    pub fn without_shift(mut self) -> Self {
        self.shift = false;
        self
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn symbol(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::Parse(format!("{name:?} is not in the alphabet")))
    }

    pub fn tau(&self, a: usize) -> usize {
        self.tau[a]
    }

    pub fn nu(&self, a: usize) -> usize {
        self.nu[a]
    }

    pub fn tau_map(&self) -> &[usize] {
        &self.tau
    }

    pub fn nu_map(&self) -> &[usize] {
        &self.nu
    }

    pub fn triples(&self) -> &BTreeSet<Triple> {
        &self.triples
    }

    pub fn contains_triple(&self, t: Triple) -> bool {
        self.triples.contains(&t)
    }

    pub fn has_shift(&self) -> bool {
        self.shift
    }

    pub fn commutes(&self) -> bool {
        (0..self.len()).all(|a| self.nu[self.tau[a]] == self.tau[self.nu[a]])
    }

    pub fn tau_is_identity(&self) -> bool {
        self.tau.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn nu_is_identity(&self) -> bool {
        self.nu.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Header lines of the text format.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "alphabet: {}", self.names.join(" ")).unwrap();
        for (key, f) in [("tau", &self.tau), ("nu", &self.nu)] {
            let pairs: Vec<String> = (0..self.len())
                .filter(|&a| f[a] > a)
                .map(|a| format!("{}↔{}", self.names[a], self.names[f[a]]))
                .collect();
            writeln!(s, "{key}: {}", pairs.join(" ")).unwrap();
        }
        let sharp = self.commutes() && self.triples == sharp_triples(&self.tau, &self.nu);
        let diag = self.triples.len() == self.len()
            && self.triples.iter().all(|&(a, b, c)| a == b && b == c);
        if sharp {
            writeln!(s, "triples: sharp").unwrap();
        } else if diag {
            writeln!(s, "triples: diagonal").unwrap();
        } else {
            let ts: Vec<String> = self
                .triples
                .iter()
                .map(|&(a, b, c)| {
                    format!("({},{},{})", self.names[a], self.names[b], self.names[c])
                })
                .collect();
            writeln!(s, "triples: {}", ts.join(" ")).unwrap();
        }
        writeln!(s, "shift: {}", if self.shift { "on" } else { "off" }).unwrap();
        s
    }

    /// Reads the data keys of a nanophrase document.
    pub fn from_fields(fields: &BTreeMap<String, String>) -> Result<Self> {
        let alphabet = fields
            .get("alphabet")
            .ok_or_else(|| Error::Parse("missing `alphabet:` line".into()))?;
        let names: Vec<String> = alphabet.split_whitespace().map(String::from).collect();
        let index = |s: &str| {
            names
                .iter()
                .position(|n| n == s)
                .ok_or_else(|| Error::Parse(format!("{s:?} is not in the alphabet")))
        };
        let involution = |key: &str| -> Result<Vec<usize>> {
            let mut f: Vec<usize> = (0..names.len()).collect();
            let mut seen = BTreeSet::new();
            for tok in fields
                .get(key)
                .map(String::as_str)
                .unwrap_or("")
                .split_whitespace()
            {
                let (a, b) = tok
                    .split_once("<->")
                    .or_else(|| tok.split_once('↔'))
                    .ok_or_else(|| Error::Parse(format!("{key}: expected x<->y, got {tok:?}")))?;
                let (a, b) = (index(a)?, index(b)?);
                if !seen.insert(a) || (a != b && !seen.insert(b)) {
                    return Err(Error::HomotopyData(format!("{key}: symbol listed twice")));
                }
                f[a] = b;
                f[b] = a;
            }
            Ok(f)
        };
        let tau = involution("tau")?;
        let nu = involution("nu")?;
        let mut data = match fields.get("triples").map(|s| s.trim()) {
            None | Some("sharp") => Self::s_sharp(names.clone(), tau, nu)?,
            Some("diagonal") => Self::diagonal(names.clone(), tau, nu)?,
            Some(list) => {
                let mut set = BTreeSet::new();
                let cleaned: String = list.chars().filter(|c| !c.is_whitespace()).collect();
                for group in cleaned.split(')').filter(|g| !g.is_empty()) {
                    let inner = group
                        .strip_prefix('(')
                        .ok_or_else(|| Error::Parse(format!("triples: bad group {group:?}")))?;
                    let parts: Vec<&str> = inner.split(',').collect();
                    if parts.len() != 3 {
                        return Err(Error::Parse(format!("triples: ({inner}) is not a triple")));
                    }
                    set.insert((index(parts[0])?, index(parts[1])?, index(parts[2])?));
                }
                Self::new(names.clone(), tau, nu, set)?
            }
        };
        match fields.get("shift").map(|s| s.trim()) {
            None | Some("on") => {}
            Some("off") => data.shift = false,
            Some(other) => {
                return Err(Error::Parse(format!(
                    "shift: expected on/off, got {other:?}"
                )))
            }
        }
        Ok(data)
    }
}

fn sharp_triples(tau: &[usize], nu: &[usize]) -> BTreeSet<Triple> {
    let mut out = BTreeSet::new();
    for b in 0..tau.len() {
        let a = nu[tau[b]];
        for t in [
            (a, a, a),
            (a, a, b),
            (b, a, a),
            (b, b, a),
            (a, b, b),
            (b, b, b),
        ] {
            out.insert(t);
        }
    }
    out
}

/// `S♯` of `(α, τ, ν)` given by symbol names.
pub fn make_s_sharp(
    names: &[&str],
    tau: &[(&str, &str)],
    nu: &[(&str, &str)],
) -> Result<HomotopyData> {
    let mut fields = BTreeMap::new();
    fields.insert("alphabet".to_string(), names.join(" "));
    let pairs = |ps: &[(&str, &str)]| {
        ps.iter()
            .map(|(a, b)| format!("{a}<->{b}"))
            .collect::<Vec<_>>()
            .join(" ")
    };
    fields.insert("tau".to_string(), pairs(tau));
    fields.insert("nu".to_string(), pairs(nu));
    HomotopyData::from_fields(&fields)
}

fn names(ns: &[&str]) -> Vec<String> {
    ns.iter().map(|s| s.to_string()).collect()
}

/// `α_* = {a+, a-, b+, b-}` with `τ_*: a± ↔ b∓` and `ν_*: a± ↔ b±`.
pub fn alpha_star() -> HomotopyData {
    HomotopyData::s_sharp(
        names(&["a+", "a-", "b+", "b-"]),
        vec![3, 2, 1, 0],
        vec![2, 3, 0, 1],
    )
    .expect("built-in data is valid")
}

/// `α₁ = {1, -1}` with `τ₁: 1 ↔ -1`, `ν = id`.
pub fn alpha_one() -> HomotopyData {
    HomotopyData::s_sharp(names(&["1", "-1"]), vec![1, 0], vec![0, 1])
        .expect("built-in data is valid")
}

/// `α₂ = {c, d}` with `τ = id`, `ν₂: c ↔ d`.
pub fn alpha_two() -> HomotopyData {
    HomotopyData::s_sharp(names(&["c", "d"]), vec![0, 1], vec![1, 0])
        .expect("built-in data is valid")
}

/// `α₀ = {a, b}` with `τ₀ = ν₀: a ↔ b`; its `S♯` is the diagonal.
pub fn alpha_zero() -> HomotopyData {
    HomotopyData::s_sharp(names(&["a", "b"]), vec![1, 0], vec![1, 0])
        .expect("built-in data is valid")
}
