//! Graded chain complexes with matrix blocks, and homology tables.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::algebra::matrix::{smith_normal_form, IntegerMatrix};
use crate::error::{Error, Result};

/// One homology group: `ℤ^rank ⊕ ⨁ ℤ/t`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct HomologyGroup {
    pub rank: usize,
    /// Torsion orders, each ≥ 2 and dividing the next.
    pub torsion: Vec<u64>,
}

impl HomologyGroup {
    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

/// Homology groups keyed by grading tuples; zero groups are not stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HomologyTable {
    groups: BTreeMap<Vec<i64>, HomologyGroup>,
}

pub fn format_key(k: &[i64]) -> String {
    let parts: Vec<String> = k.iter().map(|v| v.to_string()).collect();
    format!("({})", parts.join(","))
}

impl HomologyTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, key: Vec<i64>, g: HomologyGroup) {
        if g.is_zero() {
            self.groups.remove(&key);
        } else {
            self.groups.insert(key, g);
        }
    }

    pub fn get(&self, key: &[i64]) -> Option<&HomologyGroup> {
        self.groups.get(key)
    }

    pub fn rank(&self, key: &[i64]) -> usize {
        self.get(key).map_or(0, |g| g.rank)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<i64>, &HomologyGroup)> {
        self.groups.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn total_rank(&self) -> usize {
        self.groups.values().map(|g| g.rank).sum()
    }

    /// Free ranks only.
    pub fn ranks(&self) -> BTreeMap<Vec<i64>, usize> {
        self.groups
            .iter()
            .filter(|(_, g)| g.rank > 0)
            .map(|(k, g)| (k.clone(), g.rank))
            .collect()
    }

    /// `{"(i,j)": {"rank": r, "torsion": […]}, …}`
    pub fn to_json_value(&self) -> Value {
        let mut m = Map::new();
        for (k, g) in &self.groups {
            m.insert(format_key(k), json!({"rank": g.rank, "torsion": g.torsion}));
        }
        Value::Object(m)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (k, g) in &self.groups {
            let mut parts = Vec::new();
            if g.rank > 0 {
                parts.push(if g.rank == 1 {
                    "Z".to_string()
                } else {
                    format!("Z^{}", g.rank)
                });
            }
            for t in &g.torsion {
                parts.push(format!("Z/{t}"));
            }
            s.push_str(&format!("{} {}\n", format_key(k), parts.join(" + ")));
        }
        s
    }
}

/// A chain complex of free modules indexed by grading tuples, with one
/// matrix per key mapping into `key + step`.
#[derive(Clone, Debug, Default)]
pub struct GradedChainComplex {
    step: Vec<i64>,
    ranks: BTreeMap<Vec<i64>, usize>,
    diffs: BTreeMap<Vec<i64>, IntegerMatrix>,
}

fn add_keys(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

impl GradedChainComplex {
    pub fn new(step: Vec<i64>) -> Self {
        Self {
            step,
            ranks: BTreeMap::new(),
            diffs: BTreeMap::new(),
        }
    }

    pub fn step(&self) -> &[i64] {
        &self.step
    }

    pub fn set_rank(&mut self, key: Vec<i64>, rank: usize) {
        assert_eq!(key.len(), self.step.len(), "key arity");
        if rank == 0 {
            self.ranks.remove(&key);
        } else {
            self.ranks.insert(key, rank);
        }
    }

    pub fn rank(&self, key: &[i64]) -> usize {
        self.ranks.get(key).copied().unwrap_or(0)
    }

    pub fn ranks(&self) -> &BTreeMap<Vec<i64>, usize> {
        &self.ranks
    }

    pub fn set_differential(&mut self, key: Vec<i64>, m: IntegerMatrix) {
        self.diffs.insert(key, m);
    }

    pub fn differential(&self, key: &[i64]) -> IntegerMatrix {
        let target = add_keys(key, &self.step);
        self.diffs
            .get(key)
            .cloned()
            .unwrap_or_else(|| IntegerMatrix::zero(self.rank(&target), self.rank(key)))
    }

    /// Checks matrix shapes and `d² = 0`.
    pub fn validate(&self) -> Result<()> {
        for (k, m) in &self.diffs {
            let target = add_keys(k, &self.step);
            if m.cols() != self.rank(k) || m.rows() != self.rank(&target) {
                return Err(Error::NotAComplex(format!(
                    "differential at {} is {}x{}, expected {}x{}",
                    format_key(k),
                    m.rows(),
                    m.cols(),
                    self.rank(&target),
                    self.rank(k)
                )));
            }
        }
        for (k, m) in &self.diffs {
            let next = add_keys(k, &self.step);
            if let Some(m2) = self.diffs.get(&next) {
                if !m2.mul(m).is_zero() {
                    return Err(Error::NotAComplex(format!("d∘d ≠ 0 at {}", format_key(k))));
                }
            }
        }
        Ok(())
    }

    /// Homology at every key: free rank `dim ker − rank im`, torsion from the
    /// Smith form of the incoming differential.
    pub fn homology(&self) -> Result<HomologyTable> {
        self.validate()?;
        let mut factors: BTreeMap<Vec<i64>, Vec<BigInt>> = BTreeMap::new();
        for (k, m) in &self.diffs {
            factors.insert(k.clone(), smith_normal_form(m).invariant_factors());
        }
        let mut table = HomologyTable::new();
        for (k, &r) in &self.ranks {
            let prev: Vec<i64> = k.iter().zip(&self.step).map(|(x, y)| x - y).collect();
            let out = factors.get(k).map_or(0, |f| f.len());
            let inc = factors.get(&prev);
            let torsion = inc
                .map(|f| {
                    f.iter()
                        .filter(|v| **v > BigInt::from(1))
                        .map(|v| u64::try_from(v).expect("torsion order fits in u64"))
                        .collect()
                })
                .unwrap_or_default();
            let rank = r - out - inc.map_or(0, |f| f.len());
            table.insert(k.clone(), HomologyGroup { rank, torsion });
        }
        Ok(table)
    }

    /// Debug JSON: ranks and triplet lists.
    pub fn to_json_value(&self) -> Value {
        let ranks: Map<String, Value> = self
            .ranks
            .iter()
            .map(|(k, r)| (format_key(k), json!(r)))
            .collect();
        let diffs: Map<String, Value> = self
            .diffs
            .iter()
            .map(|(k, m)| {
                let t: Vec<Value> = m
                    .entries()
                    .map(|(i, j, v)| json!([i, j, v.to_string()]))
                    .collect();
                (
                    format_key(k),
                    json!({"rows": m.rows(), "cols": m.cols(), "triplets": t}),
                )
            })
            .collect();
        json!({"step": self.step, "ranks": ranks, "differentials": diffs})
    }
}
