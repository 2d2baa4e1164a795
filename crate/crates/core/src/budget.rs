//! Crossing budgets guarding the exponential state spaces.

use crate::error::{Error, Result};

pub const DEFAULT_HOMOLOGY_CROSSINGS: usize = 14;
pub const DEFAULT_BRACKET_CROSSINGS: usize = 22;

/// Environment variable overriding the default budgets, as `H` or `H,B`.
pub const BUDGET_ENV: &str = "CKH_BUDGET";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Largest crossing count for chain-level computations.
    pub homology: usize,
    /// Largest crossing count for state sums.
    pub bracket: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            homology: DEFAULT_HOMOLOGY_CROSSINGS,
            bracket: DEFAULT_BRACKET_CROSSINGS,
        }
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Self {
            homology: usize::MAX,
            bracket: usize::MAX,
        }
    }

    /// Parses `H` or `H,B`; a single value sets only the homology budget.
    pub fn parse(text: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("budget must be `H` or `H,B`, got {text:?}"));
        let parts: Vec<&str> = text.split(',').map(str::trim).collect();
        let num = |s: &str| s.parse::<usize>().map_err(|_| bad());
        match parts.as_slice() {
            [h] => Ok(Self {
                homology: num(h)?,
                ..Self::default()
            }),
            [h, b] => Ok(Self {
                homology: num(h)?,
                bracket: num(b)?,
            }),
            _ => Err(bad()),
        }
    }

    /// Defaults, overridden by the environment variable when set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(BUDGET_ENV) {
            Ok(v) if !v.trim().is_empty() => Self::parse(&v),
            _ => Ok(Self::default()),
        }
    }

    pub fn check_homology(&self, what: &str, crossings: usize) -> Result<()> {
        check(what, crossings, self.homology)
    }

    pub fn check_bracket(&self, what: &str, crossings: usize) -> Result<()> {
        check(what, crossings, self.bracket)
    }
}

fn check(what: &str, size: usize, limit: usize) -> Result<()> {
    if size > limit {
        Err(Error::BudgetExceeded {
            what: what.to_string(),
            size,
            limit,
        })
    } else {
        Ok(())
    }
}
