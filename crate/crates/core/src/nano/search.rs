//! Bounded homotopy search.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::nano::data::HomotopyData;
use crate::nano::moves::neighbors;
use crate::nano::phrase::Nanophrase;

/// Default limit on the number of phrases visited by one search.
pub const DEFAULT_MAX_STATES: usize = 2_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Connected by a sequence of `depth` moves.
    Yes { depth: usize },
    /// No connection within the bounds. Not a proof of inequivalence.
    NoWithinBound,
}

impl Verdict {
    pub fn is_yes(self) -> bool {
        matches!(self, Verdict::Yes { .. })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBounds {
    /// Largest number of moves in a connecting sequence.
    pub depth: usize,
    /// Extra letter occurrences allowed above the longer input.
    pub extra_length: usize,
    pub max_states: usize,
}

impl SearchBounds {
    pub fn new(depth: usize, extra_length: usize) -> Self {
        Self {
            depth,
            extra_length,
            max_states: DEFAULT_MAX_STATES,
        }
    }
}

struct Side {
    seen: HashMap<Nanophrase, usize>,
    frontier: Vec<Nanophrase>,
    depth: usize,
}

impl Side {
    fn new(p: &Nanophrase) -> Self {
        Self {
            seen: HashMap::from([(p.clone(), 0)]),
            frontier: vec![p.clone()],
            depth: 0,
        }
    }
}

/// Bidirectional breadth-first search over all moves and their inverses.
pub fn homotopic(
    p1: &Nanophrase,
    p2: &Nanophrase,
    data: &HomotopyData,
    depth: usize,
    extra_length: usize,
) -> Result<Verdict> {
    homotopic_within(p1, p2, data, SearchBounds::new(depth, extra_length))
}

pub fn homotopic_within(
    p1: &Nanophrase,
    p2: &Nanophrase,
    data: &HomotopyData,
    bounds: SearchBounds,
) -> Result<Verdict> {
    p1.check_alphabet(data)?;
    p2.check_alphabet(data)?;
    if p1 == p2 {
        return Ok(Verdict::Yes { depth: 0 });
    }
    if p1.word_count() != p2.word_count() {
        // no move changes the number of words
        return Ok(Verdict::NoWithinBound);
    }
    let cap = p1.length().max(p2.length()) + bounds.extra_length;
    let mut a = Side::new(p1);
    let mut b = Side::new(p2);
    while a.depth + b.depth < bounds.depth {
        let (grow, other) = if a.frontier.len() <= b.frontier.len() {
            (&mut a, &b)
        } else {
            (&mut b, &a)
        };
        if grow.frontier.is_empty() {
            return Ok(Verdict::NoWithinBound);
        }
        let expanded: Vec<Vec<Nanophrase>> = grow
            .frontier
            .par_iter()
            .map(|p| neighbors(p, data, cap))
            .collect();
        grow.depth += 1;
        let mut next = Vec::new();
        let mut best: Option<usize> = None;
        for q in expanded.into_iter().flatten() {
            if grow.seen.contains_key(&q) {
                continue;
            }
            if let Some(&d) = other.seen.get(&q) {
                let total = grow.depth + d;
                best = Some(best.map_or(total, |b| b.min(total)));
            }
            grow.seen.insert(q.clone(), grow.depth);
            next.push(q);
        }
        if let Some(depth) = best {
            return Ok(Verdict::Yes { depth });
        }
        grow.frontier = next;
        let states = a.seen.len() + b.seen.len();
        if states > bounds.max_states {
            return Err(Error::SearchBudget(states));
        }
    }
    Ok(Verdict::NoWithinBound)
}
