//! Homotopy moves on nanophrases.
//!
//! Sites are `(word, position)` pairs. For deletions and the third move a
//! site names the first letter of an adjacent pair; for insertions it is the
//! gap before `position`.

use crate::error::{Error, Result};
use crate::nano::data::HomotopyData;
use crate::nano::phrase::Nanophrase;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Site {
    pub word: usize,
    pub pos: usize,
}

impl Site {
    pub fn new(word: usize, pos: usize) -> Self {
        Self { word, pos }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Move {
    /// `xAAy → xy`.
    H1 { at: Site },
    /// `xy → xAAy` with `|A| = proj`.
    H1Inverse { at: Site, proj: usize },
    /// `xAByBAz → xyz` when `|A| = τ(|B|)`.
    H2 { first: Site, second: Site },
    /// `xyz → xAByBAz` with `|A| = proj`, `|B| = τ(proj)`; `first ≤ second`.
    H2Inverse {
        first: Site,
        second: Site,
        proj: usize,
    },
    /// `xAByACzBCt → xBAyCAzCBt` when `(|A|, |B|, |C|) ∈ S`.
    H3 { sites: [Site; 3] },
    /// `xBAyCAzCBt → xAByACzBCt` when `(|A|, |B|, |C|) ∈ S`.
    H3Inverse { sites: [Site; 3] },
    /// `Au → uA`; a letter with both occurrences in the word gets `ν(|A|)`.
    Shift { word: usize },
    /// `uA → Au`, undoing [`Move::Shift`].
    ShiftInverse { word: usize },
    /// Renames letter `l` to `perm[l]`.
    Isomorphism { perm: Vec<usize> },
}

fn mismatch(msg: impl Into<String>) -> Error {
    Error::MoveMismatch(msg.into())
}

fn pair(p: &Nanophrase, s: Site) -> Result<(usize, usize)> {
    let w = p
        .words()
        .get(s.word)
        .ok_or_else(|| mismatch(format!("no word {}", s.word)))?;
    if s.pos + 1 >= w.len() {
        return Err(mismatch(format!("no adjacent pair at {s:?}")));
    }
    Ok((w[s.pos], w[s.pos + 1]))
}

fn disjoint_increasing(sites: &[Site]) -> bool {
    sites
        .windows(2)
        .all(|w| w[0].word < w[1].word || (w[0].word == w[1].word && w[0].pos + 2 <= w[1].pos))
}

/// Swaps the letters of each adjacent pair.
fn swap_pairs(p: &Nanophrase, sites: &[Site]) -> Nanophrase {
    let mut words = p.words().to_vec();
    for s in sites {
        words[s.word].swap(s.pos, s.pos + 1);
    }
    Nanophrase::canonical(words, p.projections())
}

fn remove_pairs(p: &Nanophrase, sites: &[Site]) -> Nanophrase {
    let mut words = p.words().to_vec();
    // later sites first so earlier positions stay valid
    for s in sites.iter().rev() {
        words[s.word].drain(s.pos..s.pos + 2);
    }
    Nanophrase::canonical(words, p.projections())
}

fn check_gap(p: &Nanophrase, s: Site) -> Result<()> {
    match p.words().get(s.word) {
        Some(w) if s.pos <= w.len() => Ok(()),
        _ => Err(mismatch(format!("no gap at {s:?}"))),
    }
}

pub fn apply_move(p: &Nanophrase, data: &HomotopyData, mv: &Move) -> Result<Nanophrase> {
    match mv {
        Move::H1 { at } => {
            let (a, b) = pair(p, *at)?;
            if a != b {
                return Err(mismatch("H1 needs a repeated letter"));
            }
            Ok(remove_pairs(p, &[*at]))
        }
        Move::H1Inverse { at, proj } => {
            check_gap(p, *at)?;
            if *proj >= data.len() {
                return Err(mismatch("projection outside the alphabet"));
            }
            let new = p.letter_count();
            let mut words = p.words().to_vec();
            words[at.word].splice(at.pos..at.pos, [new, new]);
            let mut proj_v = p.projections().to_vec();
            proj_v.push(*proj);
            Ok(Nanophrase::canonical(words, &proj_v))
        }
        Move::H2 { first, second } => {
            let (a, b) = pair(p, *first)?;
            let (c, d) = pair(p, *second)?;
            if !disjoint_increasing(&[*first, *second]) || a == b || (c, d) != (b, a) {
                return Err(mismatch("H2 needs the pattern xAByBAz"));
            }
            if p.proj(a) != data.tau(p.proj(b)) {
                return Err(mismatch("H2 needs |A| = τ(|B|)"));
            }
            Ok(remove_pairs(p, &[*first, *second]))
        }
        Move::H2Inverse {
            first,
            second,
            proj,
        } => {
            check_gap(p, *first)?;
            check_gap(p, *second)?;
            if first > second {
                return Err(mismatch("H2 insertion sites out of order"));
            }
            if *proj >= data.len() {
                return Err(mismatch("projection outside the alphabet"));
            }
            let (a, b) = (p.letter_count(), p.letter_count() + 1);
            let mut words = p.words().to_vec();
            if first == second {
                words[first.word].splice(first.pos..first.pos, [a, b, b, a]);
            } else {
                words[second.word].splice(second.pos..second.pos, [b, a]);
                words[first.word].splice(first.pos..first.pos, [a, b]);
            }
            let mut proj_v = p.projections().to_vec();
            proj_v.push(*proj);
            proj_v.push(data.tau(*proj));
            Ok(Nanophrase::canonical(words, &proj_v))
        }
        Move::H3 { sites } | Move::H3Inverse { sites } => {
            if !disjoint_increasing(sites) {
                return Err(mismatch("H3 sites overlap or are out of order"));
            }
            let [p1, p2, p3] = [pair(p, sites[0])?, pair(p, sites[1])?, pair(p, sites[2])?];
            let (a, b, c) = if matches!(mv, Move::H3 { .. }) {
                // AB, AC, BC
                if p1.0 != p2.0 || p1.1 != p3.0 || p2.1 != p3.1 {
                    return Err(mismatch("H3 needs the pattern xAByACzBCt"));
                }
                (p1.0, p1.1, p2.1)
            } else {
                // BA, CA, CB
                if p1.1 != p2.1 || p2.0 != p3.0 || p1.0 != p3.1 {
                    return Err(mismatch("inverse H3 needs the pattern xBAyCAzCBt"));
                }
                (p1.1, p1.0, p2.0)
            };
            if a == b || b == c || a == c {
                return Err(mismatch("H3 needs three distinct letters"));
            }
            if !data.contains_triple((p.proj(a), p.proj(b), p.proj(c))) {
                return Err(mismatch("H3 needs (|A|, |B|, |C|) ∈ S"));
            }
            Ok(swap_pairs(p, sites))
        }
        Move::Shift { word } | Move::ShiftInverse { word } => {
            if !data.has_shift() {
                return Err(mismatch("the data has no shift move"));
            }
            let w = p
                .words()
                .get(*word)
                .ok_or_else(|| mismatch(format!("no word {word}")))?;
            if w.is_empty() {
                return Err(mismatch("cannot shift an empty word"));
            }
            let mut words = p.words().to_vec();
            let moved = if matches!(mv, Move::Shift { .. }) {
                words[*word].rotate_left(1);
                *words[*word].last().unwrap()
            } else {
                words[*word].rotate_right(1);
                words[*word][0]
            };
            let mut proj_v = p.projections().to_vec();
            if words[*word].iter().filter(|&&l| l == moved).count() == 2 {
                proj_v[moved] = data.nu(proj_v[moved]);
            }
            Ok(Nanophrase::canonical(words, &proj_v))
        }
        Move::Isomorphism { perm } => {
            let n = p.letter_count();
            let mut seen = vec![false; n];
            for &t in perm {
                if t >= n || std::mem::replace(&mut seen[t], true) {
                    return Err(mismatch("isomorphism is not a permutation of the letters"));
                }
            }
            if perm.len() != n {
                return Err(mismatch("isomorphism is not a permutation of the letters"));
            }
            let words = p
                .words()
                .iter()
                .map(|w| w.iter().map(|&l| perm[l]).collect())
                .collect();
            let mut proj_v = vec![0; n];
            for l in 0..n {
                proj_v[perm[l]] = p.proj(l);
            }
            Ok(Nanophrase::canonical(words, &proj_v))
        }
    }
}

/// The move undoing `mv` on `p`, so that
/// `apply_move(apply_move(p, mv), inverse_move(p, mv)) == p`.
pub fn inverse_move(p: &Nanophrase, data: &HomotopyData, mv: &Move) -> Result<Move> {
    Ok(match mv {
        Move::H1 { at } => {
            let (a, _) = pair(p, *at)?;
            Move::H1Inverse {
                at: *at,
                proj: p.proj(a),
            }
        }
        Move::H1Inverse { at, .. } => Move::H1 { at: *at },
        Move::H2 { first, second } => {
            let (a, _) = pair(p, *first)?;
            let second_gap = if first.word == second.word {
                Site::new(second.word, second.pos - 2)
            } else {
                *second
            };
            Move::H2Inverse {
                first: *first,
                second: second_gap,
                proj: p.proj(a),
            }
        }
        Move::H2Inverse { first, second, .. } => {
            let second_site = if first.word == second.word {
                Site::new(second.word, second.pos + 2)
            } else {
                *second
            };
            Move::H2 {
                first: *first,
                second: second_site,
            }
        }
        Move::H3 { sites } => Move::H3Inverse { sites: *sites },
        Move::H3Inverse { sites } => Move::H3 { sites: *sites },
        Move::Shift { word } => Move::ShiftInverse { word: *word },
        Move::ShiftInverse { word } => Move::Shift { word: *word },
        Move::Isomorphism { .. } => {
            // the result is canonically numbered, so the identity undoes it
            let _ = data;
            Move::Isomorphism {
                perm: (0..p.letter_count()).collect(),
            }
        }
    })
}

fn pair_sites(p: &Nanophrase) -> Vec<Site> {
    let mut out = Vec::new();
    for (w, word) in p.words().iter().enumerate() {
        for pos in 0..word.len().saturating_sub(1) {
            out.push(Site::new(w, pos));
        }
    }
    out
}

fn gap_sites(p: &Nanophrase) -> Vec<Site> {
    let mut out = Vec::new();
    for (w, word) in p.words().iter().enumerate() {
        for pos in 0..=word.len() {
            out.push(Site::new(w, pos));
        }
    }
    out
}

/// Every move that applies to `p`; insertions only while the result has at
/// most `length_cap` letter occurrences.
pub fn applicable_moves(p: &Nanophrase, data: &HomotopyData, length_cap: usize) -> Vec<Move> {
    let mut out = Vec::new();
    let pairs = pair_sites(p);
    let letter_at = |s: Site| (p.words()[s.word][s.pos], p.words()[s.word][s.pos + 1]);
    for &s in &pairs {
        let (a, b) = letter_at(s);
        if a == b {
            out.push(Move::H1 { at: s });
        }
    }
    for (i, &s1) in pairs.iter().enumerate() {
        let (a, b) = letter_at(s1);
        if a == b {
            continue;
        }
        for &s2 in &pairs[i + 1..] {
            if !disjoint_increasing(&[s1, s2]) {
                continue;
            }
            if letter_at(s2) == (b, a) && p.proj(a) == data.tau(p.proj(b)) {
                out.push(Move::H2 {
                    first: s1,
                    second: s2,
                });
            }
        }
    }
    for (i, &s1) in pairs.iter().enumerate() {
        let (x, y) = letter_at(s1);
        if x == y {
            continue;
        }
        for (j, &s2) in pairs.iter().enumerate().skip(i + 1) {
            if !disjoint_increasing(&[s1, s2]) {
                continue;
            }
            let (u, v) = letter_at(s2);
            let forward = u == x && v != y && v != x;
            let backward = v == y && u != x && u != y;
            if !forward && !backward {
                continue;
            }
            for &s3 in &pairs[j + 1..] {
                if !disjoint_increasing(&[s2, s3]) {
                    continue;
                }
                let sites = [s1, s2, s3];
                if forward
                    && letter_at(s3) == (y, v)
                    && data.contains_triple((p.proj(x), p.proj(y), p.proj(v)))
                {
                    out.push(Move::H3 { sites });
                }
                if backward
                    && letter_at(s3) == (u, x)
                    && data.contains_triple((p.proj(y), p.proj(x), p.proj(u)))
                {
                    out.push(Move::H3Inverse { sites });
                }
            }
        }
    }
    if data.has_shift() {
        for (w, word) in p.words().iter().enumerate() {
            if !word.is_empty() {
                out.push(Move::Shift { word: w });
                out.push(Move::ShiftInverse { word: w });
            }
        }
    }
    let len = p.length();
    if len + 2 <= length_cap {
        for s in gap_sites(p) {
            for proj in 0..data.len() {
                out.push(Move::H1Inverse { at: s, proj });
            }
        }
    }
    if len + 4 <= length_cap {
        let gaps = gap_sites(p);
        for (i, &g1) in gaps.iter().enumerate() {
            for &g2 in &gaps[i..] {
                for proj in 0..data.len() {
                    out.push(Move::H2Inverse {
                        first: g1,
                        second: g2,
                        proj,
                    });
                }
            }
        }
    }
    out
}

/// Distinct results of all applicable moves.
pub fn neighbors(p: &Nanophrase, data: &HomotopyData, length_cap: usize) -> Vec<Nanophrase> {
    let mut out: Vec<Nanophrase> = applicable_moves(p, data, length_cap)
        .iter()
        .map(|m| apply_move(p, data, m).expect("enumerated moves apply"))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}
