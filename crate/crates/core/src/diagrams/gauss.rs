//! Signed Gauss phrases.
//!
//! Text format:
//!
//! ```text
//! A:+O B:+U
//! ---
//! ABAB
//! ```
//!
//! The header (any whitespace-separated tokens before the `---` line) gives
//! each letter's crossing sign and whether its first occurrence is the
//! over-pass (`O`) or the under-pass (`U`). The body lists one word per
//! component separated by `|`; an empty word is a crossingless component and
//! an empty body is the empty phrase. Letters are an uppercase ASCII letter
//! followed by optional digits.

use std::collections::BTreeMap;
use std::fmt;

use crate::diagrams::pd::{Arc, Component, ComponentSeed, FreeLoop, PdCode};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussLetter {
    pub name: String,
    pub sign: i8,
    /// The first occurrence (in reading order across words) passes over.
    pub first_over: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussPhrase {
    letters: Vec<GaussLetter>,
    words: Vec<Vec<usize>>,
}

/// Splits a word into letter tokens.
pub fn tokenize_word(word: &str) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let mut chars = word.chars().filter(|c| !c.is_whitespace()).peekable();
    while let Some(c) = chars.next() {
        if !c.is_ascii_uppercase() {
            return Err(Error::Parse(format!(
                "unexpected character {c:?} in word {word:?}"
            )));
        }
        let mut tok = c.to_string();
        while let Some(&d) = chars.peek() {
            if d.is_ascii_digit() {
                tok.push(d);
                chars.next();
            } else {
                break;
            }
        }
        out.push(tok);
    }
    Ok(out)
}

/// Splits a body into words. An empty (all-whitespace) body has no words.
pub fn split_body(body: &str) -> Result<Vec<Vec<String>>> {
    let body: String = body.chars().filter(|c| !c.is_whitespace()).collect();
    if body.is_empty() {
        return Ok(vec![]);
    }
    body.split('|').map(tokenize_word).collect()
}

/// Letter name for index `i`: `A`..`Z`, then `A1`..`Z1`, and so on.
pub fn letter_name(i: usize) -> String {
    let base = (b'A' + (i % 26) as u8) as char;
    if i < 26 {
        base.to_string()
    } else {
        format!("{base}{}", i / 26)
    }
}

impl GaussPhrase {
    pub fn empty() -> Self {
        Self {
            letters: vec![],
            words: vec![],
        }
    }

    /// Builds a phrase from letter data and words of letter indices.
    pub fn new(letters: Vec<GaussLetter>, words: Vec<Vec<usize>>) -> Result<Self> {
        let mut count = vec![0usize; letters.len()];
        for w in &words {
            for &l in w {
                *count.get_mut(l).ok_or_else(|| {
                    Error::InvalidDiagram(format!("letter index {l} out of range"))
                })? += 1;
            }
        }
        if let Some(i) = count.iter().position(|&c| c != 2) {
            return Err(Error::InvalidDiagram(format!(
                "letter {} occurs {} times, expected 2",
                letters[i].name, count[i]
            )));
        }
        for l in &letters {
            if l.sign != 1 && l.sign != -1 {
                return Err(Error::InvalidDiagram(format!(
                    "letter {} has sign {}",
                    l.name, l.sign
                )));
            }
        }
        Ok(Self { letters, words })
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut header = String::new();
        let mut body = String::new();
        let mut in_body = false;
        for line in text.lines() {
            if line.trim() == "---" {
                if in_body {
                    return Err(Error::Parse("more than one `---` separator".into()));
                }
                in_body = true;
            } else if in_body {
                body.push_str(line);
            } else {
                header.push_str(line);
                header.push(' ');
            }
        }
        if !in_body {
            return Err(Error::Parse("missing `---` separator".into()));
        }
        let mut annot: BTreeMap<String, (i8, bool)> = BTreeMap::new();
        for tok in header.split_whitespace() {
            let (name, spec) = tok
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("annotation {tok:?} is not NAME:SIGNPASS")))?;
            if tokenize_word(name).map(|t| t.len() != 1).unwrap_or(true) {
                return Err(Error::Parse(format!("bad letter name {name:?}")));
            }
            let sign = match spec.chars().next() {
                Some('+') => 1,
                Some('-') => -1,
                _ => return Err(Error::Parse(format!("annotation {tok:?} lacks a sign"))),
            };
            let first_over = match &spec[1..] {
                "O" => true,
                "U" => false,
                _ => return Err(Error::Parse(format!("annotation {tok:?} lacks O/U"))),
            };
            if annot.insert(name.to_string(), (sign, first_over)).is_some() {
                return Err(Error::Parse(format!("letter {name} annotated twice")));
            }
        }
        let words = split_body(&body)?;
        let mut index: BTreeMap<String, usize> = BTreeMap::new();
        let mut letters = Vec::new();
        let mut out_words = Vec::new();
        for w in words {
            let mut ow = Vec::new();
            for tok in w {
                let i = match index.get(&tok) {
                    Some(&i) => i,
                    None => {
                        let &(sign, first_over) = annot.get(&tok).ok_or_else(|| {
                            Error::Parse(format!("letter {tok} has no annotation"))
                        })?;
                        letters.push(GaussLetter {
                            name: tok.clone(),
                            sign,
                            first_over,
                        });
                        index.insert(tok, letters.len() - 1);
                        letters.len() - 1
                    }
                };
                ow.push(i);
            }
            out_words.push(ow);
        }
        if let Some(extra) = annot.keys().find(|k| !index.contains_key(*k)) {
            return Err(Error::Parse(format!(
                "annotated letter {extra} does not occur"
            )));
        }
        Self::new(letters, out_words)
    }

    pub fn letters(&self) -> &[GaussLetter] {
        &self.letters
    }

    pub fn words(&self) -> &[Vec<usize>] {
        &self.words
    }

    pub fn crossing_count(&self) -> usize {
        self.letters.len()
    }

    /// For every occurrence, in reading order, whether it is the over-pass.
    pub fn passes(&self) -> Vec<Vec<bool>> {
        let mut seen = vec![false; self.letters.len()];
        self.words
            .iter()
            .map(|w| {
                w.iter()
                    .map(|&l| {
                        let first = !seen[l];
                        seen[l] = true;
                        first == self.letters[l].first_over
                    })
                    .collect()
            })
            .collect()
    }

    pub fn writhe(&self) -> i64 {
        self.letters.iter().map(|l| l.sign as i64).sum()
    }

    /// The crossing data as a PD code whose tuple order is the rotation
    /// system of the phrase. The result is planar exactly when the phrase is
    /// realizable.
    pub fn to_virtual_pd(&self) -> PdCode {
        let passes = self.passes();
        // arc after occurrence k of word w; arc before occurrence 0 is the
        // arc after the last one
        let mut next_label: Arc = 1;
        let mut after: Vec<Vec<Arc>> = Vec::new();
        for w in &self.words {
            let v: Vec<Arc> = (0..w.len()).map(|k| next_label + k as Arc).collect();
            next_label += w.len() as Arc;
            after.push(v);
        }
        let n = self.letters.len();
        let mut under: Vec<Option<(Arc, Arc)>> = vec![None; n];
        let mut over: Vec<Option<(Arc, Arc)>> = vec![None; n];
        for (wi, w) in self.words.iter().enumerate() {
            let len = w.len();
            for (k, &l) in w.iter().enumerate() {
                let inc = after[wi][(k + len - 1) % len];
                let out = after[wi][k];
                if passes[wi][k] {
                    over[l] = Some((inc, out));
                } else {
                    under[l] = Some((inc, out));
                }
            }
        }
        let mut crossings = Vec::with_capacity(n);
        let mut signs = Vec::with_capacity(n);
        for l in 0..n {
            let (ui, uo) = under[l].expect("every letter has an under-pass");
            let (oi, oo) = over[l].expect("every letter has an over-pass");
            let s = self.letters[l].sign;
            crossings.push(if s > 0 {
                [ui, oo, uo, oi]
            } else {
                [ui, oi, uo, oo]
            });
            signs.push(s);
        }
        let mut seeds = Vec::new();
        let mut nest = 0;
        for (wi, w) in self.words.iter().enumerate() {
            if w.is_empty() {
                seeds.push(ComponentSeed::Free(FreeLoop {
                    nest,
                    level: 0,
                    ccw: true,
                }));
                nest += 1;
            } else {
                // traversal starts with the arc entering the first occurrence
                seeds.push(ComponentSeed::Through(after[wi][w.len() - 1]));
            }
        }
        PdCode::from_parts(crossings, signs, seeds)
            .expect("Gauss phrase yields consistent crossing data")
    }

    pub fn realizable(&self) -> bool {
        self.to_virtual_pd().is_planar()
    }

    pub fn to_pd(&self) -> Result<PdCode> {
        let pd = self.to_virtual_pd();
        if pd.is_planar() {
            Ok(pd)
        } else {
            Err(Error::NotRealizable)
        }
    }

    /// Reads the Gauss phrase of a diagram: components in order, each
    /// starting at the head of its first arc; crossing `x` becomes letter
    /// [`letter_name`]`(x)`.
    pub fn from_pd(pd: &PdCode) -> Self {
        let n = pd.crossing_count();
        let mut words = Vec::new();
        let mut first_over: Vec<Option<bool>> = vec![None; n];
        for comp in pd.components() {
            let mut w = Vec::new();
            if let Component::Traced(arcs) = comp {
                for &a in arcs {
                    let (x, q) = pd.ends(a).head;
                    if first_over[x].is_none() {
                        first_over[x] = Some(q % 2 == 1);
                    }
                    w.push(x);
                }
            }
            words.push(w);
        }
        let letters = (0..n)
            .map(|x| GaussLetter {
                name: letter_name(x),
                sign: pd.sign(x),
                first_over: first_over[x].expect("every crossing is visited"),
            })
            .collect();
        Self::new(letters, words).expect("diagram yields a valid phrase")
    }

    /// Cyclically rotates word `w` left by `k` positions.
    pub fn rotate_word(&self, w: usize, k: usize) -> Self {
        let mut words = self.words.clone();
        if !words[w].is_empty() {
            let len = words[w].len();
            words[w].rotate_left(k % len);
        }
        self.with_words_keeping_passes(words)
    }

    /// Reorders the components by `perm` (new word `i` is old word `perm[i]`).
    pub fn permute_words(&self, perm: &[usize]) -> Self {
        let words = perm.iter().map(|&i| self.words[i].clone()).collect();
        self.with_words_keeping_passes(words)
    }

    /// Rearranges words while keeping each occurrence's over/under pass.
    fn with_words_keeping_passes(&self, words: Vec<Vec<usize>>) -> Self {
        let passes = self.passes();
        let new_ids = Self::track(&self.words, &words);
        let mut first_over = vec![None; self.letters.len()];
        for (wi, w) in words.iter().enumerate() {
            for (k, &l) in w.iter().enumerate() {
                if first_over[l].is_none() {
                    let (owi, ok) = new_ids[wi][k];
                    first_over[l] = Some(passes[owi][ok]);
                }
            }
        }
        let letters = self
            .letters
            .iter()
            .enumerate()
            .map(|(i, l)| GaussLetter {
                first_over: first_over[i].unwrap_or(l.first_over),
                ..l.clone()
            })
            .collect();
        Self { letters, words }
    }

    /// Matches occurrences of `new` to those of `old`, assuming each new word
    /// is a rotation of some old word.
    fn track(old: &[Vec<usize>], new: &[Vec<usize>]) -> Vec<Vec<(usize, usize)>> {
        let mut used = vec![false; old.len()];
        new.iter()
            .map(|nw| {
                for (oi, ow) in old.iter().enumerate() {
                    if used[oi] || ow.len() != nw.len() {
                        continue;
                    }
                    let len = ow.len();
                    let shift =
                        (0..len.max(1)).find(|&s| (0..len).all(|k| ow[(k + s) % len] == nw[k]));
                    if let Some(s) = shift {
                        used[oi] = true;
                        return (0..len).map(|k| (oi, (k + s) % len)).collect();
                    }
                }
                unreachable!("rearranged word is not a rotation of an original word")
            })
            .collect()
    }
}

impl fmt::Display for GaussPhrase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let header: Vec<String> = self
            .letters
            .iter()
            .map(|l| {
                format!(
                    "{}:{}{}",
                    l.name,
                    if l.sign > 0 { '+' } else { '-' },
                    if l.first_over { 'O' } else { 'U' }
                )
            })
            .collect();
        writeln!(f, "{}", header.join(" "))?;
        writeln!(f, "---")?;
        let body: Vec<String> = self
            .words
            .iter()
            .map(|w| {
                w.iter()
                    .map(|&l| self.letters[l].name.as_str())
                    .collect::<String>()
            })
            .collect();
        writeln!(f, "{}", body.join("|"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print_round_trip() {
        let g = GaussPhrase::parse("A:+O B:+U\n---\nABAB\n").unwrap();
        assert_eq!(g.crossing_count(), 2);
        assert_eq!(g.to_string(), "A:+O B:+U\n---\nABAB\n");
        assert_eq!(GaussPhrase::parse(&g.to_string()).unwrap(), g);
    }

    #[test]
    fn realizability_of_small_words() {
        let aabb = GaussPhrase::parse("A:+O B:+O\n---\nAABB").unwrap();
        assert!(aabb.realizable());
        let abab = GaussPhrase::parse("A:+O B:+U\n---\nABAB").unwrap();
        assert!(!abab.realizable());
        assert!(matches!(abab.to_pd(), Err(Error::NotRealizable)));
        let empty = GaussPhrase::parse("---\n").unwrap();
        assert!(empty.realizable());
        assert_eq!(empty.to_pd().unwrap().component_count(), 0);
    }

    #[test]
    fn trefoil_phrase_matches_pd() {
        let pd = PdCode::parse_json(r#"{"crossings": [[1,5,2,4],[3,1,4,6],[5,3,6,2]]}"#).unwrap();
        let g = GaussPhrase::from_pd(&pd);
        assert!(g.realizable());
        assert_eq!(g.writhe(), 3);
        let back = g.to_pd().unwrap();
        assert_eq!(GaussPhrase::from_pd(&back), g);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(GaussPhrase::parse("A:+O\n---\nA").is_err());
        assert!(GaussPhrase::parse("A:+X\n---\nAA").is_err());
        assert!(GaussPhrase::parse("A:+O\nAA").is_err());
        assert!(GaussPhrase::parse("---\nAA").is_err());
    }

    #[test]
    fn rotation_keeps_passes() {
        let g = GaussPhrase::parse("A:+O B:+U\n---\nABAB").unwrap();
        let r = g.rotate_word(0, 1);
        assert_eq!(r.to_string(), "A:+U B:+U\n---\nBABA\n");
    }
}
