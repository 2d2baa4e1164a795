//! Nanophrases and their text format.
//!
//! A document is a sequence of `key: value` lines followed by body lines:
//!
//! ```text
//! alphabet: a b c
//! tau: a<->b
//! nu: c<->c
//! triples: sharp
//! shift: on
//! L: a
//! L1: a
//! letters: A=a B=b
//! AB|BA
//! ```
//!
//! See `docs/formats.md` for the grammar.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::diagrams::gauss::{letter_name, tokenize_word};
use crate::error::{Error, Result};
use crate::nano::data::HomotopyData;

/// A nanophrase up to isomorphism. Letters are numbered by first occurrence
/// in reading order, so equal values are exactly isomorphic phrases.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Nanophrase {
    words: Vec<Vec<usize>>,
    /// `|A|` of every letter, as an index into the alphabet.
    proj: Vec<usize>,
}

impl Nanophrase {
    pub fn empty() -> Self {
        Self {
            words: vec![],
            proj: vec![],
        }
    }

    /// Builds a phrase from words over arbitrary letter ids and the
    /// projection of every id that occurs.
    pub fn new(words: Vec<Vec<usize>>, proj: &BTreeMap<usize, usize>) -> Result<Self> {
        let mut count: BTreeMap<usize, usize> = BTreeMap::new();
        for &l in words.iter().flatten() {
            *count.entry(l).or_insert(0) += 1;
        }
        if let Some((l, c)) = count.iter().find(|&(_, &c)| c != 2) {
            return Err(Error::InvalidDiagram(format!(
                "letter {l} occurs {c} times, expected 2"
            )));
        }
        let mut out_proj = Vec::with_capacity(count.len());
        let mut number: BTreeMap<usize, usize> = BTreeMap::new();
        let mut out_words = Vec::with_capacity(words.len());
        for w in &words {
            let mut ow = Vec::with_capacity(w.len());
            for &l in w {
                let next = number.len();
                let i = *number.entry(l).or_insert(next);
                if i == out_proj.len() {
                    out_proj.push(*proj.get(&l).ok_or_else(|| {
                        Error::InvalidDiagram(format!("letter {l} has no projection"))
                    })?);
                }
                ow.push(i);
            }
            out_words.push(ow);
        }
        Ok(Self {
            words: out_words,
            proj: out_proj,
        })
    }

    /// Like [`Nanophrase::new`] with projections indexed by letter id.
    pub fn from_dense(words: Vec<Vec<usize>>, proj: &[usize]) -> Result<Self> {
        let map: BTreeMap<usize, usize> = proj.iter().copied().enumerate().collect();
        Self::new(words, &map)
    }

    pub(crate) fn canonical(words: Vec<Vec<usize>>, proj: &[usize]) -> Self {
        // letters are valid by construction; only renumber
        let mut number = vec![usize::MAX; proj.len()];
        let mut out_proj = Vec::with_capacity(proj.len());
        let words = words
            .into_iter()
            .map(|w| {
                w.into_iter()
                    .map(|l| {
                        if number[l] == usize::MAX {
                            number[l] = out_proj.len();
                            out_proj.push(proj[l]);
                        }
                        number[l]
                    })
                    .collect()
            })
            .collect();
        Self {
            words,
            proj: out_proj,
        }
    }

    pub fn words(&self) -> &[Vec<usize>] {
        &self.words
    }

    pub fn proj(&self, letter: usize) -> usize {
        self.proj[letter]
    }

    pub fn projections(&self) -> &[usize] {
        &self.proj
    }

    pub fn letter_count(&self) -> usize {
        self.proj.len()
    }

    pub fn word_count(&self) -> usize {
        self.words.len()
    }

    /// Total number of letter occurrences.
    pub fn length(&self) -> usize {
        self.words.iter().map(Vec::len).sum()
    }

    /// Removes every letter for which `keep` is false.
    pub fn delete_letters(&self, keep: impl Fn(usize) -> bool) -> Self {
        let words = self
            .words
            .iter()
            .map(|w| w.iter().copied().filter(|&l| keep(l)).collect())
            .collect();
        Self::canonical(words, &self.proj)
    }

    /// Replaces every projection by `f(letter)`.
    pub fn relabel(&self, f: impl Fn(usize) -> usize) -> Self {
        let proj: Vec<usize> = (0..self.proj.len()).map(f).collect();
        Self {
            words: self.words.clone(),
            proj,
        }
    }

    pub fn check_alphabet(&self, data: &HomotopyData) -> Result<()> {
        if let Some(&p) = self.proj.iter().find(|&&p| p >= data.len()) {
            return Err(Error::HomotopyData(format!(
                "projection {p} outside an alphabet of {} symbols",
                data.len()
            )));
        }
        Ok(())
    }

    /// `letters:` line and body of the text format.
    pub fn to_text(&self, data: &HomotopyData) -> String {
        let mut s = String::new();
        let letters: Vec<String> = (0..self.letter_count())
            .map(|l| format!("{}={}", letter_name(l), data.name(self.proj[l])))
            .collect();
        writeln!(s, "letters: {}", letters.join(" ")).unwrap();
        s.push_str(&self.body());
        s.push('\n');
        s
    }

    /// The body line; an empty word is written `.`, the empty phrase as an
    /// empty line.
    pub fn body(&self) -> String {
        if self.words.len() == 1 && self.words[0].is_empty() {
            return ".".into();
        }
        let words: Vec<String> = self
            .words
            .iter()
            .map(|w| w.iter().map(|&l| letter_name(l)).collect::<String>())
            .collect();
        words.join("|")
    }

    /// Reads a phrase over `data` from a document (data keys are ignored).
    pub fn parse(text: &str, data: &HomotopyData) -> Result<Self> {
        let doc = NanoDocument::parse(text)?;
        doc.phrase(data)
    }
}

/// The keys and body of a nanophrase document.
#[derive(Clone, Debug, Default)]
pub struct NanoDocument {
    pub fields: BTreeMap<String, String>,
    pub body: Option<String>,
}

const KEYS: &[&str] = &[
    "alphabet", "tau", "nu", "triples", "shift", "L", "L1", "letters",
];

impl NanoDocument {
    pub fn parse(text: &str) -> Result<Self> {
        let mut doc = Self::default();
        for raw in text.lines() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some((key, value)) = line.split_once(':') {
                let key = key.trim();
                if !KEYS.contains(&key) {
                    return Err(Error::Parse(format!("unknown key {key:?}")));
                }
                if doc.body.is_some() {
                    return Err(Error::Parse(format!("key {key:?} after the body")));
                }
                if doc
                    .fields
                    .insert(key.to_string(), value.trim().to_string())
                    .is_some()
                {
                    return Err(Error::Parse(format!("key {key:?} given twice")));
                }
            } else {
                doc.body.get_or_insert_with(String::new).push_str(line);
            }
        }
        Ok(doc)
    }

    pub fn has_data(&self) -> bool {
        self.fields.contains_key("alphabet")
    }

    pub fn data(&self) -> Result<HomotopyData> {
        HomotopyData::from_fields(&self.fields)
    }

    /// Symbols listed under `key` (`L` or `L1`), if present.
    pub fn symbol_set(&self, key: &str, data: &HomotopyData) -> Result<Option<BTreeSet<usize>>> {
        match self.fields.get(key) {
            None => Ok(None),
            Some(v) => v
                .split_whitespace()
                .map(|s| data.symbol(s))
                .collect::<Result<_>>()
                .map(Some),
        }
    }

    pub fn phrase(&self, data: &HomotopyData) -> Result<Nanophrase> {
        let mut proj: BTreeMap<String, usize> = BTreeMap::new();
        for tok in self
            .fields
            .get("letters")
            .map(String::as_str)
            .unwrap_or("")
            .split_whitespace()
        {
            let (name, sym) = tok.split_once('=').ok_or_else(|| {
                Error::Parse(format!("letters: expected NAME=symbol, got {tok:?}"))
            })?;
            if tokenize_word(name).map(|t| t.len() != 1).unwrap_or(true) {
                return Err(Error::Parse(format!("bad letter name {name:?}")));
            }
            if proj.insert(name.to_string(), data.symbol(sym)?).is_some() {
                return Err(Error::Parse(format!("letter {name} declared twice")));
            }
        }
        let body = self.body.as_deref().unwrap_or("");
        let words: Vec<Vec<String>> = if body.is_empty() {
            vec![]
        } else {
            body.split('|')
                .map(|w| {
                    if w == "." {
                        Ok(vec![])
                    } else {
                        tokenize_word(w)
                    }
                })
                .collect::<Result<_>>()?
        };
        let ids: BTreeMap<&String, usize> = proj.keys().enumerate().map(|(i, k)| (k, i)).collect();
        let mut int_words = Vec::new();
        let mut used = BTreeSet::new();
        for w in &words {
            let mut iw = Vec::new();
            for tok in w {
                let &i = ids
                    .get(tok)
                    .ok_or_else(|| Error::Parse(format!("letter {tok} is not declared")))?;
                used.insert(i);
                iw.push(i);
            }
            int_words.push(iw);
        }
        if used.len() != ids.len() {
            return Err(Error::Parse("a declared letter does not occur".into()));
        }
        let dense: Vec<usize> = proj.values().copied().collect();
        Nanophrase::from_dense(int_words, &dense)
    }
}
