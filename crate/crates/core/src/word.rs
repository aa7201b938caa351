//! Alphabets, words and the elementary word functionals.
//!
//! Symbols are dense indices `0..size`. Printable labels only matter when a
//! word is parsed from or rendered to text. Positions are 0-based in code;
//! anything reported to a user is converted to 1-based.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

pub type Symbol = u8;

/// Largest alphabet a [`Symbol`] can index.
pub const MAX_ALPHABET: usize = 256;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    size: usize,
    labels: Option<Vec<char>>,
}

impl Alphabet {
    pub fn new(size: usize) -> Result<Self> {
        if size == 0 || size > MAX_ALPHABET {
            return Err(Error::param(format!(
                "alphabet size must be in 1..={MAX_ALPHABET}, got {size}"
            )));
        }
        Ok(Alphabet { size, labels: None })
    }

    /// Alphabet whose symbol `i` prints as the `i`-th character of `labels`.
    pub fn with_labels(labels: &str) -> Result<Self> {
        let chars: Vec<char> = labels.chars().collect();
        let mut seen = BTreeSet::new();
        for &c in &chars {
            if !seen.insert(c) {
                return Err(Error::param(format!("duplicate alphabet label '{c}'")));
            }
            if c == '.' || c.is_whitespace() || c == ';' || c == '=' {
                return Err(Error::param(format!("'{c}' cannot be used as a label")));
            }
        }
        let mut a = Alphabet::new(chars.len())?;
        a.labels = Some(chars);
        Ok(a)
    }

    /// Smallest alphabet able to represent `text`: digit strings get
    /// `max digit + 1` symbols, dotted strings `max index + 1`, anything else
    /// the sorted set of its characters as labels.
    pub fn infer(text: &str) -> Result<Self> {
        if text.contains('.') {
            let mut max = 0usize;
            for tok in text.split('.') {
                let v: usize = tok
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad dotted index '{tok}'")))?;
                max = max.max(v);
            }
            return Alphabet::new(max + 1);
        }
        if text.chars().all(|c| c.is_ascii_digit()) {
            let max = text.bytes().map(|b| (b - b'0') as usize).max().unwrap_or(0);
            return Alphabet::new(max + 1);
        }
        let labels: BTreeSet<char> = text.chars().collect();
        Alphabet::with_labels(&labels.into_iter().collect::<String>())
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn labels(&self) -> Option<&[char]> {
        self.labels.as_deref()
    }

    pub fn log2_size(&self) -> f64 {
        (self.size as f64).log2()
    }

    pub fn check(&self, w: &Word) -> Result<()> {
        match w.0.iter().find(|&&s| s as usize >= self.size) {
            Some(&s) => Err(Error::InvalidSymbol { symbol: s as usize, size: self.size }),
            None => Ok(()),
        }
    }

    pub fn check_symbol(&self, a: Symbol) -> Result<()> {
        if (a as usize) < self.size {
            Ok(())
        } else {
            Err(Error::InvalidSymbol { symbol: a as usize, size: self.size })
        }
    }

    fn dotted(&self) -> bool {
        self.labels.is_none() && self.size > 10
    }

    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let text = text.trim();
        let symbols: Vec<Symbol> = if let Some(labels) = &self.labels {
            text.chars()
                .map(|c| {
                    labels
                        .iter()
                        .position(|&l| l == c)
                        .map(|p| p as Symbol)
                        .ok_or_else(|| Error::Parse(format!("'{c}' is not in the alphabet")))
                })
                .collect::<Result<_>>()?
        } else if self.dotted() {
            if text.is_empty() {
                Vec::new()
            } else {
                text.split('.')
                    .map(|t| {
                        t.parse::<usize>()
                            .map_err(|_| Error::Parse(format!("bad dotted index '{t}'")))
                            .and_then(|v| {
                                Symbol::try_from(v)
                                    .map_err(|_| Error::InvalidSymbol { symbol: v, size: self.size })
                            })
                    })
                    .collect::<Result<_>>()?
            }
        } else {
            text.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as Symbol)
                        .ok_or_else(|| Error::Parse(format!("'{c}' is not a digit")))
                })
                .collect::<Result<_>>()?
        };
        let w = Word(symbols);
        self.check(&w)?;
        Ok(w)
    }

    pub fn format_word(&self, w: &Word) -> String {
        if let Some(labels) = &self.labels {
            w.0.iter().map(|&s| labels[s as usize]).collect()
        } else if self.dotted() {
            w.0.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(".")
        } else {
            w.0.iter().map(|&s| char::from(b'0' + s)).collect()
        }
    }

    pub fn format_symbol(&self, a: Symbol) -> String {
        self.format_word(&Word(vec![a]))
    }

    /// Text used for the `alphabet=` field of a system descriptor.
    pub fn descriptor(&self) -> String {
        match &self.labels {
            Some(l) => l.iter().collect(),
            None => self.size.to_string(),
        }
    }

    pub fn from_descriptor(text: &str) -> Result<Self> {
        match text.trim().parse::<usize>() {
            Ok(n) => Alphabet::new(n),
            Err(_) => Alphabet::with_labels(text.trim()),
        }
    }
}

/// A finite word; the empty word is allowed.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Symbol>);

impl Word {
    pub fn new(symbols: Vec<Symbol>) -> Self {
        Word(symbols)
    }

    /// Parses a word written with decimal digits, one symbol per digit.
    pub fn from_digits(text: &str) -> Result<Self> {
        text.chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as Symbol)
                    .ok_or_else(|| Error::Parse(format!("'{c}' is not a digit")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn into_symbols(self) -> Vec<Symbol> {
        self.0
    }

    pub fn last(&self) -> Option<Symbol> {
        self.0.last().copied()
    }

    /// The set R(w) of distinct symbols.
    pub fn alpha_representation(&self) -> BTreeSet<Symbol> {
        self.0.iter().copied().collect()
    }

    pub fn alpha_diversity(&self) -> usize {
        self.alpha_representation().len()
    }

    pub fn occurrences(&self, a: Symbol) -> usize {
        self.0.iter().filter(|&&s| s == a).count()
    }

    pub fn reverse(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Substring of `len` symbols at 0-based `start`, if it fits.
    pub fn window(&self, start: usize, len: usize) -> Option<Word> {
        self.0.get(start..start.checked_add(len)?).map(|s| Word(s.to_vec()))
    }

    pub fn prefix(&self, len: usize) -> Option<Word> {
        self.window(0, len)
    }

    pub fn ends_with(&self, suffix: &Word) -> bool {
        self.0.ends_with(&suffix.0)
    }

    pub fn contains_window(&self, needle: &Word) -> bool {
        needle.is_empty() || self.0.windows(needle.len()).any(|w| w == needle.symbols())
    }

    pub fn hamming(&self, other: &Word) -> Result<usize> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch { left: self.len(), right: other.len() });
        }
        Ok(self.0.iter().zip(&other.0).filter(|(a, b)| a != b).count())
    }

    /// `w_i = w_{i+p}` for every valid `i`. Requires `1 <= p <= |w|`.
    pub fn is_periodic(&self, p: usize) -> Result<bool> {
        if p == 0 || p > self.len() {
            return Err(Error::param(format!(
                "period {p} out of range for a word of length {}",
                self.len()
            )));
        }
        Ok(self.0.iter().zip(&self.0[p..]).all(|(a, b)| a == b))
    }

    /// Applies `map` symbol-wise.
    pub fn relabel(&self, map: impl Fn(Symbol) -> Symbol) -> Word {
        Word(self.0.iter().map(|&s| map(s)).collect())
    }
}

impl From<Vec<Symbol>> for Word {
    fn from(v: Vec<Symbol>) -> Self {
        Word(v)
    }
}

impl From<&[Symbol]> for Word {
    fn from(v: &[Symbol]) -> Self {
        Word(v.to_vec())
    }
}

impl fmt::Display for Word {
    /// Digits when every symbol is below 10, dotted indices otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|&s| s < 10) {
            for &s in &self.0 {
                write!(f, "{s}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.0.iter().map(|s| s.to_string()).collect();
            f.write_str(&parts.join("."))
        }
    }
}

#[cfg(test)]
pub(crate) fn w(text: &str) -> Word {
    Word::from_digits(text).expect("digit word")
}
