//! Alphabets, words, Parikh vectors, and finite languages.
//!
//! Symbols are arbitrary tokens (not single characters), so constructions
//! that need barred or decorated letters can use plain tokens like `0b` or
//! `st`. Words are stored as index sequences into their alphabet; ordering
//! everywhere is (length, tokens), which fixes serialization order.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Characters that may not appear in symbol tokens (they are operators or
/// separators in the text formats).
pub const RESERVED_CHARS: &[char] = &[',', '@', '#', '(', ')', '+', '.', '*', '&'];

/// An ordered, duplicate-free set of symbol tokens. The order fixes the
/// coordinate order of Parikh vectors.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Alphabet {
    symbols: Arc<Vec<String>>,
}

impl Alphabet {
    pub fn new<I, S>(symbols: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(Error::InvalidAlphabet("alphabet must be non-empty".into()));
        }
        for s in &symbols {
            if s.is_empty() {
                return Err(Error::InvalidAlphabet("empty symbol token".into()));
            }
            if let Some(c) = s.chars().find(|c| c.is_whitespace() || RESERVED_CHARS.contains(c)) {
                return Err(Error::InvalidAlphabet(format!(
                    "symbol `{s}` contains reserved character `{c}`"
                )));
            }
        }
        let mut seen = BTreeSet::new();
        for s in &symbols {
            if !seen.insert(s.clone()) {
                return Err(Error::InvalidAlphabet(format!("duplicate symbol `{s}`")));
            }
        }
        Ok(Alphabet {
            symbols: Arc::new(symbols),
        })
    }

    /// Convenience constructor for single-character symbols, e.g. `"abc"`.
    pub fn from_chars(chars: &str) -> Result<Self> {
        Self::new(chars.chars().map(|c| c.to_string()))
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn symbol(&self, i: usize) -> &str {
        &self.symbols[i]
    }

    pub fn index_of(&self, token: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s == token)
    }

    /// Parses a word literal: comma-separated tokens, or `@` for the empty
    /// word.
    pub fn parse_word(&self, literal: &str) -> Result<Word> {
        let literal = literal.trim();
        if literal == "@" {
            return Ok(Word::empty(self.clone()));
        }
        if literal.is_empty() {
            return Err(Error::syntax(0, "empty word literal (use `@` for the empty word)"));
        }
        let mut syms = Vec::new();
        for token in literal.split(',') {
            let token = token.trim();
            match self.index_of(token) {
                Some(i) => syms.push(i as u16),
                None => return Err(Error::UnknownSymbol(token.to_string())),
            }
        }
        Ok(Word {
            alphabet: self.clone(),
            syms,
        })
    }

    /// All words of length at most `n`, in (length, lexicographic) order.
    pub fn words_upto(&self, n: usize) -> Vec<Word> {
        let k = self.len();
        let mut out = vec![Word::empty(self.clone())];
        let mut layer: Vec<Vec<u16>> = vec![vec![]];
        for _ in 0..n {
            let mut next = Vec::with_capacity(layer.len() * k);
            for w in &layer {
                for s in 0..k {
                    let mut v = w.clone();
                    v.push(s as u16);
                    next.push(v);
                }
            }
            out.extend(next.iter().map(|syms| Word {
                alphabet: self.clone(),
                syms: syms.clone(),
            }));
            layer = next;
        }
        out
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Alphabet({})", self.symbols.join(" "))
    }
}

/// A word over an alphabet, stored as symbol indices.
#[derive(Clone)]
pub struct Word {
    alphabet: Alphabet,
    syms: Vec<u16>,
}

impl Word {
    pub fn empty(alphabet: Alphabet) -> Self {
        Word {
            alphabet,
            syms: Vec::new(),
        }
    }

    pub fn from_indices(alphabet: Alphabet, syms: Vec<u16>) -> Self {
        debug_assert!(syms.iter().all(|&s| (s as usize) < alphabet.len()));
        Word { alphabet, syms }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.syms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syms.is_empty()
    }

    pub fn indices(&self) -> &[u16] {
        &self.syms
    }

    pub fn tokens(&self) -> impl Iterator<Item = &str> {
        self.syms.iter().map(|&s| self.alphabet.symbol(s as usize))
    }

    /// The word literal: comma-separated tokens, `@` for the empty word.
    pub fn literal(&self) -> String {
        if self.syms.is_empty() {
            "@".to_string()
        } else {
            self.tokens().collect::<Vec<_>>().join(",")
        }
    }

    /// Symbol occurrence counts, in alphabet order.
    pub fn parikh(&self) -> ParikhVector {
        let mut counts = vec![0u64; self.alphabet.len()];
        for &s in &self.syms {
            counts[s as usize] += 1;
        }
        ParikhVector(counts)
    }

    pub fn concat(&self, other: &Word) -> Result<Word> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let mut syms = self.syms.clone();
        syms.extend_from_slice(&other.syms);
        Ok(Word {
            alphabet: self.alphabet.clone(),
            syms,
        })
    }
}

impl PartialEq for Word {
    fn eq(&self, other: &Self) -> bool {
        self.syms == other.syms && self.alphabet == other.alphabet
    }
}

impl Eq for Word {}

impl std::hash::Hash for Word {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.syms.hash(state);
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    /// (length, tokens) order; alphabet only as a final tie-break so that
    /// Ord stays consistent with Eq.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.syms
            .len()
            .cmp(&other.syms.len())
            .then_with(|| self.syms.cmp(&other.syms))
            .then_with(|| self.alphabet.cmp(&other.alphabet))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({})", self.literal())
    }
}

/// A vector of symbol counts, one per alphabet symbol in alphabet order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ParikhVector(pub Vec<u64>);

impl ParikhVector {
    pub fn zero(dim: usize) -> Self {
        ParikhVector(vec![0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn add(&self, other: &ParikhVector) -> ParikhVector {
        debug_assert_eq!(self.dim(), other.dim());
        ParikhVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise subtraction; `None` if any coordinate would go negative.
    pub fn checked_sub(&self, other: &ParikhVector) -> Option<ParikhVector> {
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            out.push(a.checked_sub(*b)?);
        }
        Some(ParikhVector(out))
    }

    /// The canonical preimage word: symbols in alphabet order with
    /// multiplicity, e.g. (2,1) over {a,b} gives "aab".
    pub fn canonical_word(&self, alphabet: &Alphabet) -> Word {
        debug_assert_eq!(self.dim(), alphabet.len());
        let mut syms = Vec::new();
        for (i, &c) in self.0.iter().enumerate() {
            for _ in 0..c {
                syms.push(i as u16);
            }
        }
        Word::from_indices(alphabet.clone(), syms)
    }
}

/// A finite, duplicate-free set of words over one alphabet, kept in
/// (length, tokens) order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiniteLanguage {
    alphabet: Alphabet,
    words: BTreeSet<Word>,
}

impl FiniteLanguage {
    pub fn empty(alphabet: Alphabet) -> Self {
        FiniteLanguage {
            alphabet,
            words: BTreeSet::new(),
        }
    }

    pub fn epsilon(alphabet: Alphabet) -> Self {
        let mut l = Self::empty(alphabet.clone());
        l.words.insert(Word::empty(alphabet));
        l
    }

    pub fn singleton(word: Word) -> Self {
        let mut l = Self::empty(word.alphabet().clone());
        l.words.insert(word);
        l
    }

    pub fn from_words<I: IntoIterator<Item = Word>>(alphabet: Alphabet, words: I) -> Result<Self> {
        let mut set = BTreeSet::new();
        for w in words {
            if *w.alphabet() != alphabet {
                return Err(Error::AlphabetMismatch);
            }
            set.insert(w);
        }
        Ok(FiniteLanguage {
            alphabet,
            words: set,
        })
    }

    /// Parses `literals` over `alphabet` (for tests and fixtures).
    pub fn parse_words(alphabet: &Alphabet, literals: &[&str]) -> Result<Self> {
        let words = literals
            .iter()
            .map(|l| alphabet.parse_word(l))
            .collect::<Result<Vec<_>>>()?;
        Self::from_words(alphabet.clone(), words)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.words.contains(w)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Word> {
        self.words.iter()
    }

    pub fn insert(&mut self, w: Word) -> Result<bool> {
        if *w.alphabet() != self.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        Ok(self.words.insert(w))
    }

    pub fn union(&self, other: &FiniteLanguage) -> Result<FiniteLanguage> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let mut words = self.words.clone();
        words.extend(other.words.iter().cloned());
        Ok(FiniteLanguage {
            alphabet: self.alphabet.clone(),
            words,
        })
    }

    /// Keeps only words of length at most `n`.
    pub fn truncate(&self, n: usize) -> FiniteLanguage {
        FiniteLanguage {
            alphabet: self.alphabet.clone(),
            words: self.words.iter().filter(|w| w.len() <= n).cloned().collect(),
        }
    }

    pub fn max_len(&self) -> usize {
        self.words.iter().map(Word::len).max().unwrap_or(0)
    }

    /// Language file body: one word literal per line.
    pub fn to_file_string(&self) -> String {
        let mut out = String::new();
        for w in &self.words {
            out.push_str(&w.literal());
            out.push('\n');
        }
        out
    }

    /// Parses a language file: one word literal per line, `#` comments.
    pub fn parse_file(alphabet: &Alphabet, text: &str) -> Result<Self> {
        let mut words = Vec::new();
        for line in text.lines() {
            let line = strip_comment(line).trim();
            if line.is_empty() {
                continue;
            }
            words.push(alphabet.parse_word(line)?);
        }
        Self::from_words(alphabet.clone(), words)
    }
}

/// Removes a trailing `#`-comment from a line.
pub(crate) fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}
