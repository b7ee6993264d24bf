//! Shuffle, permutation closure, and bounded closure operators on finite
//! languages.
//!
//! All operators here are exact on finite languages; the `_upto` variants
//! compute the length-`n` slice of an (in general infinite) closure, which
//! is exact for that slice because none of the closures can shrink a word.

use std::collections::BTreeSet;

use crate::alphabet::{Alphabet, FiniteLanguage, Word};
use crate::error::{Error, Result};

/// All interleavings of `u` and `v` (the shuffle of two words).
pub fn shuffle_words(u: &Word, v: &Word) -> Result<FiniteLanguage> {
    if u.alphabet() != v.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    let mut out = BTreeSet::new();
    let mut buf = Vec::with_capacity(u.len() + v.len());
    shuffle_rec(u.indices(), v.indices(), &mut buf, &mut out);
    FiniteLanguage::from_words(
        u.alphabet().clone(),
        out.into_iter()
            .map(|syms| Word::from_indices(u.alphabet().clone(), syms)),
    )
}

fn shuffle_rec(u: &[u16], v: &[u16], buf: &mut Vec<u16>, out: &mut BTreeSet<Vec<u16>>) {
    if u.is_empty() && v.is_empty() {
        out.insert(buf.clone());
        return;
    }
    if let Some((&h, rest)) = u.split_first() {
        buf.push(h);
        shuffle_rec(rest, v, buf, out);
        buf.pop();
    }
    if let Some((&h, rest)) = v.split_first() {
        buf.push(h);
        shuffle_rec(u, rest, buf, out);
        buf.pop();
    }
}

/// Elementwise shuffle of two finite languages.
pub fn shuffle_langs(a: &FiniteLanguage, b: &FiniteLanguage) -> Result<FiniteLanguage> {
    shuffle_langs_upto(a, b, usize::MAX)
}

/// Elementwise shuffle, keeping only words of length ≤ `n`. A shuffle of
/// `u` and `v` has length exactly |u| + |v|, so longer pairs are skipped
/// before any interleaving is generated; the slice is still exact.
pub fn shuffle_langs_upto(a: &FiniteLanguage, b: &FiniteLanguage, n: usize) -> Result<FiniteLanguage> {
    if a.alphabet() != b.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    let mut out = FiniteLanguage::empty(a.alphabet().clone());
    for u in a.iter() {
        for v in b.iter() {
            if u.len().saturating_add(v.len()) <= n {
                out = out.union(&shuffle_words(u, v)?)?;
            }
        }
    }
    Ok(out)
}

/// All words with the same Parikh vector as `w` (permutations of its
/// multiset of symbols).
pub fn perm_word(w: &Word) -> FiniteLanguage {
    let alphabet = w.alphabet().clone();
    let mut counts = w.parikh().0;
    let mut out = BTreeSet::new();
    let mut buf = Vec::with_capacity(w.len());
    perm_rec(&mut counts, w.len(), &mut buf, &mut out);
    FiniteLanguage::from_words(
        alphabet.clone(),
        out.into_iter()
            .map(|syms| Word::from_indices(alphabet.clone(), syms)),
    )
    .expect("permutations stay over the same alphabet")
}

fn perm_rec(counts: &mut [u64], remaining: usize, buf: &mut Vec<u16>, out: &mut BTreeSet<Vec<u16>>) {
    if remaining == 0 {
        out.insert(buf.clone());
        return;
    }
    for i in 0..counts.len() {
        if counts[i] > 0 {
            counts[i] -= 1;
            buf.push(i as u16);
            perm_rec(counts, remaining - 1, buf, out);
            buf.pop();
            counts[i] += 1;
        }
    }
}

/// The permutation closure of a finite language.
pub fn perm_closure(l: &FiniteLanguage) -> FiniteLanguage {
    let mut out = FiniteLanguage::empty(l.alphabet().clone());
    for w in l.iter() {
        out = out
            .union(&perm_word(w))
            .expect("permutations stay over the same alphabet");
    }
    out
}

/// Whether a finite language equals its permutation closure. On failure
/// returns a witness word whose permutation is missing.
pub fn is_perm_closed(l: &FiniteLanguage) -> std::result::Result<(), Word> {
    for w in l.iter() {
        for p in perm_word(w).iter() {
            if !l.contains(p) {
                return Err(p.clone());
            }
        }
    }
    Ok(())
}

/// Elementwise concatenation of two finite languages.
pub fn concat_langs(a: &FiniteLanguage, b: &FiniteLanguage) -> Result<FiniteLanguage> {
    concat_langs_upto(a, b, usize::MAX)
}

/// Elementwise concatenation, keeping only words of length ≤ `n` (exact for
/// the slice, as for [`shuffle_langs_upto`]).
pub fn concat_langs_upto(a: &FiniteLanguage, b: &FiniteLanguage, n: usize) -> Result<FiniteLanguage> {
    if a.alphabet() != b.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    let mut out = FiniteLanguage::empty(a.alphabet().clone());
    for u in a.iter() {
        for v in b.iter() {
            if u.len().saturating_add(v.len()) <= n {
                out.insert(u.concat(v)?)?;
            }
        }
    }
    Ok(out)
}

/// Length-`n` slice of the Kleene star of a finite language.
pub fn star_upto(l: &FiniteLanguage, n: usize) -> FiniteLanguage {
    closure_upto(l, n, |acc, gen| {
        concat_langs_upto(acc, gen, n).expect("same alphabet")
    })
}

/// Length-`n` slice of the iterated shuffle of a finite language.
pub fn iter_shuffle_upto(l: &FiniteLanguage, n: usize) -> FiniteLanguage {
    closure_upto(l, n, |acc, gen| {
        shuffle_langs_upto(acc, gen, n).expect("same alphabet")
    })
}

/// Least fixpoint of `acc ∪ op(acc, l)` containing the empty word, cut to
/// length `n`. Works for both star and iterated shuffle because both only
/// extend words.
fn closure_upto(
    l: &FiniteLanguage,
    n: usize,
    op: impl Fn(&FiniteLanguage, &FiniteLanguage) -> FiniteLanguage,
) -> FiniteLanguage {
    let gen = l.truncate(n);
    let mut acc = FiniteLanguage::epsilon(l.alphabet().clone());
    loop {
        let next = acc.union(&op(&acc, &gen).truncate(n)).expect("same alphabet");
        if next == acc {
            return acc;
        }
        acc = next;
    }
}

/// Length-`n` slice of Σ*, in canonical order.
pub fn sigma_upto(alphabet: &Alphabet, n: usize) -> Vec<Word> {
    alphabet.words_upto(n)
}
