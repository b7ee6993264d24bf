//! Seeded random generators for the property suites. Everything is driven
//! by a caller-supplied ChaCha RNG so that suites are reproducible from a
//! single seed.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::alphabet::{Alphabet, FiniteLanguage, Word};
use crate::expr::Expr;
use crate::machine::{Machine, MachineBuilder};
use crate::reductions::{CnfFormula, Literal};

/// A deterministic RNG for a given seed.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_word(rng: &mut ChaCha8Rng, alphabet: &Alphabet, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    let syms = (0..len)
        .map(|_| rng.gen_range(0..alphabet.len()) as u16)
        .collect();
    Word::from_indices(alphabet.clone(), syms)
}

pub fn random_language(
    rng: &mut ChaCha8Rng,
    alphabet: &Alphabet,
    max_words: usize,
    max_len: usize,
) -> FiniteLanguage {
    let count = rng.gen_range(0..=max_words);
    let words: Vec<Word> = (0..count)
        .map(|_| random_word(rng, alphabet, max_len))
        .collect();
    FiniteLanguage::from_words(alphabet.clone(), words).expect("same alphabet")
}

/// A random Regular expression (union/concat/star over word atoms).
pub fn random_regex(rng: &mut ChaCha8Rng, alphabet: &Alphabet, depth: usize) -> Expr {
    if depth == 0 {
        return match rng.gen_range(0..8) {
            0 => Expr::epsilon(alphabet.clone()),
            1 => Expr::empty_set(alphabet.clone()),
            _ => {
                let w = random_word(rng, alphabet, 2);
                if w.is_empty() {
                    Expr::epsilon(alphabet.clone())
                } else {
                    Expr::atom(&w).expect("non-empty word")
                }
            }
        };
    }
    let left = random_regex(rng, alphabet, depth - 1);
    match rng.gen_range(0..3) {
        0 => left
            .union(random_regex(rng, alphabet, depth - 1))
            .expect("same alphabet"),
        1 => left
            .concat(random_regex(rng, alphabet, depth - 1))
            .expect("same alphabet"),
        _ => left.star(),
    }
}

/// A random α-SHUF expression (union/shuffle/iterated shuffle over letters).
pub fn random_alpha_shuf(rng: &mut ChaCha8Rng, alphabet: &Alphabet, depth: usize) -> Expr {
    if depth == 0 {
        return match rng.gen_range(0..8) {
            0 => Expr::epsilon(alphabet.clone()),
            1 => Expr::empty_set(alphabet.clone()),
            _ => Expr::letter(alphabet.clone(), rng.gen_range(0..alphabet.len()) as u16),
        };
    }
    let left = random_alpha_shuf(rng, alphabet, depth - 1);
    match rng.gen_range(0..3) {
        0 => left
            .union(random_alpha_shuf(rng, alphabet, depth - 1))
            .expect("same alphabet"),
        1 => left
            .shuffle(random_alpha_shuf(rng, alphabet, depth - 1))
            .expect("same alphabet"),
        _ => left.iter_shuffle(),
    }
}

/// A random NFA: labels of length ≤ 1 (including ε), every state reachable
/// by construction is not guaranteed — minimization handles the rest.
pub fn random_machine(rng: &mut ChaCha8Rng, alphabet: &Alphabet, max_states: usize) -> Machine {
    let n = rng.gen_range(1..=max_states);
    let mut b = MachineBuilder::new(alphabet.clone());
    let name = |i: usize| format!("g{i}");
    b.start(&name(0));
    for i in 0..n {
        if rng.gen_bool(0.4) {
            b.final_state(&name(i));
        }
        for _ in 0..rng.gen_range(1..=3) {
            let to = rng.gen_range(0..n);
            let syms = if rng.gen_bool(0.15) {
                Vec::new()
            } else {
                vec![rng.gen_range(0..alphabet.len()) as u16]
            };
            let label = Word::from_indices(alphabet.clone(), syms);
            b.rule_word(&name(i), &label, &name(to))
                .expect("same alphabet");
        }
    }
    b.build().expect("start set")
}

/// A random 3-CNF formula with 1..=max_vars variables and 1..=max_clauses
/// clauses (duplicate literals allowed, as in the reductions).
pub fn random_formula(rng: &mut ChaCha8Rng, max_vars: usize, max_clauses: usize) -> CnfFormula {
    let n = rng.gen_range(1..=max_vars);
    let m = rng.gen_range(1..=max_clauses);
    let clauses = (0..m)
        .map(|_| {
            [(); 3].map(|_| Literal {
                var: rng.gen_range(1..=n),
                positive: rng.gen_bool(0.5),
            })
        })
        .collect();
    CnfFormula::new(n, clauses).expect("variables in range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{classify, is_alpha_shuf, is_regular, print_expr, ExprFlavor};

    #[test]
    fn generators_are_deterministic() {
        let sigma = Alphabet::from_chars("abc").unwrap();
        let a = print_expr(&random_regex(&mut rng(7), &sigma, 4));
        let b = print_expr(&random_regex(&mut rng(7), &sigma, 4));
        assert_eq!(a, b);
        let m1 = random_machine(&mut rng(7), &sigma, 4).print();
        let m2 = random_machine(&mut rng(7), &sigma, 4).print();
        assert_eq!(m1, m2);
    }

    #[test]
    fn flavors_match_generators() {
        let sigma = Alphabet::from_chars("ab").unwrap();
        let mut r = rng(11);
        for _ in 0..20 {
            let e = random_regex(&mut r, &sigma, 3);
            assert!(matches!(
                classify(&e),
                ExprFlavor::Regular | ExprFlavor::AlphaShuf | ExprFlavor::Shuf
            ));
            assert!(is_regular(&e));
            let s = random_alpha_shuf(&mut r, &sigma, 3);
            assert!(is_alpha_shuf(&s));
        }
    }

    #[test]
    fn random_formula_within_bounds() {
        let mut r = rng(3);
        for _ in 0..20 {
            let f = random_formula(&mut r, 4, 5);
            assert!((1..=4).contains(&f.num_vars));
            assert!((1..=5).contains(&f.clauses.len()));
        }
    }
}
