//! Exact and bounded deciders for the language-class questions:
//! commutativity of a regular language (exact, via the minimal DFA),
//! perm-closedness of a bounded slice, and bounded JFA disjointness.
//!
//! Verdicts keep the exact/bounded distinction explicit: `Yes`/`No` come
//! only from exact procedures, `BoundedYes` always carries the bound it was
//! checked at.

use std::collections::{HashSet, VecDeque};

use crate::alphabet::{FiniteLanguage, Word};
use crate::error::Result;
use crate::machine::Machine;
use crate::shuffle::{is_perm_closed, sigma_upto};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Verdict {
    /// Exact positive answer.
    Yes,
    /// Exact negative answer, with a witness word where one exists.
    No { witness: Option<Word> },
    /// Positive only up to the stated bound.
    BoundedYes { bound: usize },
}

impl Verdict {
    pub fn is_positive(&self) -> bool {
        !matches!(self, Verdict::No { .. })
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Yes => write!(f, "yes"),
            Verdict::No { witness: None } => write!(f, "no"),
            Verdict::No {
                witness: Some(w),
            } => write!(f, "no (witness {})", w.literal()),
            Verdict::BoundedYes { bound } => write!(f, "yes up to bound {bound}"),
        }
    }
}

/// Exact commutativity of L_FA(m): minimize to the canonical complete DFA
/// and check δ(q,ab) = δ(q,ba) for every state q and symbol pair (a,b).
///
/// Sound and complete: adjacent transpositions generate all permutations,
/// and Nerode-equivalent states of a minimal DFA are identical. A negative
/// answer carries a word witness u·ab·z of length ≤ 2·|DFA| such that
/// exactly one of u·ab·z, u·ba·z is accepted.
pub fn is_commutative_regular(m: &Machine) -> Result<Verdict> {
    let dfa = m.minimize()?;
    let table = dfa.dfa_table()?;
    let n = table.len();
    let k = m.alphabet().len();
    for q in 0..n {
        for a in 0..k {
            for b in (a + 1)..k {
                let qab = table[table[q][a]][b];
                let qba = table[table[q][b]][a];
                if qab != qba {
                    let witness = transposition_witness(&dfa, &table, q, a, b, qab, qba);
                    return Ok(Verdict::No {
                        witness: Some(witness),
                    });
                }
            }
        }
    }
    Ok(Verdict::Yes)
}

/// Builds the accepted half of the pair (u·ab·z, u·ba·z): u reaches q, and
/// z separates the two states reached after ab vs. ba.
fn transposition_witness(
    dfa: &Machine,
    table: &[Vec<usize>],
    q: usize,
    a: usize,
    b: usize,
    qab: usize,
    qba: usize,
) -> Word {
    let u = path_to(dfa, table, q);
    let z = separating_suffix(dfa, table, qab, qba);
    let mut syms = u;
    let accepted_order = {
        // Pick the order whose endpoint accepts z.
        let mut s = qab;
        for &c in &z {
            s = table[s][c as usize];
        }
        dfa.final_states().contains(&s)
    };
    if accepted_order {
        syms.push(a as u16);
        syms.push(b as u16);
    } else {
        syms.push(b as u16);
        syms.push(a as u16);
    }
    syms.extend_from_slice(&z);
    Word::from_indices(dfa.alphabet().clone(), syms)
}

/// Shortest word from the start state to `target` in a complete DFA.
fn path_to(dfa: &Machine, table: &[Vec<usize>], target: usize) -> Vec<u16> {
    let start = dfa.start_state();
    let mut prev: Vec<Option<(usize, u16)>> = vec![None; table.len()];
    let mut seen = vec![false; table.len()];
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(s) = queue.pop_front() {
        if s == target {
            break;
        }
        for (c, &t) in table[s].iter().enumerate() {
            if !seen[t] {
                seen[t] = true;
                prev[t] = Some((s, c as u16));
                queue.push_back(t);
            }
        }
    }
    let mut path = Vec::new();
    let mut cur = target;
    while cur != start {
        let (p, c) = prev[cur].expect("target reachable in minimized DFA");
        path.push(c);
        cur = p;
    }
    path.reverse();
    path
}

/// Shortest word on which exactly one of the two states accepts. Exists
/// whenever the states differ in a minimal DFA.
fn separating_suffix(dfa: &Machine, table: &[Vec<usize>], s1: usize, s2: usize) -> Vec<u16> {
    let finals = dfa.final_states();
    let mut prev: std::collections::HashMap<(usize, usize), ((usize, usize), u16)> =
        std::collections::HashMap::new();
    let mut seen = HashSet::from([(s1, s2)]);
    let mut queue = VecDeque::from([(s1, s2)]);
    while let Some((p, q)) = queue.pop_front() {
        if finals.contains(&p) != finals.contains(&q) {
            let mut path = Vec::new();
            let mut cur = (p, q);
            while cur != (s1, s2) {
                let (par, c) = prev[&cur];
                path.push(c);
                cur = par;
            }
            path.reverse();
            return path;
        }
        for (c, &tp) in table[p].iter().enumerate() {
            let next = (tp, table[q][c]);
            if seen.insert(next) {
                prev.insert(next, ((p, q), c as u16));
                queue.push_back(next);
            }
        }
    }
    unreachable!("distinct states of a minimal DFA always have a separating word")
}

/// Perm-closedness of a bounded slice. The slice must be exactly
/// L ∩ Σ^{≤n}; then a positive answer is sound up to n (permutation
/// preserves length) and a negative answer is an exact refutation.
pub fn is_perm_closed_bounded(slice: &FiniteLanguage, n: usize) -> Verdict {
    match is_perm_closed(slice) {
        Ok(()) => Verdict::BoundedYes { bound: n },
        Err(w) => Verdict::No { witness: Some(w) },
    }
}

/// L_FA(m) ∈ JFA ∩ REG iff it is commutative (perm-closed), so this is the
/// commutativity check under another name.
pub fn jfa_membership_of_regular(m: &Machine) -> Result<Verdict> {
    is_commutative_regular(m)
}

/// Bounded JFA disjointness: `No` (with witness) when some word of length
/// ≤ n is JFA-accepted by both machines, `BoundedYes` otherwise. A bounded
/// oracle only — the exact problem is NP-complete.
pub fn jfa_disjointness_bounded(m1: &Machine, m2: &Machine, n: usize) -> Result<Verdict> {
    if m1.alphabet() != m2.alphabet() {
        return Err(crate::error::Error::AlphabetMismatch);
    }
    for w in sigma_upto(m1.alphabet(), n) {
        if m1.jfa_accepts(&w)? && m2.jfa_accepts(&w)? {
            return Ok(Verdict::No { witness: Some(w) });
        }
    }
    Ok(Verdict::BoundedYes { bound: n })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::expr::{eval_upto, parse_expr};
    use crate::machine::{thompson_machine, word_to_jfa};

    fn machine_for(text: &str, sigma: &Alphabet) -> Machine {
        thompson_machine(&parse_expr(text, sigma).unwrap())
    }

    #[test]
    fn a_star_b_star_is_not_commutative() {
        let sigma = Alphabet::from_chars("ab").unwrap();
        let m = machine_for("a*.b*", &sigma);
        let verdict = is_commutative_regular(&m).unwrap();
        let Verdict::No { witness: Some(w) } = &verdict else {
            panic!("expected a no-verdict with witness, got {verdict:?}");
        };
        // The witness is accepted but some transposition of it is not.
        assert!(m.fa_accepts(w).unwrap());
        assert!(crate::shuffle::is_perm_closed(&m.fa_language_upto(w.len())).is_err());
    }

    #[test]
    fn sigma_star_is_commutative() {
        let sigma = Alphabet::from_chars("ab").unwrap();
        let m = machine_for("(a+b)*", &sigma);
        assert_eq!(is_commutative_regular(&m).unwrap(), Verdict::Yes);
    }

    #[test]
    fn abc_cycle_is_not_commutative_as_fa() {
        let sigma = Alphabet::from_chars("abc").unwrap();
        let m = machine_for("(a.b.c)*", &sigma);
        assert!(matches!(
            is_commutative_regular(&m).unwrap(),
            Verdict::No { .. }
        ));
    }

    #[test]
    fn unary_languages_are_commutative() {
        let sigma = Alphabet::from_chars("a").unwrap();
        let m = machine_for("(a.a.a)*+a", &sigma);
        assert_eq!(jfa_membership_of_regular(&m).unwrap(), Verdict::Yes);
    }

    #[test]
    fn witness_is_short_and_exact_matches_bounded() {
        let sigma = Alphabet::from_chars("ab").unwrap();
        for text in ["a*.b*", "(a.b)*", "(a+b)*.a", "a.(b.a)*"] {
            let m = machine_for(text, &sigma);
            let min_size = m.minimize().unwrap().state_names().len();
            match is_commutative_regular(&m).unwrap() {
                Verdict::Yes => {
                    let n = 2 * min_size;
                    assert_eq!(
                        is_perm_closed_bounded(&m.fa_language_upto(n), n),
                        Verdict::BoundedYes { bound: n }
                    );
                }
                Verdict::No { witness: Some(w) } => {
                    assert!(w.len() <= 2 * min_size, "witness too long for {text}");
                    let slice = m.fa_language_upto(w.len());
                    assert!(matches!(
                        is_perm_closed_bounded(&slice, w.len()),
                        Verdict::No { .. }
                    ));
                }
                v => panic!("unexpected verdict {v:?} for {text}"),
            }
        }
    }

    #[test]
    fn perm_closed_bounded_on_shuf_expression() {
        let sigma = Alphabet::from_chars("abcd").unwrap();
        let e = parse_expr("(a,b&c,d)&*", &sigma).unwrap();
        let verdict = is_perm_closed_bounded(&eval_upto(&e, 4), 4);
        assert!(matches!(verdict, Verdict::No { witness: Some(_) }));

        let sigma2 = Alphabet::from_chars("ab").unwrap();
        let gjfa = crate::machine::Machine::parse(
            "alphabet: a b\nstates: s\nstart: s\nfinal: s\nrule: s a,b s\n",
        )
        .unwrap();
        let verdict = is_perm_closed_bounded(&gjfa.gjfa_language_upto(2), 2);
        let Verdict::No { witness: Some(w) } = verdict else {
            panic!("expected refutation");
        };
        assert_eq!(w.literal(), "b,a");
        let _ = sigma2;
    }

    #[test]
    fn disjointness_bounded() {
        let sigma = Alphabet::from_chars("abc").unwrap();
        let cycle = machine_for("(a.b.c)*", &sigma);
        let w_abc = word_to_jfa(&sigma.parse_word("a,b,c").unwrap());
        let verdict = jfa_disjointness_bounded(&cycle, &w_abc, 3).unwrap();
        let Verdict::No { witness: Some(w) } = verdict else {
            panic!("expected nonempty intersection");
        };
        assert_eq!(w.parikh().0, vec![1, 1, 1]);

        let w_ab = word_to_jfa(&sigma.parse_word("a,b").unwrap());
        assert_eq!(
            jfa_disjointness_bounded(&cycle, &w_ab, 4).unwrap(),
            Verdict::BoundedYes { bound: 4 }
        );
    }
}
