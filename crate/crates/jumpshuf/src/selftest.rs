//! Self-test suites: a fixed regression corpus (`quick`) plus seeded
//! randomized property suites (`full`). The report is plain text and —
//! given the same seed and level — byte-identical across runs.

use crate::alphabet::{Alphabet, FiniteLanguage, Word};
use crate::deciders::{is_commutative_regular, is_perm_closed_bounded, Verdict};
use crate::expr::{eval_upto, parse_expr, regex_to_alpha_shuf, star_height};
use crate::gen;
use crate::machine::{thompson_machine, Machine};
use crate::reductions::{
    brute_ebc2, brute_sat, ebc2_fixed_machine, ebc2_to_word, sat_fixed_gjfa, sat_to_gjfa_word,
    sat_to_jfa, Ebc2Instance, SatGjfaLayout,
};
use crate::semilinear::{
    alpha_shuf_to_semilinear, semilinear_to_normalform, sl_bounded_equal,
};
use crate::shuffle::{concat_langs, iter_shuffle_upto, perm_closure, shuffle_langs, star_upto};

/// The three-state cycle machine: FA language (abc)*, JFA language
/// {w : |w|_a = |w|_b = |w|_c}.
pub fn cycle_machine() -> Machine {
    Machine::parse(
        "alphabet: a b c\nstates: s r t\nstart: s\nfinal: s\n\
         rule: s a r\nrule: r b t\nrule: t c s\n",
    )
    .expect("fixed machine")
}

/// The two-state general machine with rules ab and cd: FA language (abcd)*.
pub fn two_factor_machine() -> Machine {
    Machine::parse(
        "alphabet: a b c d\nstates: s r\nstart: s\nfinal: s\n\
         rule: s a,b r\nrule: r c,d s\n",
    )
    .expect("fixed machine")
}

/// The complementation counterexample skeleton over {a,b}; the caller picks
/// the final states. With finals {r} the JFA language is "contains an a";
/// with finals {s,t} it is {ε} ∪ "contains a b" — the two machines witness
/// that JFA languages are not closed under complement within the family.
pub fn complement_example(finals: &[&str]) -> Machine {
    let text = format!(
        "alphabet: a b\nstates: s r t\nstart: s\nfinal: {}\n\
         rule: s a r\nrule: s b t\nrule: r a r\nrule: r b r\nrule: t a t\nrule: t b s\n",
        finals.join(" ")
    );
    Machine::parse(&text).expect("fixed machine")
}

struct Suite {
    lines: Vec<String>,
    failures: usize,
}

impl Suite {
    fn new() -> Suite {
        Suite {
            lines: Vec::new(),
            failures: 0,
        }
    }

    fn item(&mut self, name: &str, ok: bool) {
        self.lines
            .push(format!("{name}: {}", if ok { "pass" } else { "FAIL" }));
        if !ok {
            self.failures += 1;
        }
    }
}

/// Runs the suite and returns (report, all_passed).
pub fn run(seed: u64, full: bool) -> (String, bool) {
    let mut s = Suite::new();
    s.lines.push(format!(
        "selftest seed={seed} level={}",
        if full { "full" } else { "quick" }
    ));
    quick_suite(&mut s);
    if full {
        full_suite(&mut s, seed);
    }
    let total = s.lines.len() - 1;
    let ok = s.failures == 0;
    s.lines.push(format!(
        "result: {} ({}/{} items)",
        if ok { "pass" } else { "fail" },
        total - s.failures,
        total
    ));
    (s.lines.join("\n") + "\n", ok)
}

fn quick_suite(s: &mut Suite) {
    let sigma3 = Alphabet::from_chars("abc").expect("alphabet");

    // Cycle machine: FA slice and JFA slice.
    let m = cycle_machine();
    let fa_expected =
        FiniteLanguage::parse_words(&sigma3, &["@", "a,b,c", "a,b,c,a,b,c", "a,b,c,a,b,c,a,b,c"])
            .expect("literals");
    s.item("cycle-fa-slice", m.fa_language_upto(9) == fa_expected);
    let jfa = m.jfa_language_upto(6).expect("finite machine");
    let balanced: Vec<Word> = crate::shuffle::sigma_upto(&sigma3, 6)
        .into_iter()
        .filter(|w| {
            let p = w.parikh().0;
            p[0] == p[1] && p[1] == p[2]
        })
        .collect();
    let balanced = FiniteLanguage::from_words(sigma3.clone(), balanced).expect("same alphabet");
    s.item("cycle-jfa-slice", jfa == balanced);

    // Two-factor machine: separation facts.
    let m2 = two_factor_machine();
    let sigma4 = m2.alphabet().clone();
    let bacd = sigma4.parse_word("b,a,c,d").expect("word");
    s.item("two-factor-rejects-bacd", !m2.gjfa_accepts(&bacd).expect("alphabet"));
    let e = parse_expr("(a,b&c,d)&*", &sigma4).expect("expr");
    let acbd = sigma4.parse_word("a,c,b,d").expect("word");
    let slice = m2.gjfa_language_upto(4);
    s.item(
        "shuf-vs-gjfa-acbd",
        eval_upto(&e, 4).contains(&acbd) && !slice.contains(&acbd),
    );
    let ab_machine = Machine::parse(
        "alphabet: a b\nstates: s\nstart: s\nfinal: s\nrule: s a,b s\n",
    )
    .expect("fixed machine");
    let l = ab_machine.gjfa_language_upto(2);
    let sigma2 = ab_machine.alphabet().clone();
    s.item(
        "ab-iter-shuffle-ba",
        l.contains(&sigma2.parse_word("a,b").expect("word"))
            && !l.contains(&sigma2.parse_word("b,a").expect("word")),
    );

    // Complementation counterexample slices at n = 4.
    let with_a = complement_example(&["r"]).jfa_language_upto(4).expect("finite");
    let ok_a = crate::shuffle::sigma_upto(&sigma2, 4)
        .iter()
        .all(|w| with_a.contains(w) == (w.parikh().0[0] >= 1));
    s.item("complement-example-finals-r", ok_a);
    let with_b = complement_example(&["s", "t"]).jfa_language_upto(4).expect("finite");
    let ok_b = crate::shuffle::sigma_upto(&sigma2, 4)
        .iter()
        .all(|w| with_b.contains(w) == (w.is_empty() || w.parikh().0[1] >= 1));
    s.item("complement-example-finals-st", ok_b);

    // Commutativity decider fixed verdicts.
    let nc = thompson_machine(&parse_expr("a*.b*", &sigma2).expect("expr"));
    s.item(
        "commutative-a*b*-no",
        matches!(is_commutative_regular(&nc), Ok(Verdict::No { .. })),
    );
    let univ = thompson_machine(&parse_expr("(a+b)*", &sigma2).expect("expr"));
    s.item(
        "commutative-sigma*-yes",
        is_commutative_regular(&univ) == Ok(Verdict::Yes),
    );

    // Block-cover fixed machine vs. oracle.
    let ebc = ebc2_fixed_machine();
    let mut ok = true;
    for text in [
        "v: 01\nu: 0\nu: 1\n",
        "v: 10\nu: 0\nu: 1\n",
        "v: 010\nu: 00\nu: 1\n",
        "v: 0110\nu: 01\nu: 10\n",
    ] {
        let inst = Ebc2Instance::parse(text).expect("instance");
        let want = brute_ebc2(&inst, 8).expect("within cap").is_some();
        ok &= ebc.gjfa_accepts(&ebc2_to_word(&inst)).expect("alphabet") == want;
    }
    s.item("ebc2-fixed-machine", ok);

    // SAT gadgets on a satisfiable and an unsatisfiable formula.
    let sat = crate::reductions::CnfFormula::parse_dimacs("p cnf 1 1\n1 1 1 0\n").expect("dimacs");
    let unsat =
        crate::reductions::CnfFormula::parse_dimacs("p cnf 1 2\n1 1 1 0\n-1 -1 -1 0\n")
            .expect("dimacs");
    let mut ok = true;
    let gjfa = sat_fixed_gjfa();
    for (f, want) in [(&sat, true), (&unsat, false)] {
        let (m, w) = sat_to_jfa(f).expect("instance");
        ok &= m.jfa_accepts(&w).expect("alphabet") == want;
        let layout = SatGjfaLayout::from_formula(f).expect("instance");
        let w = sat_to_gjfa_word(f, &layout).expect("layout");
        ok &= gjfa.gjfa_accepts(&w).expect("alphabet") == want;
        ok &= brute_sat(f, 20).expect("within cap").is_some() == want;
    }
    s.item("sat-gadgets-fixed", ok);

    // Representation pipeline on the cycle example.
    let e = parse_expr("(a&b&c)&*", &sigma3).expect("expr");
    let sl = alpha_shuf_to_semilinear(&e).expect("alpha-shuf");
    let nf = semilinear_to_normalform(&sl, &sigma3).expect("within cap");
    let back = alpha_shuf_to_semilinear(&nf).expect("alpha-shuf");
    s.item(
        "representation-cycle-roundtrip",
        star_height(&nf) <= 1 && sl_bounded_equal(&sl, &back, &[4, 4, 4]).expect("dims"),
    );
}

fn full_suite(s: &mut Suite, seed: u64) {
    let sigma = Alphabet::from_chars("ab").expect("alphabet");
    let mut rng = gen::rng(seed);

    // Letterization property: shuffled evaluation equals the perm closure.
    let mut ok = true;
    for _ in 0..10 {
        let e = gen::random_regex(&mut rng, &sigma, 3);
        let hat = regex_to_alpha_shuf(&e).expect("regular input");
        ok &= eval_upto(&hat, 5) == perm_closure(&eval_upto(&e, 5));
    }
    s.item("random-letterization", ok);

    // Shuffle-algebra laws on random finite languages (bounded at n = 5).
    let mut ok = true;
    for _ in 0..10 {
        let l1 = gen::random_language(&mut rng, &sigma, 4, 3);
        let l2 = gen::random_language(&mut rng, &sigma, 4, 3);
        let l3 = gen::random_language(&mut rng, &sigma, 4, 3);
        let sh = |a: &FiniteLanguage, b: &FiniteLanguage| shuffle_langs(a, b).expect("alphabet");
        ok &= sh(&l1, &l2) == sh(&l2, &l1);
        ok &= sh(&sh(&l1, &l2), &l3) == sh(&l1, &sh(&l2, &l3));
        ok &= sh(&l1, &l2.union(&l3).expect("alphabet"))
            == sh(&l1, &l2).union(&sh(&l1, &l3)).expect("alphabet");
        ok &= iter_shuffle_upto(&l1.union(&l2).expect("alphabet"), 5)
            == shuffle_langs(&iter_shuffle_upto(&l1, 5), &iter_shuffle_upto(&l2, 5))
                .expect("alphabet")
                .truncate(5);
        // perm is a morphism: catenation ↦ shuffle, star ↦ iterated shuffle.
        ok &= perm_closure(&concat_langs(&l1, &l2).expect("alphabet"))
            == perm_closure(&shuffle_langs(&perm_closure(&l1), &perm_closure(&l2)).expect("alphabet"));
        ok &= perm_closure(&star_upto(&l1, 5)) == iter_shuffle_upto(&perm_closure(&l1), 5);
    }
    s.item("random-shuffle-laws", ok);

    // Representation round trip on random α-SHUF expressions.
    let mut ok = true;
    for _ in 0..10 {
        let e = gen::random_alpha_shuf(&mut rng, &sigma, 3);
        let Ok(sl) = alpha_shuf_to_semilinear(&e) else {
            ok = false;
            continue;
        };
        match semilinear_to_normalform(&sl, &sigma) {
            Ok(nf) => {
                let back = alpha_shuf_to_semilinear(&nf).expect("alpha-shuf output");
                ok &= star_height(&nf) <= 1
                    && sl_bounded_equal(&sl, &back, &[4, 4]).expect("dims");
            }
            Err(crate::error::Error::CapExceeded(_)) => {} // skip oversized star
            Err(_) => ok = false,
        }
    }
    s.item("random-representation-roundtrip", ok);

    // Exact commutativity decider vs. bounded perm-closure evidence.
    let mut ok = true;
    for _ in 0..10 {
        let m = gen::random_machine(&mut rng, &sigma, 3);
        let min_size = m.minimize().expect("finite machine").state_names().len();
        match is_commutative_regular(&m).expect("finite machine") {
            Verdict::Yes => {
                let bound = (2 * min_size).min(8);
                ok &= matches!(
                    is_perm_closed_bounded(&m.fa_language_upto(bound), bound),
                    Verdict::BoundedYes { .. }
                );
            }
            Verdict::No { witness: Some(w) } => {
                ok &= m.fa_accepts(&w).expect("alphabet");
                ok &= crate::shuffle::perm_word(&w)
                    .iter()
                    .any(|p| !m.fa_accepts(p).expect("alphabet"));
            }
            _ => ok = false,
        }
    }
    s.item("random-commutativity-agreement", ok);

    // SAT → JFA reduction on random formulas.
    let mut ok = true;
    for _ in 0..10 {
        let f = gen::random_formula(&mut rng, 4, 5);
        let (m, w) = sat_to_jfa(&f).expect("instance");
        ok &= m.jfa_accepts(&w).expect("alphabet")
            == brute_sat(&f, 20).expect("within cap").is_some();
        ok &= m.state_names().len() == 2 * f.num_vars + 1;
    }
    s.item("random-sat-jfa", ok);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_suite_passes() {
        let (report, ok) = run(0, false);
        assert!(ok, "quick selftest failed:\n{report}");
    }

    #[test]
    fn full_suite_passes_and_is_deterministic() {
        let (r1, ok1) = run(42, true);
        let (r2, ok2) = run(42, true);
        assert!(ok1 && ok2, "full selftest failed:\n{r1}");
        assert_eq!(r1, r2);
    }
}
