//! Acceptance gate: every criterion prints exactly one PASS/FAIL line, and
//! the test fails if any criterion fails. Run with `--nocapture` to see the
//! lines on success.

use jumpshuf::alphabet::{Alphabet, FiniteLanguage};
use jumpshuf::deciders::{is_commutative_regular, is_perm_closed_bounded, Verdict};
use jumpshuf::expr::{eval_upto, parse_expr, regex_to_alpha_shuf, star_height};
use jumpshuf::gen;
use jumpshuf::machine::{thompson_machine, BinaryHomomorphism, Machine};
use jumpshuf::reductions::{
    binary_wrap, brute_ebc2, brute_sat, build_noncommutativity_nfa, build_nonregularity_jfa,
    ebc2_fixed_machine, ebc2_to_word, sat_fixed_gjfa, sat_gjfa_alphabet, sat_to_gjfa_word,
    sat_to_jfa, CnfFormula, Ebc2Instance, Literal, SatGjfaLayout,
};
use jumpshuf::selftest::{complement_example, cycle_machine, two_factor_machine};
use jumpshuf::semilinear::{alpha_shuf_to_semilinear, semilinear_to_normalform, sl_bounded_equal};
use jumpshuf::shuffle::{
    concat_langs, iter_shuffle_upto, perm_closure, perm_word, shuffle_langs, sigma_upto, star_upto,
};

struct Gate {
    index: usize,
    failures: Vec<String>,
    last: std::time::Instant,
}

impl Gate {
    fn new() -> Gate {
        Gate {
            index: 0,
            failures: Vec::new(),
            last: std::time::Instant::now(),
        }
    }

    fn check(&mut self, name: &str, ok: bool) {
        self.index += 1;
        println!(
            "acceptance {:>2} {name}: {}",
            self.index,
            if ok { "PASS" } else { "FAIL" }
        );
        eprintln!("  [{:>6.1}s] {name}", self.last.elapsed().as_secs_f64());
        self.last = std::time::Instant::now();
        if !ok {
            self.failures.push(name.to_string());
        }
    }

    fn finish(self) {
        assert!(
            self.failures.is_empty(),
            "failed criteria: {}",
            self.failures.join(", ")
        );
    }
}

/// All multisets of size `k` over `0..n`, as non-decreasing index vectors.
fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, k, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, k, 0, &mut Vec::new(), &mut out);
    out
}

/// All clauses over `n` variables, up to literal order.
fn all_clauses(n: usize) -> Vec<[Literal; 3]> {
    let lits: Vec<Literal> = (1..=n)
        .flat_map(|v| {
            [
                Literal { var: v, positive: true },
                Literal { var: v, positive: false },
            ]
        })
        .collect();
    multisets(lits.len(), 3)
        .into_iter()
        .map(|ix| [lits[ix[0]], lits[ix[1]], lits[ix[2]]])
        .collect()
}

/// All formulas over `n` variables with 1..=max_m clauses, up to clause and
/// literal order.
fn all_formulas(n: usize, max_m: usize) -> Vec<CnfFormula> {
    let clauses = all_clauses(n);
    let mut out = Vec::new();
    for m in 1..=max_m {
        for ix in multisets(clauses.len(), m) {
            let cls = ix.iter().map(|&i| clauses[i]).collect();
            out.push(CnfFormula::new(n, cls).expect("vars in range"));
        }
    }
    out
}

#[test]
fn acceptance() {
    let mut gate = Gate::new();
    let sigma2 = Alphabet::from_chars("ab").unwrap();
    let sigma3 = Alphabet::from_chars("abc").unwrap();

    // 1. Example regression: cycle machine under FA and JFA semantics.
    {
        let m = cycle_machine();
        let fa_expected = FiniteLanguage::parse_words(
            &sigma3,
            &["@", "a,b,c", "a,b,c,a,b,c", "a,b,c,a,b,c,a,b,c"],
        )
        .unwrap();
        let jfa_expected = FiniteLanguage::from_words(
            sigma3.clone(),
            sigma_upto(&sigma3, 6).into_iter().filter(|w| {
                let p = w.parikh().0;
                p[0] == p[1] && p[1] == p[2]
            }),
        )
        .unwrap();
        gate.check(
            "example-cycle-machine-slices",
            m.fa_language_upto(9) == fa_expected && m.jfa_language_upto(6).unwrap() == jfa_expected,
        );
    }

    // 2. Separations: GJFA vs. SHUF vs. iterated shuffle of a two-letter word.
    {
        let m = two_factor_machine();
        let sigma4 = m.alphabet().clone();
        let bacd = sigma4.parse_word("b,a,c,d").unwrap();
        let acbd = sigma4.parse_word("a,c,b,d").unwrap();
        let shuf = eval_upto(&parse_expr("(a,b&c,d)&*", &sigma4).unwrap(), 4);
        let gjfa_slice = m.gjfa_language_upto(4);
        let ab_loop = Machine::parse(
            "alphabet: a b\nstates: s\nstart: s\nfinal: s\nrule: s a,b s\n",
        )
        .unwrap();
        let l2 = ab_loop.gjfa_language_upto(2);
        gate.check(
            "example-separation-facts",
            !m.gjfa_accepts(&bacd).unwrap()
                && shuf.contains(&acbd)
                && !gjfa_slice.contains(&acbd)
                && l2.contains(&sigma2.parse_word("a,b").unwrap())
                && !l2.contains(&sigma2.parse_word("b,a").unwrap()),
        );
    }

    // 3. Complementation counterexample: the two final-state choices.
    {
        let words = sigma_upto(&sigma2, 4);
        let with_a = complement_example(&["r"]).jfa_language_upto(4).unwrap();
        let with_b = complement_example(&["s", "t"]).jfa_language_upto(4).unwrap();
        let ok = words.iter().all(|w| {
            with_a.contains(w) == (w.parikh().0[0] >= 1)
                && with_b.contains(w) == (w.is_empty() || w.parikh().0[1] >= 1)
        });
        gate.check("complementation-counterexample", ok);
    }

    // 4. Letterization: shuffled evaluation equals the permutation closure.
    {
        let mut rng = gen::rng(0x4a5);
        let ok = (0..100).all(|_| {
            let e = gen::random_regex(&mut rng, &sigma3, 4);
            let hat = regex_to_alpha_shuf(&e).expect("regular input");
            eval_upto(&hat, 6) == perm_closure(&eval_upto(&e, 6))
        });
        gate.check("letterization-property", ok);
    }

    // 5. Shuffle-algebra laws and the perm morphism, bounded at n = 6.
    {
        let mut rng = gen::rng(0x31);
        let n = 6usize;
        let mut ok = true;
        for _ in 0..100 {
            let l1 = gen::random_language(&mut rng, &sigma2, 4, 3);
            let l2 = gen::random_language(&mut rng, &sigma2, 4, 3);
            let l3 = gen::random_language(&mut rng, &sigma2, 4, 3);
            let sh = |a: &FiniteLanguage, b: &FiniteLanguage| shuffle_langs(a, b).unwrap();
            let st = |a: &FiniteLanguage| iter_shuffle_upto(a, n);
            let un = |a: &FiniteLanguage, b: &FiniteLanguage| a.union(b).unwrap();
            // Laws: commutativity, associativity, distributivity.
            ok &= sh(&l1, &l2) == sh(&l2, &l1);
            ok &= sh(&sh(&l1, &l2), &l3) == sh(&l1, &sh(&l2, &l3));
            ok &= sh(&l1, &un(&l2, &l3)) == un(&sh(&l1, &l2), &sh(&l1, &l3));
            // Iterated-shuffle laws.
            ok &= st(&un(&l1, &l2)) == sh(&st(&l1), &st(&l2)).truncate(n);
            ok &= st(&st(&l1)) == st(&l1);
            let eps = FiniteLanguage::epsilon(sigma2.clone());
            ok &= st(&sh(&l1, &st(&l2)).truncate(n))
                == un(&sh(&l1, &st(&un(&l1, &l2))).truncate(n), &eps);
            // perm is a semiring morphism taking · to ⧢ and * to iterated ⧢.
            let pc = perm_closure;
            ok &= pc(&un(&l1, &l2)) == un(&pc(&l1), &pc(&l2));
            ok &= pc(&concat_langs(&l1, &l2).unwrap()) == pc(&sh(&pc(&l1), &pc(&l2)));
            ok &= pc(&star_upto(&l1, n)) == iter_shuffle_upto(&pc(&l1), n);
        }
        gate.check("shuffle-algebra-laws", ok);
    }

    // 6. Representation round trip: α-SHUF → semilinear → normal form.
    {
        let mut rng = gen::rng(0x6e);
        let mut done = 0;
        let mut ok = true;
        let mut attempts = 0;
        while done < 50 && attempts < 500 {
            attempts += 1;
            let e = gen::random_alpha_shuf(&mut rng, &sigma2, 4);
            let sl = match alpha_shuf_to_semilinear(&e) {
                Ok(sl) => sl,
                Err(jumpshuf::Error::CapExceeded(_)) => continue,
                Err(_) => {
                    ok = false;
                    break;
                }
            };
            match semilinear_to_normalform(&sl, &sigma2) {
                Ok(nf) => {
                    let back = alpha_shuf_to_semilinear(&nf).expect("normal form is alpha-shuf");
                    ok &= star_height(&nf) <= 1 && sl_bounded_equal(&sl, &back, &[6, 6]).unwrap();
                    done += 1;
                }
                Err(jumpshuf::Error::CapExceeded(_)) => continue,
                Err(_) => {
                    ok = false;
                    break;
                }
            }
        }
        gate.check("representation-round-trip", ok && done == 50);
    }

    // 7. Commutativity decider vs. bounded perm-closure evidence.
    {
        let mut rng = gen::rng(0x7c);
        let mut ok = true;
        for _ in 0..100 {
            let m = gen::random_machine(&mut rng, &sigma3, 4);
            let min_size = m.minimize().unwrap().state_names().len();
            match is_commutative_regular(&m).unwrap() {
                Verdict::Yes => {
                    let bound = (2 * min_size).min(8);
                    ok &= matches!(
                        is_perm_closed_bounded(&m.fa_language_upto(bound), bound),
                        Verdict::BoundedYes { .. }
                    );
                }
                Verdict::No { witness: Some(w) } => {
                    ok &= w.len() <= 2 * min_size;
                    ok &= m.fa_accepts(&w).unwrap();
                    ok &= perm_word(&w).iter().any(|p| !m.fa_accepts(p).unwrap());
                }
                _ => ok = false,
            }
        }
        // Fixed cases.
        let nc = thompson_machine(&parse_expr("a*.b*", &sigma2).unwrap());
        ok &= matches!(is_commutative_regular(&nc).unwrap(), Verdict::No { .. });
        let univ = thompson_machine(&parse_expr("(a+b)*", &sigma2).unwrap());
        ok &= is_commutative_regular(&univ).unwrap() == Verdict::Yes;
        let unary = thompson_machine(
            &parse_expr("(a.a.a)*+a", &Alphabet::from_chars("a").unwrap()).unwrap(),
        );
        ok &= is_commutative_regular(&unary).unwrap() == Verdict::Yes;
        gate.check("commutativity-decider", ok);
    }

    // 8. SAT → JFA word problem: exhaustive n ≤ 3, m ≤ 3 (up to clause and
    //    literal order) plus 50 random formulas with n ≤ 6, m ≤ 8.
    {
        let mut ok = true;
        for n in 1..=3 {
            for phi in all_formulas(n, 3) {
                let (m, w) = sat_to_jfa(&phi).unwrap();
                ok &= m.state_names().len() == 2 * phi.num_vars + 1;
                ok &= m.jfa_accepts(&w).unwrap() == brute_sat(&phi, 20).unwrap().is_some();
            }
        }
        let mut rng = gen::rng(0x8f);
        for _ in 0..50 {
            let phi = gen::random_formula(&mut rng, 6, 8);
            let (m, w) = sat_to_jfa(&phi).unwrap();
            ok &= m.state_names().len() == 2 * phi.num_vars + 1;
            ok &= m.jfa_accepts(&w).unwrap() == brute_sat(&phi, 20).unwrap().is_some();
        }
        gate.check("sat-to-jfa-oracle", ok);
    }

    // 9. Block cover: exhaustive k ≤ 3, |uᵢ| ≤ 2, all matching-length
    //    targets plus one mismatched target, plain and binary-encoded.
    {
        let machine = ebc2_fixed_machine();
        let blocks: Vec<Vec<u8>> = vec![
            vec![],
            vec![0],
            vec![1],
            vec![0, 0],
            vec![0, 1],
            vec![1, 0],
            vec![1, 1],
        ];
        let mut tuples: Vec<Vec<Vec<u8>>> = Vec::new();
        let mut frontier: Vec<Vec<Vec<u8>>> = vec![vec![]];
        for _ in 0..3 {
            frontier = frontier
                .iter()
                .flat_map(|t| {
                    blocks.iter().map(move |b| {
                        let mut t = t.clone();
                        t.push(b.clone());
                        t
                    })
                })
                .collect();
            tuples.extend(frontier.iter().cloned());
        }
        let mut ok = true;
        for tuple in &tuples {
            let total: usize = tuple.iter().map(Vec::len).sum();
            let mut targets: Vec<Vec<u8>> = (0..(1u32 << total))
                .map(|bits| (0..total).map(|i| ((bits >> i) & 1) as u8).collect())
                .collect();
            targets.push(vec![0; total + 1]); // length mismatch ⇒ never coverable
            for target in targets {
                let inst = Ebc2Instance::new(tuple.clone(), target).unwrap();
                let want = brute_ebc2(&inst, 8).unwrap().is_some();
                let w = ebc2_to_word(&inst);
                ok &= machine.gjfa_accepts(&w).unwrap() == want;
                let (mb, wb, h) = binary_wrap(&machine, &w).unwrap();
                ok &= wb.len() <= h.max_stretch() * w.len().max(1);
                ok &= mb.gjfa_accepts(&wb).unwrap() == want;
            }
        }
        gate.check("block-cover-oracle", ok);
    }

    // 10. SAT → fixed GJFA: exhaustive over ordered formulas with n ≤ 2,
    //     m ≤ 2, plus 20 sampled formulas with n, m ≤ 4.
    {
        let machine = sat_fixed_gjfa();
        let h = BinaryHomomorphism::new(&sat_gjfa_alphabet());
        let mut ok = h.max_stretch() <= 13;
        let verify = |phi: &CnfFormula, ok: &mut bool| {
            let want = brute_sat(phi, 20).unwrap().is_some();
            let layout = SatGjfaLayout::from_formula(phi).unwrap();
            let w = sat_to_gjfa_word(phi, &layout).unwrap();
            *ok &= machine.gjfa_accepts(&w).unwrap() == want;
            *ok &= h.apply(&w).unwrap().len() <= 13 * w.len();
        };
        for n in 1..=2usize {
            let lits: Vec<Literal> = (1..=n)
                .flat_map(|v| {
                    [
                        Literal { var: v, positive: true },
                        Literal { var: v, positive: false },
                    ]
                })
                .collect();
            let mut clauses = Vec::new();
            for a in &lits {
                for b in &lits {
                    for c in &lits {
                        clauses.push([*a, *b, *c]);
                    }
                }
            }
            let mut formulas: Vec<Vec<[Literal; 3]>> =
                clauses.iter().map(|c| vec![*c]).collect();
            for c1 in &clauses {
                for c2 in &clauses {
                    formulas.push(vec![*c1, *c2]);
                }
            }
            for cls in formulas {
                verify(&CnfFormula::new(n, cls).unwrap(), &mut ok);
            }
        }
        let mut rng = gen::rng(0xa0);
        let mut sampled = 0;
        while sampled < 20 {
            let phi = gen::random_formula(&mut rng, 4, 4);
            // Large unsatisfiable instances force the search to exhaust the
            // whole configuration space; keep those to the exhaustive sizes.
            if brute_sat(&phi, 20).unwrap().is_none() && phi.num_vars.min(phi.clauses.len()) >= 3
            {
                continue;
            }
            verify(&phi, &mut ok);
            sampled += 1;
        }
        gate.check("sat-to-fixed-gjfa-oracle", ok);
    }

    // 11. Unary hardness gadgets on all formulas with ≤ 2 variables and
    //     ≤ 2 clauses (up to clause and literal order).
    {
        let mut ok = true;
        for n in 1..=2 {
            for phi in all_formulas(n, 2) {
                let sat = brute_sat(&phi, 20).unwrap().is_some();
                let nc = build_noncommutativity_nfa(&phi, 6).unwrap();
                ok &= is_commutative_regular(&nc).unwrap().is_positive() == !sat;
                let nr = build_nonregularity_jfa(&phi, 6).unwrap();
                let slice = nr.jfa_language_upto(4).unwrap();
                let full = sigma_upto(&sigma2, 4).len();
                ok &= (slice.len() == full) == !sat;
            }
        }
        gate.check("unary-hardness-gadgets", ok);
    }

    // 12. Selftest determinism: byte-identical full reports for one seed.
    {
        let (r1, ok1) = jumpshuf::selftest::run(12345, true);
        let (r2, ok2) = jumpshuf::selftest::run(12345, true);
        gate.check("selftest-determinism", ok1 && ok2 && r1 == r2);
    }

    gate.finish();
}
