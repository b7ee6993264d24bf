//! Hardness-gadget constructors and the brute-force oracles they are
//! validated against: SAT → JFA word problem, the unary regular expression
//! E_φ and the non-regularity / non-commutativity machines built from it,
//! the fixed GJFA for Binary Exact Block Cover, and the fixed GJFA whose
//! word problem encodes 3SAT.
//!
//! The two fixed GJFAs come from figures that are only described in prose;
//! the transition sets here are reconstructions, and their correctness
//! criterion is the oracle property: machine acceptance must agree with
//! `brute_sat`/`brute_ebc2` on every instance the tests enumerate.

use crate::alphabet::{Alphabet, Word};
use crate::error::{Error, Result};
use crate::expr::{regex_to_alpha_shuf, Expr};
use crate::machine::{binary_encode_gjfa, thompson_machine, BinaryHomomorphism, Machine, MachineBuilder};

/// Default variable cap for the exhaustive SAT oracle.
pub const DEFAULT_SAT_CAP: usize = 20;
/// Default block-count cap for the exhaustive block-cover oracle.
pub const DEFAULT_EBC2_CAP: usize = 8;
/// Default variable cap for the unary expression (primes grow fast).
pub const DEFAULT_SM_CAP: usize = 6;

// ---------------------------------------------------------------------------
// 3-CNF formulas
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Literal {
    /// 1-based variable index.
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn holds(&self, assignment: &[bool]) -> bool {
        assignment[self.var - 1] == self.positive
    }
}

/// A 3-CNF formula: every clause has exactly three literals.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CnfFormula {
    pub num_vars: usize,
    pub clauses: Vec<[Literal; 3]>,
}

impl CnfFormula {
    pub fn new(num_vars: usize, clauses: Vec<[Literal; 3]>) -> Result<Self> {
        for clause in &clauses {
            for lit in clause {
                if lit.var == 0 || lit.var > num_vars {
                    return Err(Error::InvalidInstance(format!(
                        "variable x{} out of range 1..={num_vars}",
                        lit.var
                    )));
                }
            }
        }
        Ok(CnfFormula { num_vars, clauses })
    }

    pub fn satisfied_by(&self, assignment: &[bool]) -> bool {
        self.clauses
            .iter()
            .all(|c| c.iter().any(|l| l.holds(assignment)))
    }

    /// Parses DIMACS-style text: `c` comment lines, a `p cnf <vars> <clauses>`
    /// header, then clause lines of exactly three signed integers ending in 0.
    pub fn parse_dimacs(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize)> = None;
        let mut clauses = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            if let Some(rest) = line.strip_prefix('p') {
                let parts: Vec<&str> = rest.split_whitespace().collect();
                let [kind, vars, count] = parts[..] else {
                    return Err(Error::syntax(lineno + 1, "expected `p cnf <vars> <clauses>`"));
                };
                if kind != "cnf" {
                    return Err(Error::syntax(lineno + 1, "expected format `cnf`"));
                }
                let vars = vars
                    .parse()
                    .map_err(|_| Error::syntax(lineno + 1, "bad variable count"))?;
                let count = count
                    .parse()
                    .map_err(|_| Error::syntax(lineno + 1, "bad clause count"))?;
                header = Some((vars, count));
                continue;
            }
            let nums = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<i64>()
                        .map_err(|_| Error::syntax(lineno + 1, format!("bad literal `{t}`")))
                })
                .collect::<Result<Vec<i64>>>()?;
            let [a, b, c, 0] = nums[..] else {
                return Err(Error::syntax(
                    lineno + 1,
                    "clause lines must hold exactly three literals and a terminating 0",
                ));
            };
            let lit = |v: i64| Literal {
                var: v.unsigned_abs() as usize,
                positive: v > 0,
            };
            clauses.push([lit(a), lit(b), lit(c)]);
        }
        let (num_vars, num_clauses) =
            header.ok_or_else(|| Error::syntax(0, "missing `p cnf` header"))?;
        if clauses.len() != num_clauses {
            return Err(Error::InvalidInstance(format!(
                "header declares {num_clauses} clauses, found {}",
                clauses.len()
            )));
        }
        CnfFormula::new(num_vars, clauses)
    }

    pub fn print_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        for clause in &self.clauses {
            for lit in clause {
                let v = lit.var as i64;
                out.push_str(&format!("{} ", if lit.positive { v } else { -v }));
            }
            out.push_str("0\n");
        }
        out
    }
}

/// Exhaustive satisfiability check over all 2ⁿ assignments.
pub fn brute_sat(phi: &CnfFormula, cap: usize) -> Result<Option<Vec<bool>>> {
    if phi.num_vars > cap {
        return Err(Error::CapExceeded(format!(
            "brute_sat over {} variables (cap {cap})",
            phi.num_vars
        )));
    }
    for bits in 0u64..(1u64 << phi.num_vars) {
        let assignment: Vec<bool> = (0..phi.num_vars).map(|i| bits & (1 << i) != 0).collect();
        if phi.satisfied_by(&assignment) {
            return Ok(Some(assignment));
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------------------
// SAT → JFA word problem
// ---------------------------------------------------------------------------

/// The JFA for φ and the input word c₁…c_m: a chain q₀ → q₁^X → … → q_n^X of
/// ε-alternatives picks a truth value per variable, and the loop on qᵢ^X
/// consumes the clause letters satisfied by that choice. The word is
/// JFA-accepted iff φ is satisfiable; |Q| = 2n+1.
pub fn sat_to_jfa(phi: &CnfFormula) -> Result<(Machine, Word)> {
    let n = phi.num_vars;
    let m = phi.clauses.len();
    if n == 0 || m == 0 {
        return Err(Error::InvalidInstance(
            "sat_to_jfa needs at least one variable and one clause".into(),
        ));
    }
    let alphabet = Alphabet::new((1..=m).map(|j| format!("c{j}")))?;
    let mut b = MachineBuilder::new(alphabet.clone());
    b.start("q0");
    for i in 1..=n {
        let prev: Vec<String> = if i == 1 {
            vec!["q0".into()]
        } else {
            vec![format!("q{}T", i - 1), format!("q{}F", i - 1)]
        };
        for p in &prev {
            b.rule(p, "@", &format!("q{i}T"))?;
            b.rule(p, "@", &format!("q{i}F"))?;
        }
        for (j, clause) in phi.clauses.iter().enumerate() {
            for lit in clause {
                if lit.var == i {
                    let state = if lit.positive {
                        format!("q{i}T")
                    } else {
                        format!("q{i}F")
                    };
                    b.rule(&state, &format!("c{}", j + 1), &state)?;
                }
            }
        }
    }
    b.final_state(&format!("q{n}T"));
    b.final_state(&format!("q{n}F"));
    let machine = b.build()?;
    let word = alphabet.parse_word(
        &(1..=m).map(|j| format!("c{j}")).collect::<Vec<_>>().join(","),
    )?;
    Ok((machine, word))
}

// ---------------------------------------------------------------------------
// The unary expression E_φ and the machines built from it
// ---------------------------------------------------------------------------

/// The first `n` primes.
pub fn first_primes(n: usize) -> Vec<u64> {
    let mut primes = Vec::with_capacity(n);
    let mut cand = 2u64;
    while primes.len() < n {
        if primes.iter().all(|&p| !cand.is_multiple_of(p)) {
            primes.push(cand);
        }
        cand += 1;
    }
    primes
}

/// A unary regular expression E_φ over {a} with L(E_φ) = {a}* iff φ is
/// unsatisfiable, and {a}*∖L(E_φ) infinite iff φ is satisfiable.
///
/// Realization: a length ℓ encodes the assignment xᵢ := (ℓ mod pᵢ = 1) over
/// the first n primes, valid only when every residue is 0 or 1. E_φ is the
/// union of the invalid-residue arithmetic progressions and, per clause, the
/// progressions of valid residues (modulo the product of the clause's
/// primes) that falsify it. L(E_φ) is ultimately periodic with period
/// dividing ∏pᵢ, so universality and complement-infinitude are both exactly
/// checkable on lengths 0..2∏pᵢ.
pub fn stockmeyer_meyer_expr(phi: &CnfFormula, cap: usize) -> Result<Expr> {
    let alphabet = Alphabet::new(["a"])?;
    stockmeyer_meyer_expr_over(phi, &alphabet, 0, cap)
}

/// Same expression over a larger alphabet (the letter `a` given by index),
/// so it can be embedded into two-letter constructions.
pub fn stockmeyer_meyer_expr_over(
    phi: &CnfFormula,
    alphabet: &Alphabet,
    a_sym: u16,
    cap: usize,
) -> Result<Expr> {
    if phi.num_vars > cap {
        return Err(Error::CapExceeded(format!(
            "stockmeyer_meyer_expr over {} variables (cap {cap})",
            phi.num_vars
        )));
    }
    let primes = first_primes(phi.num_vars);
    let a_run = |len: u64| -> Expr {
        Expr::atom(&Word::from_indices(
            alphabet.clone(),
            vec![a_sym; len as usize],
        ))
        .expect("non-empty run")
    };
    // a^r (a^p)*
    let progression = |r: u64, p: u64| -> Expr {
        let star = a_run(p).star();
        if r == 0 {
            star
        } else {
            a_run(r).concat(star).expect("same alphabet")
        }
    };
    let mut terms = Vec::new();
    // Invalid residues: ℓ mod pᵢ ∉ {0,1}.
    for &p in &primes {
        for r in 2..p {
            terms.push(progression(r, p));
        }
    }
    // Per clause: valid residues (on the clause's primes) that falsify it.
    for clause in &phi.clauses {
        let mut vars: Vec<usize> = clause.iter().map(|l| l.var).collect();
        vars.sort_unstable();
        vars.dedup();
        let modulus: u64 = vars.iter().map(|&v| primes[v - 1]).product();
        for r in 0..modulus {
            let valid = vars.iter().all(|&v| r % primes[v - 1] <= 1);
            if !valid {
                continue;
            }
            let falsified = clause
                .iter()
                .all(|lit| (r % primes[lit.var - 1] == 1) != lit.positive);
            if falsified {
                terms.push(progression(r, modulus));
            }
        }
    }
    Expr::union_all(alphabet.clone(), terms)
}

/// The period window for exact checks on E_φ: lengths 0..2∏pᵢ suffice.
pub fn stockmeyer_meyer_window(phi: &CnfFormula) -> u64 {
    2 * first_primes(phi.num_vars).iter().product::<u64>()
}

/// The machine M_φ with L_JFA(M_φ) = (b^{⧢,*} ⧢ perm(L(E_φ))) ∪ (a⧢b)^{⧢,*}
/// over {a,b}: JFA-universal iff φ is unsatisfiable.
pub fn build_nonregularity_jfa(phi: &CnfFormula, cap: usize) -> Result<Machine> {
    let sigma = Alphabet::new(["a", "b"])?;
    let e_phi = stockmeyer_meyer_expr_over(phi, &sigma, 0, cap)?;
    let e_hat = regex_to_alpha_shuf(&e_phi)?;
    let b = || Expr::letter(sigma.clone(), 1);
    let a = || Expr::letter(sigma.clone(), 0);
    let left = b().iter_shuffle().shuffle(e_hat)?;
    let right = a().shuffle(b())?.iter_shuffle();
    Ok(thompson_machine(&left.union(right)?))
}

/// The NFA for L′_φ = ({b}* ⧢ L(E_φ)) ∪ {a}*{b} over {a,b}: its FA language
/// is commutative iff φ is unsatisfiable.
pub fn build_noncommutativity_nfa(phi: &CnfFormula, cap: usize) -> Result<Machine> {
    let sigma = Alphabet::new(["a", "b"])?;
    let e_phi = stockmeyer_meyer_expr_over(phi, &sigma, 0, cap)?;
    let b_star = thompson_machine(&Expr::letter(sigma.clone(), 1).star());
    let e_machine = thompson_machine(&e_phi);
    let left = b_star.shuffle_product(&e_machine)?;
    let right = thompson_machine(
        &Expr::letter(sigma.clone(), 0)
            .star()
            .concat(Expr::letter(sigma.clone(), 1))?,
    );
    Ok(machine_union(&left, &right))
}

/// Disjoint union of two machines behind a fresh ε-branching start state.
fn machine_union(m1: &Machine, m2: &Machine) -> Machine {
    assert_eq!(m1.alphabet(), m2.alphabet(), "same alphabet expected");
    let mut b = MachineBuilder::new(m1.alphabet().clone());
    b.start("u");
    for (prefix, m) in [("l", m1), ("r", m2)] {
        let name = |i: usize| format!("{prefix}{}", m.state_names()[i]);
        b.rule("u", "@", &name(m.start_state())).expect("epsilon");
        for r in m.rules() {
            let label = Word::from_indices(m.alphabet().clone(), r.label.clone());
            b.rule_word(&name(r.from), &label, &name(r.to))
                .expect("same alphabet");
        }
        for &f in m.final_states() {
            b.final_state(&name(f));
        }
    }
    b.build().expect("start set")
}

// ---------------------------------------------------------------------------
// Binary Exact Block Cover and its fixed GJFA
// ---------------------------------------------------------------------------

/// Blocks u₁…u_k and a target v over {0,1}: is v some permutation of the
/// blocks concatenated?
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Ebc2Instance {
    pub blocks: Vec<Vec<u8>>,
    pub target: Vec<u8>,
}

impl Ebc2Instance {
    pub fn new(blocks: Vec<Vec<u8>>, target: Vec<u8>) -> Result<Self> {
        for bit in blocks.iter().flatten().chain(&target) {
            if *bit > 1 {
                return Err(Error::InvalidInstance("blocks must be over {0,1}".into()));
            }
        }
        Ok(Ebc2Instance { blocks, target })
    }

    /// Parses the line format: one `v: <bits>` line, then one `u: <bits>`
    /// line per block (`<bits>` may be empty for ε).
    pub fn parse(text: &str) -> Result<Self> {
        let mut target: Option<Vec<u8>> = None;
        let mut blocks = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = crate::alphabet::strip_comment(raw).trim();
            if line.is_empty() {
                continue;
            }
            let parse_bits = |s: &str| -> Result<Vec<u8>> {
                s.trim()
                    .chars()
                    .map(|c| match c {
                        '0' => Ok(0),
                        '1' => Ok(1),
                        other => Err(Error::syntax(lineno + 1, format!("bad bit `{other}`"))),
                    })
                    .collect()
            };
            if let Some(rest) = line.strip_prefix("v:") {
                if target.is_some() {
                    return Err(Error::syntax(lineno + 1, "duplicate `v:` line"));
                }
                target = Some(parse_bits(rest)?);
            } else if let Some(rest) = line.strip_prefix("u:") {
                blocks.push(parse_bits(rest)?);
            } else {
                return Err(Error::syntax(lineno + 1, "expected `v:` or `u:`"));
            }
        }
        let target = target.ok_or_else(|| Error::syntax(0, "missing `v:` line"))?;
        Ebc2Instance::new(blocks, target)
    }

    pub fn print(&self) -> String {
        let bits = |v: &[u8]| v.iter().map(|b| (b + b'0') as char).collect::<String>();
        let mut out = format!("v: {}\n", bits(&self.target));
        for u in &self.blocks {
            out.push_str(&format!("u: {}\n", bits(u)));
        }
        out
    }
}

/// Exhaustive block-cover search over permutations with prefix pruning.
pub fn brute_ebc2(inst: &Ebc2Instance, cap: usize) -> Result<Option<Vec<usize>>> {
    let k = inst.blocks.len();
    if k > cap {
        return Err(Error::CapExceeded(format!(
            "brute_ebc2 over {k} blocks (cap {cap})"
        )));
    }
    if inst.blocks.iter().map(Vec::len).sum::<usize>() != inst.target.len() {
        return Ok(None);
    }
    fn search(
        inst: &Ebc2Instance,
        used: &mut Vec<bool>,
        pos: usize,
        order: &mut Vec<usize>,
    ) -> bool {
        if order.len() == inst.blocks.len() {
            return pos == inst.target.len();
        }
        for i in 0..inst.blocks.len() {
            if used[i] || !inst.target[pos..].starts_with(&inst.blocks[i]) {
                continue;
            }
            used[i] = true;
            order.push(i);
            if search(inst, used, pos + inst.blocks[i].len(), order) {
                return true;
            }
            order.pop();
            used[i] = false;
        }
        false
    }
    let mut used = vec![false; k];
    let mut order = Vec::with_capacity(k);
    if search(inst, &mut used, 0, &mut order) {
        Ok(Some(order))
    } else {
        Ok(None)
    }
}

/// Alphabet of the fixed block-cover GJFA: plain and barred bits, block
/// delimiters c/c̄, and the counter symbol ⋆ (`st`).
pub fn ebc2_alphabet() -> Alphabet {
    Alphabet::new(["0", "1", "0b", "1b", "c", "cb", "st"]).expect("fixed alphabet")
}

/// The fixed 4-state GJFA deciding block-cover instances encoded by
/// `ebc2_to_word`: qC opens a block (⋆c), q0/q1 match barred block bits
/// against plain target bits one ⋆-paired factor at a time, and ⋆c̄ closes.
pub fn ebc2_fixed_machine() -> Machine {
    let mut b = MachineBuilder::new(ebc2_alphabet());
    b.start("qC");
    b.final_state("qC");
    b.rule("qC", "st,c", "qD").expect("fixed rules");
    b.rule("qD", "st,0b", "q0").expect("fixed rules");
    b.rule("q0", "st,0", "qD").expect("fixed rules");
    b.rule("qD", "st,1b", "q1").expect("fixed rules");
    b.rule("q1", "st,1", "qD").expect("fixed rules");
    b.rule("qD", "st,cb", "qC").expect("fixed rules");
    b.build().expect("start set")
}

/// w = ⋆^{|v|} v t₁…t_k with tᵢ = ⋆^{|uᵢ|+2} c ūᵢ c̄.
pub fn ebc2_to_word(inst: &Ebc2Instance) -> Word {
    let sigma = ebc2_alphabet();
    let sym = |t: &str| sigma.index_of(t).expect("fixed alphabet") as u16;
    let (zero, one, zerob, oneb) = (sym("0"), sym("1"), sym("0b"), sym("1b"));
    let (c, cb, st) = (sym("c"), sym("cb"), sym("st"));
    let mut w = vec![st; inst.target.len()];
    w.extend(inst.target.iter().map(|&bit| if bit == 0 { zero } else { one }));
    for u in &inst.blocks {
        w.extend(std::iter::repeat_n(st, u.len() + 2));
        w.push(c);
        w.extend(u.iter().map(|&bit| if bit == 0 { zerob } else { oneb }));
        w.push(cb);
    }
    Word::from_indices(sigma, w)
}

// ---------------------------------------------------------------------------
// 3SAT and its fixed GJFA
// ---------------------------------------------------------------------------

/// Alphabet of the fixed 3SAT GJFA (11 tokens): plain/barred bits, clause
/// polarity markers c_T/c_F, the block closer c̄, plain/barred counters
/// ⋆ (`st`)/⋆̄ (`stb`), and plain/barred separators # (`hash`)/#̄ (`hashb`).
pub fn sat_gjfa_alphabet() -> Alphabet {
    Alphabet::new([
        "0", "1", "0b", "1b", "cT", "cF", "cb", "st", "hash", "stb", "hashb",
    ])
    .expect("fixed alphabet")
}

/// Deterministic word layout for a formula: per-variable occurrence counts,
/// the code length L = ⌈log₂ n⌉, and distinct codes (binary of i−1, padded).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SatGjfaLayout {
    pub num_vars: usize,
    pub num_clauses: usize,
    pub occurrences: Vec<usize>,
    pub code_len: usize,
    pub codes: Vec<Vec<u8>>,
}

impl SatGjfaLayout {
    pub fn from_formula(phi: &CnfFormula) -> Result<Self> {
        let n = phi.num_vars;
        if n == 0 {
            return Err(Error::InvalidInstance("layout needs at least one variable".into()));
        }
        let mut occurrences = vec![0usize; n];
        for clause in &phi.clauses {
            for lit in clause {
                occurrences[lit.var - 1] += 1;
            }
        }
        let code_len = (n as f64).log2().ceil() as usize;
        let codes = (0..n)
            .map(|i| {
                (0..code_len)
                    .rev()
                    .map(|b| ((i >> b) & 1) as u8)
                    .collect()
            })
            .collect();
        Ok(SatGjfaLayout {
            num_vars: n,
            num_clauses: phi.clauses.len(),
            occurrences,
            code_len,
            codes,
        })
    }
}

/// The fixed 13-state GJFA deciding satisfiability of formulas encoded by
/// `sat_to_gjfa_word`.
///
/// First phase (qA…qD): per variable segment of w_aux, pick a polarity X by
/// consuming ⋆#, then repeatedly delete a whole ⋆̄-group + literal block
/// c_X ūᵢ c̄ from w_φ while matching its barred code against one plain code
/// copy from w_aux (so only blocks of literals made true by X, with the
/// right code, are deletable); leftover code copies are dumped at qD.
///
/// Second phase (qE,qF,qG): the surviving plain ⋆-block forces a strict
/// left-to-right scan of what remains of #̄t₁…#̄t_m via two-token ⋆z labels;
/// the qE→qF→qG→qE cycle accepts exactly two surviving c_T/c_F per
/// #̄-segment, i.e. exactly one literal per clause was deleted as true. The
/// ⋆⋆ loop absorbs the two ⋆'s freed by each first-phase block deletion,
/// which makes the ⋆-budget exact.
pub fn sat_fixed_gjfa() -> Machine {
    let mut b = MachineBuilder::new(sat_gjfa_alphabet());
    b.start("qA");
    b.final_state("qE");
    let r = |b: &mut MachineBuilder, from: &str, label: &str, to: &str| {
        b.rule(from, label, to).expect("fixed rules");
    };
    // First phase.
    for x in ["T", "F"] {
        let (qb, qc, q0, q1) = (
            format!("qB{x}"),
            format!("qC{x}"),
            format!("q0{x}"),
            format!("q1{x}"),
        );
        r(&mut b, "qA", "st,hash", &qb);
        r(&mut b, &qb, &format!("stb,c{x}"), &qc);
        r(&mut b, &qc, "stb,0b", &q0);
        r(&mut b, &q0, "st,0", &qc);
        r(&mut b, &qc, "stb,1b", &q1);
        r(&mut b, &q1, "st,1", &qc);
        r(&mut b, &qc, "stb,cb", &qb);
        r(&mut b, &qb, "@", "qD");
    }
    r(&mut b, "qD", "st,0", "qD");
    r(&mut b, "qD", "st,1", "qD");
    r(&mut b, "qD", "@", "qA");
    r(&mut b, "qD", "@", "qE");
    // Second phase.
    r(&mut b, "qE", "st,hashb", "qF");
    for x in ["T", "F"] {
        r(&mut b, "qF", &format!("st,c{x}"), "qG");
        r(&mut b, "qG", &format!("st,c{x}"), "qE");
    }
    for q in ["qE", "qF", "qG"] {
        for z in ["stb", "0b", "1b", "cb", "st"] {
            r(&mut b, q, &format!("st,{z}"), q);
        }
    }
    b.build().expect("start set")
}

/// w = w_aux · w_φ with
/// w_aux = ⋆^{n+3mL} # u₁^{p₁} # … # u_n^{p_n} and
/// w_φ = ⋆^{m+6m(L+2)} #̄ t₁ … #̄ t_m, where each clause contributes
/// t_j = ⋆̄^{L+2} t_{j,1} ⋆̄^{L+2} t_{j,2} ⋆̄^{L+2} t_{j,3} and
/// t_{j,r} = c_T ūᵢ c̄ (positive literal on xᵢ) or c_F ūᵢ c̄ (negative).
pub fn sat_to_gjfa_word(phi: &CnfFormula, layout: &SatGjfaLayout) -> Result<Word> {
    if layout.num_vars != phi.num_vars || layout.num_clauses != phi.clauses.len() {
        return Err(Error::InvalidInstance("layout does not match formula".into()));
    }
    let sigma = sat_gjfa_alphabet();
    let sym = |t: &str| sigma.index_of(t).expect("fixed alphabet") as u16;
    let (zero, one, zerob, oneb) = (sym("0"), sym("1"), sym("0b"), sym("1b"));
    let (ct, cf, cb) = (sym("cT"), sym("cF"), sym("cb"));
    let (st, hash, stb, hashb) = (sym("st"), sym("hash"), sym("stb"), sym("hashb"));
    let (n, m, big_l) = (layout.num_vars, layout.num_clauses, layout.code_len);

    let mut w = vec![st; n + 3 * m * big_l];
    for i in 0..n {
        w.push(hash);
        for _ in 0..layout.occurrences[i] {
            w.extend(
                layout.codes[i]
                    .iter()
                    .map(|&bit| if bit == 0 { zero } else { one }),
            );
        }
    }
    w.extend(std::iter::repeat_n(st, m + 6 * m * (big_l + 2)));
    for clause in &phi.clauses {
        w.push(hashb);
        for lit in clause {
            w.extend(std::iter::repeat_n(stb, big_l + 2));
            w.push(if lit.positive { ct } else { cf });
            w.extend(
                layout.codes[lit.var - 1]
                    .iter()
                    .map(|&bit| if bit == 0 { zerob } else { oneb }),
            );
            w.push(cb);
        }
    }
    Ok(Word::from_indices(sigma, w))
}

// ---------------------------------------------------------------------------
// Binary wrapping
// ---------------------------------------------------------------------------

/// Applies the letter homomorphism h(xᵢ) = 10ⁱ1 to machine and word. The
/// length stretch is at most |Σ|+2 per letter — 13 for the 11-token 3SAT
/// alphabet.
pub fn binary_wrap(m: &Machine, w: &Word) -> Result<(Machine, Word, BinaryHomomorphism)> {
    let (encoded, h) = binary_encode_gjfa(m);
    let image = h.apply(w)?;
    Ok((encoded, image, h))
}
