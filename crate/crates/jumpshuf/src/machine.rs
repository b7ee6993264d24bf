//! (General) finite machines with three semantics: classical FA runs, JFA
//! runs (consume letters in any order), and GJFA runs (delete any factor
//! occurrence of a rule label).
//!
//! A machine is *finite* when every rule label has length ≤ 1; only finite
//! machines support the JFA acceptor, determinization, and the shuffle
//! product. Everything here is immutable after construction; acceptors keep
//! their memo tables on the stack, so concurrent use needs no coordination.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use crate::alphabet::{strip_comment, Alphabet, FiniteLanguage, Word};
use crate::error::{Error, Result};
use crate::exec::filter_items;
use crate::expr::{Expr, Node};
use crate::shuffle::sigma_upto;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Rule {
    pub from: usize,
    /// Symbol indices; empty = ε.
    pub label: Vec<u16>,
    pub to: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MachineKind {
    /// Every label has length ≤ 1.
    FiniteMachine,
    GeneralFiniteMachine,
}

#[derive(Clone, PartialEq, Eq)]
pub struct Machine {
    alphabet: Alphabet,
    states: Vec<String>,
    start: usize,
    finals: BTreeSet<usize>,
    rules: Vec<Rule>,
}

impl fmt::Debug for Machine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Machine({} states, {} rules, start {})",
            self.states.len(),
            self.rules.len(),
            self.states[self.start]
        )
    }
}

/// Incremental construction by state name; states are created on first use
/// in mention order.
pub struct MachineBuilder {
    alphabet: Alphabet,
    states: Vec<String>,
    index: HashMap<String, usize>,
    start: Option<usize>,
    finals: BTreeSet<usize>,
    rules: Vec<Rule>,
}

impl MachineBuilder {
    pub fn new(alphabet: Alphabet) -> Self {
        MachineBuilder {
            alphabet,
            states: Vec::new(),
            index: HashMap::new(),
            start: None,
            finals: BTreeSet::new(),
            rules: Vec::new(),
        }
    }

    pub fn state(&mut self, name: &str) -> usize {
        if let Some(&i) = self.index.get(name) {
            return i;
        }
        let i = self.states.len();
        self.states.push(name.to_string());
        self.index.insert(name.to_string(), i);
        i
    }

    pub fn start(&mut self, name: &str) -> &mut Self {
        let i = self.state(name);
        self.start = Some(i);
        self
    }

    pub fn final_state(&mut self, name: &str) -> &mut Self {
        let i = self.state(name);
        self.finals.insert(i);
        self
    }

    /// Adds a rule with the label given as a word literal (`@` for ε).
    pub fn rule(&mut self, from: &str, label: &str, to: &str) -> Result<&mut Self> {
        let label = self.alphabet.parse_word(label)?;
        let from = self.state(from);
        let to = self.state(to);
        self.rules.push(Rule {
            from,
            label: label.indices().to_vec(),
            to,
        });
        Ok(self)
    }

    pub fn rule_word(&mut self, from: &str, label: &Word, to: &str) -> Result<&mut Self> {
        if label.alphabet() != &self.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let from = self.state(from);
        let to = self.state(to);
        self.rules.push(Rule {
            from,
            label: label.indices().to_vec(),
            to,
        });
        Ok(self)
    }

    pub fn build(self) -> Result<Machine> {
        let start = self
            .start
            .ok_or_else(|| Error::InvalidMachine("missing start state".into()))?;
        if self.states.is_empty() {
            return Err(Error::InvalidMachine("machine has no states".into()));
        }
        Ok(Machine {
            alphabet: self.alphabet,
            states: self.states,
            start,
            finals: self.finals,
            rules: self.rules,
        })
    }
}

impl Machine {
    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_names(&self) -> &[String] {
        &self.states
    }

    pub fn start_state(&self) -> usize {
        self.start
    }

    pub fn final_states(&self) -> &BTreeSet<usize> {
        &self.finals
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn kind(&self) -> MachineKind {
        if self.rules.iter().all(|r| r.label.len() <= 1) {
            MachineKind::FiniteMachine
        } else {
            MachineKind::GeneralFiniteMachine
        }
    }

    fn require_finite(&self) -> Result<()> {
        match self.kind() {
            MachineKind::FiniteMachine => Ok(()),
            MachineKind::GeneralFiniteMachine => Err(Error::GeneralMachine),
        }
    }

    // -----------------------------------------------------------------
    // Acceptors
    // -----------------------------------------------------------------

    /// Classical run: rules consume their label from the front of the
    /// remaining input. Breadth-first closure over (state, position) pairs.
    pub fn fa_accepts(&self, w: &Word) -> Result<bool> {
        if w.alphabet() != &self.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let syms = w.indices();
        let mut seen = HashSet::new();
        let mut queue = VecDeque::from([(self.start, 0usize)]);
        seen.insert((self.start, 0usize));
        while let Some((q, pos)) = queue.pop_front() {
            if pos == syms.len() && self.finals.contains(&q) {
                return Ok(true);
            }
            for r in &self.rules {
                if r.from == q && syms[pos..].starts_with(&r.label) {
                    let next = (r.to, pos + r.label.len());
                    if seen.insert(next) {
                        queue.push_back(next);
                    }
                }
            }
        }
        Ok(false)
    }

    /// Jumping run on a finite machine: equivalent to consuming the letters
    /// of `w` in any order, i.e. a search over (state, remaining counts).
    pub fn jfa_accepts(&self, w: &Word) -> Result<bool> {
        self.require_finite()?;
        if w.alphabet() != &self.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let mut counts: Vec<u32> = vec![0; self.alphabet.len()];
        for &s in w.indices() {
            counts[s as usize] += 1;
        }
        let mut seen = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert((self.start, counts.clone()));
        queue.push_back((self.start, counts));
        while let Some((q, counts)) = queue.pop_front() {
            if counts.iter().all(|&c| c == 0) && self.finals.contains(&q) {
                return Ok(true);
            }
            for r in &self.rules {
                if r.from != q {
                    continue;
                }
                let next = match r.label.first() {
                    None => (r.to, counts.clone()),
                    Some(&s) => {
                        if counts[s as usize] == 0 {
                            continue;
                        }
                        let mut c = counts.clone();
                        c[s as usize] -= 1;
                        (r.to, c)
                    }
                };
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        Ok(false)
    }

    /// General jumping run: repeatedly delete any factor occurrence of a
    /// rule label from the remaining word (the flanks concatenate, so later
    /// labels may span the junction); accept on ε in a final state.
    pub fn gjfa_accepts(&self, w: &Word) -> Result<bool> {
        if w.alphabet() != &self.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let mut by_state: Vec<Vec<&Rule>> = vec![Vec::new(); self.states.len()];
        for r in &self.rules {
            by_state[r.from].push(r);
        }
        let mut seen = HashSet::new();
        let mut queue = Vec::new();
        let init = (self.start, w.indices().to_vec());
        seen.insert(init.clone());
        queue.push(init);
        // Depth-first: on positive instances an accepting run is typically
        // found long before the reachable configuration space is exhausted.
        while let Some((q, rem)) = queue.pop() {
            if rem.is_empty() && self.finals.contains(&q) {
                return Ok(true);
            }
            for r in &by_state[q] {
                if r.label.is_empty() {
                    let next = (r.to, rem.clone());
                    if seen.insert(next.clone()) {
                        queue.push(next);
                    }
                    continue;
                }
                let k = r.label.len();
                if k > rem.len() {
                    continue;
                }
                let mut i = 0;
                while i + k <= rem.len() {
                    if rem[i..i + k] == r.label[..] {
                        let mut next = rem.clone();
                        next.drain(i..i + k);
                        let cfg = (r.to, next);
                        if seen.insert(cfg.clone()) {
                            queue.push(cfg);
                        }
                        // Deleting the label at position i+1 yields the same
                        // word as at position i whenever rem[i] == rem[i+k];
                        // skip the whole shift-equivalent run.
                        while i + k < rem.len() && rem[i] == rem[i + k] {
                            i += 1;
                        }
                    }
                    i += 1;
                }
            }
        }
        Ok(false)
    }

    // -----------------------------------------------------------------
    // Bounded enumeration
    // -----------------------------------------------------------------

    pub fn fa_language_upto(&self, n: usize) -> FiniteLanguage {
        self.language_upto(n, |m, w| m.fa_accepts(w).expect("same alphabet"))
    }

    pub fn jfa_language_upto(&self, n: usize) -> Result<FiniteLanguage> {
        self.require_finite()?;
        Ok(self.language_upto(n, |m, w| m.jfa_accepts(w).expect("finite machine, same alphabet")))
    }

    pub fn gjfa_language_upto(&self, n: usize) -> FiniteLanguage {
        self.language_upto(n, |m, w| m.gjfa_accepts(w).expect("same alphabet"))
    }

    fn language_upto(
        &self,
        n: usize,
        accept: impl Fn(&Machine, &Word) -> bool + Sync + Send,
    ) -> FiniteLanguage {
        let words = filter_items(sigma_upto(&self.alphabet, n), |w| accept(self, w));
        FiniteLanguage::from_words(self.alphabet.clone(), words).expect("same alphabet")
    }

    // -----------------------------------------------------------------
    // Classical constructions (finite machines)
    // -----------------------------------------------------------------

    /// ε-closure of a state set under ε-labeled rules.
    fn eps_closure(&self, set: &mut BTreeSet<usize>) {
        let mut queue: Vec<usize> = set.iter().copied().collect();
        while let Some(q) = queue.pop() {
            for r in &self.rules {
                if r.from == q && r.label.is_empty() && set.insert(r.to) {
                    queue.push(r.to);
                }
            }
        }
    }

    /// Subset construction. The result is a deterministic *complete* machine
    /// (a sink is added when needed), states named `d0, d1, …` in
    /// breadth-first discovery order.
    pub fn determinize(&self) -> Result<Machine> {
        self.require_finite()?;
        let k = self.alphabet.len();
        let mut start: BTreeSet<usize> = BTreeSet::from([self.start]);
        self.eps_closure(&mut start);

        let mut ids: HashMap<BTreeSet<usize>, usize> = HashMap::new();
        let mut subsets: Vec<BTreeSet<usize>> = Vec::new();
        let mut trans: Vec<Vec<usize>> = Vec::new();
        ids.insert(start.clone(), 0);
        subsets.push(start);
        let mut next = 0;
        while next < subsets.len() {
            let cur = subsets[next].clone();
            let mut row = Vec::with_capacity(k);
            for s in 0..k as u16 {
                let mut tgt = BTreeSet::new();
                for r in &self.rules {
                    if r.label.as_slice() == [s] && cur.contains(&r.from) {
                        tgt.insert(r.to);
                    }
                }
                self.eps_closure(&mut tgt);
                let id = *ids.entry(tgt.clone()).or_insert_with(|| {
                    subsets.push(tgt);
                    subsets.len() - 1
                });
                row.push(id);
            }
            trans.push(row);
            next += 1;
        }

        let names: Vec<String> = (0..subsets.len()).map(|i| format!("d{i}")).collect();
        let mut rules = Vec::new();
        for (i, row) in trans.iter().enumerate() {
            for (s, &j) in row.iter().enumerate() {
                rules.push(Rule {
                    from: i,
                    label: vec![s as u16],
                    to: j,
                });
            }
        }
        let finals = subsets
            .iter()
            .enumerate()
            .filter(|(_, set)| set.iter().any(|q| self.finals.contains(q)))
            .map(|(i, _)| i)
            .collect();
        Ok(Machine {
            alphabet: self.alphabet.clone(),
            states: names,
            start: 0,
            finals,
            rules,
        })
    }

    /// Canonical minimal complete DFA, states named `m0, m1, …` in
    /// breadth-first discovery order (so FA-equivalent machines minimize to
    /// literally equal machines).
    pub fn minimize(&self) -> Result<Machine> {
        let dfa = self.determinize()?;
        let n = dfa.states.len();
        let k = dfa.alphabet.len();
        // Dense transition table of the complete DFA.
        let mut delta = vec![vec![0usize; k]; n];
        for r in &dfa.rules {
            delta[r.from][r.label[0] as usize] = r.to;
        }

        // Moore refinement from the accepting/rejecting split.
        let mut class: Vec<usize> = (0..n)
            .map(|q| usize::from(dfa.finals.contains(&q)))
            .collect();
        loop {
            let mut sig_ids: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
            let mut next_class = vec![0usize; n];
            for q in 0..n {
                let sig = (class[q], (0..k).map(|s| class[delta[q][s]]).collect());
                let id = sig_ids.len();
                next_class[q] = *sig_ids.entry(sig).or_insert(id);
            }
            if next_class == class {
                break;
            }
            class = next_class;
        }

        // BFS over classes from the start class for canonical numbering.
        let mut order: HashMap<usize, usize> = HashMap::new();
        let mut queue = VecDeque::from([class[dfa.start]]);
        order.insert(class[dfa.start], 0);
        let mut reps: Vec<usize> = vec![dfa.start];
        while let Some(c) = queue.pop_front() {
            let rep = reps[order[&c]];
            for s in 0..k {
                let t = class[delta[rep][s]];
                if let std::collections::hash_map::Entry::Vacant(e) = order.entry(t) {
                    e.insert(reps.len());
                    reps.push(delta[rep][s]);
                    queue.push_back(t);
                }
            }
        }

        let m = reps.len();
        let names: Vec<String> = (0..m).map(|i| format!("m{i}")).collect();
        let mut rules = Vec::new();
        for (i, &rep) in reps.iter().enumerate() {
            for s in 0..k {
                rules.push(Rule {
                    from: i,
                    label: vec![s as u16],
                    to: order[&class[delta[rep][s]]],
                });
            }
        }
        let finals = reps
            .iter()
            .enumerate()
            .filter(|(_, &rep)| dfa.finals.contains(&rep))
            .map(|(i, _)| i)
            .collect();
        Ok(Machine {
            alphabet: dfa.alphabet,
            states: names,
            start: 0,
            finals,
            rules,
        })
    }

    /// Dense transition table of a deterministic complete machine (as
    /// produced by `determinize`/`minimize`): `table[q][s]` is the successor.
    pub fn dfa_table(&self) -> Result<Vec<Vec<usize>>> {
        self.require_finite()?;
        let n = self.states.len();
        let k = self.alphabet.len();
        let mut table = vec![vec![usize::MAX; k]; n];
        for r in &self.rules {
            let s = match r.label.first() {
                Some(&s) => s as usize,
                None => {
                    return Err(Error::InvalidMachine(
                        "ε-rule in a machine expected to be deterministic".into(),
                    ))
                }
            };
            if table[r.from][s] != usize::MAX && table[r.from][s] != r.to {
                return Err(Error::InvalidMachine(format!(
                    "nondeterministic on state {} symbol {}",
                    self.states[r.from],
                    self.alphabet.symbol(s)
                )));
            }
            table[r.from][s] = r.to;
        }
        for (q, row) in table.iter().enumerate() {
            if row.contains(&usize::MAX) {
                return Err(Error::InvalidMachine(format!(
                    "incomplete: state {} misses a transition",
                    self.states[q]
                )));
            }
        }
        Ok(table)
    }

    /// Product machine whose FA language is the shuffle of the two FA
    /// languages: each step advances exactly one component.
    pub fn shuffle_product(&self, other: &Machine) -> Result<Machine> {
        self.require_finite()?;
        other.require_finite()?;
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let n2 = other.states.len();
        let id = |p: usize, q: usize| p * n2 + q;
        let names: Vec<String> = (0..self.states.len())
            .flat_map(|p| {
                (0..n2).map(move |q| format!("x{p}_{q}"))
            })
            .collect();
        let mut rules = Vec::new();
        for p in 0..self.states.len() {
            for r in &other.rules {
                rules.push(Rule {
                    from: id(p, r.from),
                    label: r.label.clone(),
                    to: id(p, r.to),
                });
            }
        }
        for q in 0..n2 {
            for r in &self.rules {
                rules.push(Rule {
                    from: id(r.from, q),
                    label: r.label.clone(),
                    to: id(r.to, q),
                });
            }
        }
        let finals = self
            .finals
            .iter()
            .flat_map(|&p| other.finals.iter().map(move |&q| id(p, q)))
            .collect();
        Ok(Machine {
            alphabet: self.alphabet.clone(),
            states: names,
            start: id(self.start, other.start),
            finals,
            rules,
        })
    }

    // -----------------------------------------------------------------
    // Text format
    // -----------------------------------------------------------------

    /// Parses the line-oriented machine format (see `print_machine`'s
    /// output); `#` starts a comment.
    pub fn parse(text: &str) -> Result<Machine> {
        let mut alphabet: Option<Alphabet> = None;
        let mut states: Vec<String> = Vec::new();
        let mut start: Option<String> = None;
        let mut finals: Vec<String> = Vec::new();
        let mut raw_rules: Vec<(String, String, String)> = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = strip_comment(line).trim();
            if line.is_empty() {
                continue;
            }
            let (key, rest) = line.split_once(':').ok_or_else(|| {
                Error::InvalidMachine(format!("line {}: expected `key: …`", lineno + 1))
            })?;
            let rest = rest.trim();
            match key.trim() {
                "alphabet" => {
                    alphabet = Some(Alphabet::new(rest.split_whitespace())?);
                }
                "states" => {
                    states.extend(rest.split_whitespace().map(String::from));
                }
                "start" => start = Some(rest.to_string()),
                "final" => finals.extend(rest.split_whitespace().map(String::from)),
                "rule" => {
                    let parts: Vec<&str> = rest.split_whitespace().collect();
                    if parts.len() != 3 {
                        return Err(Error::InvalidMachine(format!(
                            "line {}: rule needs `from label to`",
                            lineno + 1
                        )));
                    }
                    raw_rules.push((
                        parts[0].to_string(),
                        parts[1].to_string(),
                        parts[2].to_string(),
                    ));
                }
                other => {
                    return Err(Error::InvalidMachine(format!(
                        "line {}: unknown key `{other}`",
                        lineno + 1
                    )))
                }
            }
        }
        let alphabet =
            alphabet.ok_or_else(|| Error::InvalidMachine("missing `alphabet:` line".into()))?;
        if states.is_empty() {
            return Err(Error::InvalidMachine("missing `states:` line".into()));
        }
        let mut index = HashMap::new();
        for (i, s) in states.iter().enumerate() {
            if index.insert(s.clone(), i).is_some() {
                return Err(Error::InvalidMachine(format!("duplicate state `{s}`")));
            }
        }
        let resolve = |name: &str| -> Result<usize> {
            index
                .get(name)
                .copied()
                .ok_or_else(|| Error::InvalidMachine(format!("undeclared state `{name}`")))
        };
        let start = resolve(&start.ok_or_else(|| {
            Error::InvalidMachine("missing `start:` line".into())
        })?)?;
        let finals = finals
            .iter()
            .map(|f| resolve(f))
            .collect::<Result<BTreeSet<usize>>>()?;
        let rules = raw_rules
            .iter()
            .map(|(from, label, to)| {
                Ok(Rule {
                    from: resolve(from)?,
                    label: alphabet.parse_word(label)?.indices().to_vec(),
                    to: resolve(to)?,
                })
            })
            .collect::<Result<Vec<Rule>>>()?;
        Ok(Machine {
            alphabet,
            states,
            start,
            finals,
            rules,
        })
    }

    pub fn print(&self) -> String {
        let mut out = String::new();
        out.push_str("alphabet:");
        for s in self.alphabet.symbols() {
            out.push(' ');
            out.push_str(s);
        }
        out.push('\n');
        out.push_str("states:");
        for s in &self.states {
            out.push(' ');
            out.push_str(s);
        }
        out.push('\n');
        out.push_str(&format!("start: {}\n", self.states[self.start]));
        if !self.finals.is_empty() {
            out.push_str("final:");
            for &f in &self.finals {
                out.push(' ');
                out.push_str(&self.states[f]);
            }
            out.push('\n');
        }
        for r in &self.rules {
            let label = Word::from_indices(self.alphabet.clone(), r.label.clone()).literal();
            out.push_str(&format!(
                "rule: {} {} {}\n",
                self.states[r.from], label, self.states[r.to]
            ));
        }
        out
    }
}

// ---------------------------------------------------------------------------
// Constructions from words and expressions
// ---------------------------------------------------------------------------

/// A path machine for `w`: its FA language is {w}, hence its JFA language is
/// the permutation class of `w`.
pub fn word_to_jfa(w: &Word) -> Machine {
    let mut b = MachineBuilder::new(w.alphabet().clone());
    b.start("q0");
    for (i, &s) in w.indices().iter().enumerate() {
        let label = Word::from_indices(w.alphabet().clone(), vec![s]);
        b.rule_word(&format!("q{i}"), &label, &format!("q{}", i + 1))
            .expect("same alphabet");
    }
    b.final_state(&format!("q{}", w.len()));
    b.build().expect("start set")
}

/// Thompson construction, treating Shuffle as Concat and IterShuffle as
/// Star. The FA language is the regex reading of the expression; for α-SHUF
/// input the JFA language is therefore exactly the expression's language.
pub fn thompson_machine(e: &Expr) -> Machine {
    struct Ctx {
        rules: Vec<Rule>,
        count: usize,
    }
    impl Ctx {
        fn fresh(&mut self) -> usize {
            self.count += 1;
            self.count - 1
        }
        fn eps(&mut self, from: usize, to: usize) {
            self.rules.push(Rule {
                from,
                label: vec![],
                to,
            });
        }
        /// Returns (entry, exit) of the fragment.
        fn go(&mut self, n: &Node) -> (usize, usize) {
            match n {
                Node::EmptySet => (self.fresh(), self.fresh()),
                Node::Epsilon => {
                    let i = self.fresh();
                    let o = self.fresh();
                    self.eps(i, o);
                    (i, o)
                }
                Node::Atom(w) => {
                    let i = self.fresh();
                    let mut cur = i;
                    for &s in w {
                        let nxt = self.fresh();
                        self.rules.push(Rule {
                            from: cur,
                            label: vec![s],
                            to: nxt,
                        });
                        cur = nxt;
                    }
                    (i, cur)
                }
                Node::Union(l, r) => {
                    let (li, lo) = self.go(l);
                    let (ri, ro) = self.go(r);
                    let i = self.fresh();
                    let o = self.fresh();
                    self.eps(i, li);
                    self.eps(i, ri);
                    self.eps(lo, o);
                    self.eps(ro, o);
                    (i, o)
                }
                Node::Concat(l, r) | Node::Shuffle(l, r) => {
                    let (li, lo) = self.go(l);
                    let (ri, ro) = self.go(r);
                    self.eps(lo, ri);
                    (li, ro)
                }
                Node::Star(x) | Node::IterShuffle(x) => {
                    let (xi, xo) = self.go(x);
                    let i = self.fresh();
                    let o = self.fresh();
                    self.eps(i, xi);
                    self.eps(xo, o);
                    self.eps(i, o);
                    self.eps(o, i);
                    (i, o)
                }
            }
        }
    }
    let mut ctx = Ctx {
        rules: Vec::new(),
        count: 0,
    };
    let (start, end) = ctx.go(e.node());
    let states = (0..ctx.count).map(|i| format!("t{i}")).collect();
    Machine {
        alphabet: e.alphabet().clone(),
        states,
        start,
        finals: BTreeSet::from([end]),
        rules: ctx.rules,
    }
}

/// Regular expression for the FA language of a machine, by state
/// elimination over a generalized automaton with expression-labeled edges.
pub fn machine_to_regex(m: &Machine) -> Expr {
    let n = m.states.len();
    // Edge map over states 0..n plus fresh start n and final n+1;
    // `None` means no edge (∅).
    let mut edge: BTreeMap<(usize, usize), Node> = BTreeMap::new();
    let add = |edge: &mut BTreeMap<(usize, usize), Node>, i: usize, j: usize, e: Node| {
        match edge.remove(&(i, j)) {
            None => {
                edge.insert((i, j), e);
            }
            Some(old) => {
                edge.insert((i, j), union_node(old, e));
            }
        }
    };
    for r in &m.rules {
        let label = if r.label.is_empty() {
            Node::Epsilon
        } else {
            Node::Atom(r.label.clone())
        };
        add(&mut edge, r.from, r.to, label);
    }
    let start = n;
    let fin = n + 1;
    add(&mut edge, start, m.start, Node::Epsilon);
    for &f in &m.finals {
        add(&mut edge, f, fin, Node::Epsilon);
    }
    for k in 0..n {
        let self_loop = edge.remove(&(k, k));
        let ins: Vec<(usize, Node)> = edge
            .iter()
            .filter(|((_, j), _)| *j == k)
            .map(|((i, _), e)| (*i, e.clone()))
            .collect();
        let outs: Vec<(usize, Node)> = edge
            .iter()
            .filter(|((i, _), _)| *i == k)
            .map(|((_, j), e)| (*j, e.clone()))
            .collect();
        edge.retain(|(i, j), _| *i != k && *j != k);
        for (i, ei) in &ins {
            for (j, ej) in &outs {
                let mut path = ei.clone();
                if let Some(l) = &self_loop {
                    path = concat_node(path, star_node(l.clone()));
                }
                path = concat_node(path, ej.clone());
                add(&mut edge, *i, *j, path);
            }
        }
    }
    let node = edge.remove(&(start, fin)).unwrap_or(Node::EmptySet);
    // The remaining edge is start→final; wrap it into an Expr.
    Expr::from_node(m.alphabet.clone(), node)
}

fn union_node(a: Node, b: Node) -> Node {
    match (a, b) {
        (Node::EmptySet, x) | (x, Node::EmptySet) => x,
        (a, b) if a == b => a,
        (a, b) => Node::Union(Box::new(a), Box::new(b)),
    }
}

fn concat_node(a: Node, b: Node) -> Node {
    match (a, b) {
        (Node::EmptySet, _) | (_, Node::EmptySet) => Node::EmptySet,
        (Node::Epsilon, x) | (x, Node::Epsilon) => x,
        (a, b) => Node::Concat(Box::new(a), Box::new(b)),
    }
}

fn star_node(a: Node) -> Node {
    match a {
        Node::EmptySet | Node::Epsilon => Node::Epsilon,
        a => Node::Star(Box::new(a)),
    }
}

// ---------------------------------------------------------------------------
// Binary encoding
// ---------------------------------------------------------------------------

/// The letter-to-binary homomorphism h(xᵢ) = 1 0ⁱ 1 (i starting at 1 in
/// alphabet order), extended to words by concatenation. Injective with
/// uniquely decodable images, so GJFA acceptance transfers both ways.
#[derive(Clone, Debug)]
pub struct BinaryHomomorphism {
    source: Alphabet,
    target: Alphabet,
    /// Image of symbol i, as indices into the target alphabet {0,1}.
    images: Vec<Vec<u16>>,
}

impl BinaryHomomorphism {
    pub fn new(source: &Alphabet) -> BinaryHomomorphism {
        let target = Alphabet::new(["0", "1"]).expect("fixed binary alphabet");
        let one = 1u16;
        let zero = 0u16;
        let images = (0..source.len())
            .map(|i| {
                let mut img = vec![one];
                img.extend(std::iter::repeat_n(zero, i + 1));
                img.push(one);
                img
            })
            .collect();
        BinaryHomomorphism {
            source: source.clone(),
            target,
            images,
        }
    }

    pub fn source(&self) -> &Alphabet {
        &self.source
    }

    pub fn target(&self) -> &Alphabet {
        &self.target
    }

    /// Image of one source symbol as a binary word.
    pub fn image(&self, sym: usize) -> Word {
        Word::from_indices(self.target.clone(), self.images[sym].clone())
    }

    pub fn apply(&self, w: &Word) -> Result<Word> {
        if w.alphabet() != &self.source {
            return Err(Error::AlphabetMismatch);
        }
        let mut syms = Vec::new();
        for &s in w.indices() {
            syms.extend_from_slice(&self.images[s as usize]);
        }
        Ok(Word::from_indices(self.target.clone(), syms))
    }

    /// Bound used by the reductions: |h(w)| ≤ (|Σ|+2)·|w|.
    pub fn max_stretch(&self) -> usize {
        self.source.len() + 2
    }
}

/// Rewrites a machine over the binary alphabet by applying the letter
/// homomorphism to every rule label.
pub fn binary_encode_gjfa(m: &Machine) -> (Machine, BinaryHomomorphism) {
    let h = BinaryHomomorphism::new(&m.alphabet);
    let rules = m
        .rules
        .iter()
        .map(|r| {
            let mut label = Vec::new();
            for &s in &r.label {
                label.extend_from_slice(&h.images[s as usize]);
            }
            Rule {
                from: r.from,
                label,
                to: r.to,
            }
        })
        .collect();
    let encoded = Machine {
        alphabet: h.target.clone(),
        states: m.states.clone(),
        start: m.start,
        finals: m.finals.clone(),
        rules,
    };
    (encoded, h)
}

impl Expr {
    /// Internal: wraps a raw node (used by state elimination).
    pub(crate) fn from_node(alphabet: Alphabet, node: Node) -> Expr {
        Expr::raw(alphabet, node)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{eval_upto, parse_expr};
    use crate::shuffle::{perm_closure, perm_word, shuffle_langs};

    /// The three-state cycle machine accepting (abc)* classically.
    fn cycle_machine() -> Machine {
        Machine::parse(
            "alphabet: a b c\nstates: s r t\nstart: s\nfinal: s\n\
             rule: s a r\nrule: r b t\nrule: t c s\n",
        )
        .unwrap()
    }

    /// The two-state general machine with rules s-ab→r, r-cd→s.
    fn abcd_machine() -> Machine {
        Machine::parse(
            "alphabet: a b c d\nstates: s r\nstart: s\nfinal: s\n\
             rule: s a,b r\nrule: r c,d s\n",
        )
        .unwrap()
    }

    fn w(m: &Machine, lit: &str) -> Word {
        m.alphabet().parse_word(lit).unwrap()
    }

    #[test]
    fn parse_print_round_trip_and_kind() {
        let m = cycle_machine();
        assert_eq!(m.kind(), MachineKind::FiniteMachine);
        assert_eq!(Machine::parse(&m.print()).unwrap(), m);
        let g = abcd_machine();
        assert_eq!(g.kind(), MachineKind::GeneralFiniteMachine);
        assert_eq!(Machine::parse(&g.print()).unwrap(), g);
        assert!(Machine::parse("alphabet: a\nstates: s\nfinal: s\n").is_err());
        assert!(Machine::parse("alphabet: a\nstates: s s\nstart: s\n").is_err());
        assert!(Machine::parse("alphabet: a\nstates: s\nstart: q\n").is_err());
    }

    #[test]
    fn fa_semantics_on_cycle_machine() {
        let m = cycle_machine();
        assert!(m.fa_accepts(&w(&m, "a,b,c,a,b,c")).unwrap());
        assert!(!m.fa_accepts(&w(&m, "a,c,b")).unwrap());
        assert!(m.fa_accepts(&w(&m, "@")).unwrap());
    }

    #[test]
    fn jfa_semantics_counts_letters() {
        let m = cycle_machine();
        assert!(m.jfa_accepts(&w(&m, "a,a,b,b,c,c")).unwrap());
        assert!(m.jfa_accepts(&w(&m, "c,b,a")).unwrap());
        assert!(!m.jfa_accepts(&w(&m, "a,a,b")).unwrap());
        assert_eq!(
            abcd_machine().jfa_accepts(&w(&abcd_machine(), "a,b,c,d")),
            Err(Error::GeneralMachine)
        );
    }

    #[test]
    fn gjfa_factor_deletion() {
        let m = abcd_machine();
        assert!(m.gjfa_accepts(&w(&m, "a,b,c,d")).unwrap());
        assert!(!m.gjfa_accepts(&w(&m, "b,a,c,d")).unwrap());

        // Single-state s-ab→s machine: flanks concatenate after a deletion,
        // so aabb is reached via deleting the middle ab.
        let mut b = MachineBuilder::new(Alphabet::from_chars("ab").unwrap());
        b.start("s");
        b.final_state("s");
        b.rule("s", "a,b", "s").unwrap();
        let m = b.build().unwrap();
        assert!(m.gjfa_accepts(&w(&m, "a,a,b,b")).unwrap());
        assert!(!m.gjfa_accepts(&w(&m, "b,a,a,b")).unwrap());
        // {ab}^{⧢,*} ∩ Σ^{≤4}: every prefix has at least as many a's as b's
        // and letters balance, so abba and baab are out.
        let lang = m.gjfa_language_upto(4);
        let lits: Vec<String> = lang.iter().map(Word::literal).collect();
        assert_eq!(lits, ["@", "a,b", "a,a,b,b", "a,b,a,b"]);
    }

    #[test]
    fn jfa_language_is_perm_closure_of_fa_language() {
        let m = cycle_machine();
        let fa = m.fa_language_upto(6);
        let jfa = m.jfa_language_upto(6).unwrap();
        assert_eq!(jfa, perm_closure(&fa));
        // Example 1: up to length 3 that's {ε} ∪ perm(abc).
        assert_eq!(m.jfa_language_upto(3).unwrap().len(), 7);
    }

    #[test]
    fn gjfa_equals_jfa_on_finite_machines() {
        let m = cycle_machine();
        for word in crate::shuffle::sigma_upto(m.alphabet(), 4) {
            assert_eq!(
                m.jfa_accepts(&word).unwrap(),
                m.gjfa_accepts(&word).unwrap(),
                "disagreement on {}",
                word.literal()
            );
        }
    }

    #[test]
    fn determinize_and_minimize_cycle() {
        let m = cycle_machine();
        let min = m.minimize().unwrap();
        // 3 cycle states plus one sink.
        assert_eq!(min.state_names().len(), 4);
        assert_eq!(min.fa_language_upto(8), m.fa_language_upto(8));
        min.dfa_table().unwrap();
    }

    #[test]
    fn minimize_is_canonical() {
        // Two different NFAs for (a+b)* minimize to the same machine.
        let m1 = Machine::parse(
            "alphabet: a b\nstates: s\nstart: s\nfinal: s\nrule: s a s\nrule: s b s\n",
        )
        .unwrap();
        let m2 = Machine::parse(
            "alphabet: a b\nstates: p q\nstart: p\nfinal: p q\n\
             rule: p a q\nrule: p b q\nrule: q a p\nrule: q b p\nrule: p @ q\n",
        )
        .unwrap();
        assert_eq!(m1.minimize().unwrap(), m2.minimize().unwrap());
    }

    #[test]
    fn empty_language_minimizes_to_sink() {
        let m = Machine::parse("alphabet: a\nstates: s\nstart: s\n").unwrap();
        let min = m.minimize().unwrap();
        assert_eq!(min.state_names().len(), 1);
        assert!(min.final_states().is_empty());
    }

    #[test]
    fn shuffle_product_matches_language_shuffle() {
        let sigma = Alphabet::from_chars("abc").unwrap();
        let m1 = thompson_machine(&parse_expr("(a.b)*", &sigma).unwrap());
        let m2 = thompson_machine(&parse_expr("c*", &sigma).unwrap());
        let prod = m1.shuffle_product(&m2).unwrap();
        let want = shuffle_langs(&m1.fa_language_upto(5), &m2.fa_language_upto(5))
            .unwrap()
            .truncate(5);
        assert_eq!(prod.fa_language_upto(5), want);
    }

    #[test]
    fn word_to_jfa_accepts_perm_class() {
        let sigma = Alphabet::from_chars("abc").unwrap();
        let word = sigma.parse_word("a,b,c").unwrap();
        let m = word_to_jfa(&word);
        assert_eq!(m.fa_language_upto(3).len(), 1);
        assert_eq!(m.jfa_language_upto(3).unwrap(), perm_word(&word));

        let eps = word_to_jfa(&sigma.parse_word("@").unwrap());
        assert!(eps.fa_accepts(&sigma.parse_word("@").unwrap()).unwrap());
        assert_eq!(eps.fa_language_upto(2).len(), 1);
    }

    #[test]
    fn thompson_machine_matches_eval() {
        let sigma = Alphabet::from_chars("abc").unwrap();
        for text in ["(a.b.c)*", "a+b", "#e", "#E", "(a+b,c)*.a"] {
            let e = parse_expr(text, &sigma).unwrap();
            let m = thompson_machine(&e);
            assert_eq!(m.fa_language_upto(5), eval_upto(&e, 5), "mismatch for {text}");
        }
        // α-SHUF input: JFA language equals the expression's language.
        let e = parse_expr("(a&b&c)&*", &sigma).unwrap();
        let m = thompson_machine(&e);
        assert_eq!(m.jfa_language_upto(6).unwrap(), eval_upto(&e, 6));
    }

    #[test]
    fn state_elimination_round_trip() {
        let m = cycle_machine();
        let e = machine_to_regex(&m);
        assert_eq!(eval_upto(&e, 7), m.fa_language_upto(7));

        let no_final = Machine::parse("alphabet: a\nstates: s\nstart: s\nrule: s a s\n").unwrap();
        let e = machine_to_regex(&no_final);
        assert!(eval_upto(&e, 4).is_empty());
    }

    #[test]
    fn binary_homomorphism_images() {
        let sigma = Alphabet::from_chars("ab").unwrap();
        let h = BinaryHomomorphism::new(&sigma);
        assert_eq!(h.image(0).literal(), "1,0,1");
        assert_eq!(h.image(1).literal(), "1,0,0,1");

        let (enc, h) = binary_encode_gjfa(&abcd_machine());
        let habcd = BinaryHomomorphism::new(abcd_machine().alphabet());
        let img = habcd
            .apply(&abcd_machine().alphabet().parse_word("a,b,c,d").unwrap())
            .unwrap();
        assert!(enc.gjfa_accepts(&img).unwrap());
        let bad = habcd
            .apply(&abcd_machine().alphabet().parse_word("b,a,c,d").unwrap())
            .unwrap();
        assert!(!enc.gjfa_accepts(&bad).unwrap());
        assert_eq!(h.apply(&sigma_eps(&habcd)).unwrap().len(), 0);

        fn sigma_eps(h: &BinaryHomomorphism) -> Word {
            Word::empty(h.source().clone())
        }
    }
}
