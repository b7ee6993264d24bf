//! Expression ASTs for regular, SHUF, and α-SHUF expressions.
//!
//! One shared AST covers all three families plus hybrids (Concat and Shuffle
//! may coexist), so constructions that build e.g. (b^{⧢,*} ⧢ E) ∪ (a⧢b)^{⧢,*}
//! can assemble the tree directly and only later convert it to a machine.
//!
//! Text grammar: atoms are word literals (`a`, `a,b`); `#E` is the empty set,
//! `#e` the empty word; postfix `*` (star) and `&*` (iterated shuffle) bind
//! tightest, then `.` (catenation) and `&` (shuffle) left-associative at equal
//! precedence, then `+` (union). Parentheses override. `print_expr` emits
//! fully parenthesized binary operations, so printing and reparsing is the
//! identity.

use std::collections::BTreeMap;
use std::fmt;

use crate::alphabet::{Alphabet, FiniteLanguage, Word};
use crate::error::{Error, Result};
use crate::shuffle::{
    concat_langs_upto, is_perm_closed, iter_shuffle_upto, shuffle_langs_upto, star_upto,
};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Node {
    EmptySet,
    Epsilon,
    /// Non-empty word; ε and ∅ have dedicated nodes.
    Atom(Vec<u16>),
    Union(Box<Node>, Box<Node>),
    Concat(Box<Node>, Box<Node>),
    Shuffle(Box<Node>, Box<Node>),
    Star(Box<Node>),
    IterShuffle(Box<Node>),
}

#[derive(Clone, PartialEq, Eq)]
pub struct Expr {
    alphabet: Alphabet,
    node: Node,
}

/// The syntactic family an expression belongs to.
///
/// `Regular` has no Shuffle/IterShuffle nodes, `Shuf` no Concat/Star nodes,
/// `AlphaShuf` is Shuf with single-letter atoms only, and `Mixed` mixes both
/// operator groups. Expressions in several families at once (e.g. `a+b`)
/// report the most restrictive one, AlphaShuf before Shuf before Regular.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ExprFlavor {
    Regular,
    Shuf,
    AlphaShuf,
    Mixed,
}

impl fmt::Display for ExprFlavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ExprFlavor::Regular => "regular",
            ExprFlavor::Shuf => "shuf",
            ExprFlavor::AlphaShuf => "alpha-shuf",
            ExprFlavor::Mixed => "mixed",
        };
        f.write_str(s)
    }
}

impl Expr {
    pub fn empty_set(alphabet: Alphabet) -> Expr {
        Expr {
            alphabet,
            node: Node::EmptySet,
        }
    }

    pub fn epsilon(alphabet: Alphabet) -> Expr {
        Expr {
            alphabet,
            node: Node::Epsilon,
        }
    }

    pub fn atom(word: &Word) -> Result<Expr> {
        if word.is_empty() {
            return Err(Error::FlavorMismatch(
                "atoms must be non-empty; use the epsilon node".into(),
            ));
        }
        Ok(Expr {
            alphabet: word.alphabet().clone(),
            node: Node::Atom(word.indices().to_vec()),
        })
    }

    /// Single-letter atom by symbol index.
    pub fn letter(alphabet: Alphabet, sym: u16) -> Expr {
        debug_assert!((sym as usize) < alphabet.len());
        Expr {
            alphabet,
            node: Node::Atom(vec![sym]),
        }
    }

    pub fn union(self, other: Expr) -> Result<Expr> {
        self.binary(other, Node::Union)
    }

    pub fn concat(self, other: Expr) -> Result<Expr> {
        self.binary(other, Node::Concat)
    }

    pub fn shuffle(self, other: Expr) -> Result<Expr> {
        self.binary(other, Node::Shuffle)
    }

    fn binary(self, other: Expr, mk: fn(Box<Node>, Box<Node>) -> Node) -> Result<Expr> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        Ok(Expr {
            alphabet: self.alphabet,
            node: mk(Box::new(self.node), Box::new(other.node)),
        })
    }

    pub fn star(self) -> Expr {
        Expr {
            alphabet: self.alphabet,
            node: Node::Star(Box::new(self.node)),
        }
    }

    pub fn iter_shuffle(self) -> Expr {
        Expr {
            alphabet: self.alphabet,
            node: Node::IterShuffle(Box::new(self.node)),
        }
    }

    /// Union of an iterator of expressions; empty input gives `#E`.
    pub fn union_all(alphabet: Alphabet, exprs: impl IntoIterator<Item = Expr>) -> Result<Expr> {
        let mut it = exprs.into_iter();
        let mut acc = match it.next() {
            None => return Ok(Expr::empty_set(alphabet)),
            Some(e) => e,
        };
        for e in it {
            acc = acc.union(e)?;
        }
        if acc.alphabet != alphabet {
            return Err(Error::AlphabetMismatch);
        }
        Ok(acc)
    }

    /// Internal: wraps a node that is already known to be well-formed over
    /// `alphabet` (used by transforms in this crate).
    pub(crate) fn raw(alphabet: Alphabet, node: Node) -> Expr {
        Expr { alphabet, node }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn node(&self) -> &Node {
        &self.node
    }
}

impl fmt::Debug for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Expr({})", print_expr(self))
    }
}

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

fn has_shuffle_ops(n: &Node) -> bool {
    match n {
        Node::EmptySet | Node::Epsilon | Node::Atom(_) => false,
        Node::Union(l, r) | Node::Concat(l, r) => has_shuffle_ops(l) || has_shuffle_ops(r),
        Node::Shuffle(_, _) | Node::IterShuffle(_) => true,
        Node::Star(x) => has_shuffle_ops(x),
    }
}

fn has_concat_ops(n: &Node) -> bool {
    match n {
        Node::EmptySet | Node::Epsilon | Node::Atom(_) => false,
        Node::Union(l, r) | Node::Shuffle(l, r) => has_concat_ops(l) || has_concat_ops(r),
        Node::Concat(_, _) | Node::Star(_) => true,
        Node::IterShuffle(x) => has_concat_ops(x),
    }
}

fn atoms_single_letter(n: &Node) -> bool {
    match n {
        Node::EmptySet | Node::Epsilon => true,
        Node::Atom(w) => w.len() == 1,
        Node::Union(l, r) | Node::Concat(l, r) | Node::Shuffle(l, r) => {
            atoms_single_letter(l) && atoms_single_letter(r)
        }
        Node::Star(x) | Node::IterShuffle(x) => atoms_single_letter(x),
    }
}

/// No Shuffle/IterShuffle nodes (regex operators only; atoms of any length).
pub fn is_regular(e: &Expr) -> bool {
    !has_shuffle_ops(&e.node)
}

/// No Concat/Star nodes (shuffle-expression operators only).
pub fn is_shuf(e: &Expr) -> bool {
    !has_concat_ops(&e.node)
}

/// Shuffle operators only and every atom a single letter.
pub fn is_alpha_shuf(e: &Expr) -> bool {
    is_shuf(e) && atoms_single_letter(&e.node)
}

pub fn classify(e: &Expr) -> ExprFlavor {
    if is_alpha_shuf(e) {
        ExprFlavor::AlphaShuf
    } else if is_shuf(e) {
        ExprFlavor::Shuf
    } else if is_regular(e) {
        ExprFlavor::Regular
    } else {
        ExprFlavor::Mixed
    }
}

/// Maximum nesting depth of Star/IterShuffle nodes (both counted uniformly).
pub fn star_height(e: &Expr) -> usize {
    fn h(n: &Node) -> usize {
        match n {
            Node::EmptySet | Node::Epsilon | Node::Atom(_) => 0,
            Node::Union(l, r) | Node::Concat(l, r) | Node::Shuffle(l, r) => h(l).max(h(r)),
            Node::Star(x) | Node::IterShuffle(x) => h(x) + 1,
        }
    }
    h(&e.node)
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

/// L(e) ∩ Σ^{≤n}, computed bottom-up with truncation at every node.
///
/// Truncation is sound because every operator is length-monotone: a result
/// word of length ≤ n only ever arises from operand words of length ≤ n.
pub fn eval_upto(e: &Expr, n: usize) -> FiniteLanguage {
    fn eval(node: &Node, alphabet: &Alphabet, n: usize) -> FiniteLanguage {
        match node {
            Node::EmptySet => FiniteLanguage::empty(alphabet.clone()),
            Node::Epsilon => FiniteLanguage::epsilon(alphabet.clone()),
            Node::Atom(w) => {
                if w.len() <= n {
                    FiniteLanguage::singleton(Word::from_indices(alphabet.clone(), w.clone()))
                } else {
                    FiniteLanguage::empty(alphabet.clone())
                }
            }
            Node::Union(l, r) => eval(l, alphabet, n)
                .union(&eval(r, alphabet, n))
                .expect("same alphabet"),
            Node::Concat(l, r) => {
                concat_langs_upto(&eval(l, alphabet, n), &eval(r, alphabet, n), n)
                    .expect("same alphabet")
            }
            Node::Shuffle(l, r) => {
                shuffle_langs_upto(&eval(l, alphabet, n), &eval(r, alphabet, n), n)
                    .expect("same alphabet")
            }
            Node::Star(x) => star_upto(&eval(x, alphabet, n), n),
            Node::IterShuffle(x) => iter_shuffle_upto(&eval(x, alphabet, n), n),
        }
    }
    eval(&e.node, &e.alphabet, n)
}

// ---------------------------------------------------------------------------
// Syntactic transforms
// ---------------------------------------------------------------------------

/// Lemma-style regex → α-SHUF rewrite: `.` becomes `&`, `*` becomes `&*`,
/// and multi-letter atoms are letterized to a₁ & … & aₙ. The result denotes
/// exactly the permutation closure of the input's language.
pub fn regex_to_alpha_shuf(e: &Expr) -> Result<Expr> {
    if has_shuffle_ops(&e.node) {
        return Err(Error::FlavorMismatch(
            "regex_to_alpha_shuf requires an expression without shuffle operators".into(),
        ));
    }
    fn go(n: &Node) -> Node {
        match n {
            Node::EmptySet => Node::EmptySet,
            Node::Epsilon => Node::Epsilon,
            Node::Atom(w) => letterize(w),
            Node::Union(l, r) => Node::Union(Box::new(go(l)), Box::new(go(r))),
            Node::Concat(l, r) => Node::Shuffle(Box::new(go(l)), Box::new(go(r))),
            Node::Star(x) => Node::IterShuffle(Box::new(go(x))),
            Node::Shuffle(_, _) | Node::IterShuffle(_) => unreachable!("checked above"),
        }
    }
    Ok(Expr {
        alphabet: e.alphabet.clone(),
        node: go(&e.node),
    })
}

/// a₁…aₙ ↦ a₁ & … & aₙ (left-associated).
fn letterize(w: &[u16]) -> Node {
    let mut acc = Node::Atom(vec![w[0]]);
    for &s in &w[1..] {
        acc = Node::Shuffle(Box::new(acc), Box::new(Node::Atom(vec![s])));
    }
    acc
}

/// Inverse rewrite: `&` becomes `.`, `&*` becomes `*`. For α-SHUF input the
/// result is a regex whose permutation closure is the input's language.
pub fn alpha_shuf_to_regex(e: &Expr) -> Result<Expr> {
    if has_concat_ops(&e.node) {
        return Err(Error::FlavorMismatch(
            "alpha_shuf_to_regex requires an expression without catenation operators".into(),
        ));
    }
    fn go(n: &Node) -> Node {
        match n {
            Node::EmptySet => Node::EmptySet,
            Node::Epsilon => Node::Epsilon,
            Node::Atom(w) => Node::Atom(w.clone()),
            Node::Union(l, r) => Node::Union(Box::new(go(l)), Box::new(go(r))),
            Node::Shuffle(l, r) => Node::Concat(Box::new(go(l)), Box::new(go(r))),
            Node::IterShuffle(x) => Node::Star(Box::new(go(x))),
            Node::Concat(_, _) | Node::Star(_) => unreachable!("checked above"),
        }
    }
    Ok(Expr {
        alphabet: e.alphabet.clone(),
        node: go(&e.node),
    })
}

/// A star-free α-SHUF expression for a finite permutation-closed language:
/// one letterized shuffle term per permutation class, joined by union.
pub fn finite_permclosed_to_alpha_shuf(l: &FiniteLanguage) -> Result<Expr> {
    if let Err(w) = is_perm_closed(l) {
        return Err(Error::NotPermClosed(w.literal()));
    }
    let alphabet = l.alphabet().clone();
    // One representative per Parikh class, in canonical order.
    let mut classes: BTreeMap<Vec<u64>, &Word> = BTreeMap::new();
    for w in l.iter() {
        classes.entry(w.parikh().0).or_insert(w);
    }
    let terms = classes.values().map(|w| {
        if w.is_empty() {
            Expr::epsilon(alphabet.clone())
        } else {
            Expr {
                alphabet: alphabet.clone(),
                node: letterize(w.indices()),
            }
        }
    });
    Expr::union_all(alphabet.clone(), terms.collect::<Vec<_>>())
}

// ---------------------------------------------------------------------------
// Parsing and printing
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    LParen,
    RParen,
    Plus,
    Dot,
    Amp,
    Star,
    AmpStar,
    EmptySet,
    Epsilon,
    Atom(Vec<u16>),
}

fn lex(text: &str, alphabet: &Alphabet) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let pos = i;
        match c {
            '(' => {
                toks.push((pos, Tok::LParen));
                i += 1;
            }
            ')' => {
                toks.push((pos, Tok::RParen));
                i += 1;
            }
            '+' => {
                toks.push((pos, Tok::Plus));
                i += 1;
            }
            '.' => {
                toks.push((pos, Tok::Dot));
                i += 1;
            }
            '*' => {
                toks.push((pos, Tok::Star));
                i += 1;
            }
            '&' => {
                if chars.get(i + 1) == Some(&'*') {
                    toks.push((pos, Tok::AmpStar));
                    i += 2;
                } else {
                    toks.push((pos, Tok::Amp));
                    i += 1;
                }
            }
            '#' => match chars.get(i + 1) {
                Some('E') => {
                    toks.push((pos, Tok::EmptySet));
                    i += 2;
                }
                Some('e') => {
                    toks.push((pos, Tok::Epsilon));
                    i += 2;
                }
                _ => return Err(Error::syntax(pos, "expected `#E` or `#e`")),
            },
            ',' => return Err(Error::syntax(pos, "`,` without a preceding symbol")),
            '@' => return Err(Error::syntax(pos, "use `#e` for the empty word in expressions")),
            _ => {
                // A word atom: symbol tokens joined by commas (spaces around
                // commas are allowed).
                let mut syms = Vec::new();
                loop {
                    let start = i;
                    while i < chars.len()
                        && !chars[i].is_whitespace()
                        && !crate::alphabet::RESERVED_CHARS.contains(&chars[i])
                    {
                        i += 1;
                    }
                    if i == start {
                        return Err(Error::syntax(i, "expected a symbol token"));
                    }
                    let token: String = chars[start..i].iter().collect();
                    match alphabet.index_of(&token) {
                        Some(s) => syms.push(s as u16),
                        None => return Err(Error::UnknownSymbol(token)),
                    }
                    // Continue the atom only across a comma.
                    let mut j = i;
                    while j < chars.len() && chars[j].is_whitespace() {
                        j += 1;
                    }
                    if chars.get(j) == Some(&',') {
                        i = j + 1;
                        while i < chars.len() && chars[i].is_whitespace() {
                            i += 1;
                        }
                    } else {
                        break;
                    }
                }
                toks.push((pos, Tok::Atom(syms)));
            }
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    toks: &'a [(usize, Tok)],
    pos: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        self.pos += 1;
        t
    }

    fn union(&mut self) -> Result<Node> {
        let mut left = self.catshuf()?;
        while self.peek() == Some(&Tok::Plus) {
            self.bump();
            let right = self.catshuf()?;
            left = Node::Union(Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn catshuf(&mut self) -> Result<Node> {
        let mut left = self.postfix()?;
        loop {
            match self.peek() {
                Some(Tok::Dot) => {
                    self.bump();
                    let right = self.postfix()?;
                    left = Node::Concat(Box::new(left), Box::new(right));
                }
                Some(Tok::Amp) => {
                    self.bump();
                    let right = self.postfix()?;
                    left = Node::Shuffle(Box::new(left), Box::new(right));
                }
                _ => return Ok(left),
            }
        }
    }

    fn postfix(&mut self) -> Result<Node> {
        let mut e = self.primary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    e = Node::Star(Box::new(e));
                }
                Some(Tok::AmpStar) => {
                    self.bump();
                    e = Node::IterShuffle(Box::new(e));
                }
                _ => return Ok(e),
            }
        }
    }

    fn primary(&mut self) -> Result<Node> {
        match self.peek() {
            Some(Tok::LParen) => {
                self.bump();
                let e = self.union()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(Error::syntax(self.here(), "expected `)`"));
                }
                self.bump();
                Ok(e)
            }
            Some(Tok::EmptySet) => {
                self.bump();
                Ok(Node::EmptySet)
            }
            Some(Tok::Epsilon) => {
                self.bump();
                Ok(Node::Epsilon)
            }
            Some(Tok::Atom(_)) => match self.bump() {
                Tok::Atom(syms) => Ok(Node::Atom(syms)),
                _ => unreachable!(),
            },
            _ => Err(Error::syntax(
                self.here(),
                "expected an atom, `#E`, `#e`, or `(`",
            )),
        }
    }
}

pub fn parse_expr(text: &str, alphabet: &Alphabet) -> Result<Expr> {
    let toks = lex(text, alphabet)?;
    let mut p = Parser {
        toks: &toks,
        pos: 0,
        end: text.chars().count(),
    };
    let node = p.union()?;
    if p.pos != toks.len() {
        return Err(Error::syntax(p.here(), "unexpected trailing input"));
    }
    Ok(Expr {
        alphabet: alphabet.clone(),
        node,
    })
}

/// Prints an expression in the text grammar, fully parenthesizing binary
/// operations so that parsing the output reproduces the AST exactly.
pub fn print_expr(e: &Expr) -> String {
    fn go(n: &Node, alphabet: &Alphabet, out: &mut String) {
        match n {
            Node::EmptySet => out.push_str("#E"),
            Node::Epsilon => out.push_str("#e"),
            Node::Atom(w) => {
                let lits: Vec<&str> = w.iter().map(|&s| alphabet.symbol(s as usize)).collect();
                out.push_str(&lits.join(","));
            }
            Node::Union(l, r) => {
                out.push('(');
                go(l, alphabet, out);
                out.push('+');
                go(r, alphabet, out);
                out.push(')');
            }
            Node::Concat(l, r) => {
                out.push('(');
                go(l, alphabet, out);
                out.push('.');
                go(r, alphabet, out);
                out.push(')');
            }
            Node::Shuffle(l, r) => {
                out.push('(');
                go(l, alphabet, out);
                out.push('&');
                go(r, alphabet, out);
                out.push(')');
            }
            Node::Star(x) => {
                go(x, alphabet, out);
                out.push('*');
            }
            Node::IterShuffle(x) => {
                go(x, alphabet, out);
                out.push_str("&*");
            }
        }
    }
    let mut out = String::new();
    go(&e.node, &e.alphabet, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shuffle::perm_closure;

    fn sigma() -> Alphabet {
        Alphabet::from_chars("abcd").unwrap()
    }

    #[test]
    fn parse_iter_shuffle_of_letters() {
        let e = parse_expr("(a&b&c)&*", &sigma()).unwrap();
        assert_eq!(classify(&e), ExprFlavor::AlphaShuf);
        assert_eq!(star_height(&e), 1);
        match e.node() {
            Node::IterShuffle(inner) => match inner.as_ref() {
                Node::Shuffle(l, _) => assert!(matches!(l.as_ref(), Node::Shuffle(_, _))),
                other => panic!("expected nested shuffle, got {other:?}"),
            },
            other => panic!("expected iterated shuffle, got {other:?}"),
        }
    }

    #[test]
    fn parse_word_atoms_and_flavors() {
        let e = parse_expr("(a,b & c,d)&*", &sigma()).unwrap();
        assert_eq!(classify(&e), ExprFlavor::Shuf);
        let e = parse_expr("(a,b.c,d)*", &sigma()).unwrap();
        assert_eq!(classify(&e), ExprFlavor::Regular);
        let e = parse_expr("(a.b)&c", &sigma()).unwrap();
        assert_eq!(classify(&e), ExprFlavor::Mixed);
        let e = parse_expr("#e", &sigma()).unwrap();
        assert!(matches!(e.node(), Node::Epsilon));
    }

    #[test]
    fn precedence_and_associativity() {
        // Postfix binds tightest: a&b* is a & (b*).
        let e = parse_expr("a&b*", &sigma()).unwrap();
        match e.node() {
            Node::Shuffle(_, r) => assert!(matches!(r.as_ref(), Node::Star(_))),
            other => panic!("expected shuffle, got {other:?}"),
        }
        // `.`/`&` below `+`: a+b.c is a + (b.c).
        let e = parse_expr("a+b.c", &sigma()).unwrap();
        match e.node() {
            Node::Union(_, r) => assert!(matches!(r.as_ref(), Node::Concat(_, _))),
            other => panic!("expected union, got {other:?}"),
        }
        // Equal precedence, left associative: a.b&c is (a.b)&c.
        let e = parse_expr("a.b&c", &sigma()).unwrap();
        match e.node() {
            Node::Shuffle(l, _) => assert!(matches!(l.as_ref(), Node::Concat(_, _))),
            other => panic!("expected shuffle, got {other:?}"),
        }
    }

    #[test]
    fn parse_errors_carry_positions() {
        assert!(matches!(
            parse_expr("(a+b", &sigma()),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            parse_expr("a+", &sigma()),
            Err(Error::Syntax { .. })
        ));
        assert_eq!(
            parse_expr("a+z", &sigma()),
            Err(Error::UnknownSymbol("z".into()))
        );
        assert!(matches!(
            parse_expr("#x", &sigma()),
            Err(Error::Syntax { .. })
        ));
    }

    #[test]
    fn print_parse_round_trip() {
        for text in [
            "(a&b&c)&*",
            "((a,b&c,d)&*+#e)",
            "((a.b)*+(c&d))",
            "#E",
            "a,b,c",
            "((a+b)&*+(a.b.c)*)",
        ] {
            let e = parse_expr(text, &sigma()).unwrap();
            let printed = print_expr(&e);
            let e2 = parse_expr(&printed, &sigma()).unwrap();
            assert_eq!(e, e2, "round trip failed for {text} -> {printed}");
        }
    }

    #[test]
    fn eval_iter_shuffle_of_abc() {
        let e = parse_expr("(a&b&c)&*", &sigma()).unwrap();
        let l = eval_upto(&e, 3);
        // ε plus the six permutations of abc.
        assert_eq!(l.len(), 7);
        assert!(l.contains(&sigma().parse_word("c,a,b").unwrap()));
    }

    #[test]
    fn eval_shuf_expression_contains_acbd() {
        let e = parse_expr("(a,b&c,d)&*", &sigma()).unwrap();
        let l = eval_upto(&e, 4);
        assert!(l.contains(&sigma().parse_word("a,c,b,d").unwrap()));
        assert!(!l.contains(&sigma().parse_word("b,a,d,c").unwrap()));
    }

    #[test]
    fn eval_truncation_soundness() {
        let e = parse_expr("((a+b,c)*.d)+(a&d)&*", &sigma()).unwrap();
        for n in 0..5 {
            assert_eq!(eval_upto(&e, n), eval_upto(&e, n + 3).truncate(n));
        }
    }

    #[test]
    fn regex_to_alpha_shuf_is_perm_closure() {
        let e = parse_expr("(a.b.c)*", &sigma()).unwrap();
        let a = regex_to_alpha_shuf(&e).unwrap();
        assert_eq!(print_expr(&a), "((a&b)&c)&*");
        assert_eq!(classify(&a), ExprFlavor::AlphaShuf);
        assert_eq!(eval_upto(&a, 6), perm_closure(&eval_upto(&e, 6)));

        // Letterization of multi-letter atoms.
        let e = parse_expr("a,b,c+d", &sigma()).unwrap();
        let a = regex_to_alpha_shuf(&e).unwrap();
        assert_eq!(classify(&a), ExprFlavor::AlphaShuf);
        assert_eq!(eval_upto(&a, 3), perm_closure(&eval_upto(&e, 3)));
    }

    #[test]
    fn alpha_shuf_to_regex_inverse_rewrite() {
        let e = parse_expr("(a&b&c)&*", &sigma()).unwrap();
        let r = alpha_shuf_to_regex(&e).unwrap();
        assert_eq!(print_expr(&r), "((a.b).c)*");
        assert_eq!(classify(&r), ExprFlavor::Regular);
        assert_eq!(perm_closure(&eval_upto(&r, 6)), eval_upto(&e, 6));
        assert!(alpha_shuf_to_regex(&parse_expr("a.b", &sigma()).unwrap()).is_err());
        assert!(regex_to_alpha_shuf(&parse_expr("a&b", &sigma()).unwrap()).is_err());
    }

    #[test]
    fn finite_permclosed_expression() {
        let s = sigma();
        let l = perm_closure(&FiniteLanguage::parse_words(&s, &["a,b,c", "a,b"]).unwrap());
        let e = finite_permclosed_to_alpha_shuf(&l).unwrap();
        assert_eq!(classify(&e), ExprFlavor::AlphaShuf);
        assert_eq!(star_height(&e), 0);
        assert_eq!(eval_upto(&e, l.max_len()), l);

        let eps = FiniteLanguage::parse_words(&s, &["@"]).unwrap();
        let e = finite_permclosed_to_alpha_shuf(&eps).unwrap();
        assert_eq!(print_expr(&e), "#e");

        let open = FiniteLanguage::parse_words(&s, &["a,b"]).unwrap();
        assert_eq!(
            finite_permclosed_to_alpha_shuf(&open),
            Err(Error::NotPermClosed("b,a".into()))
        );
    }
}
