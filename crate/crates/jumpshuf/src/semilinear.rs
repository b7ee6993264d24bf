//! Linear and semilinear sets over ℕ^|Σ|, the Parikh-image side of the
//! normal-form story: α-SHUF expressions compile to semilinear sets, and a
//! semilinear set maps back to a star-height-one expression of the shape
//! ⋃ᵢ Fᵢ ⧢ Gᵢ^{⧢,*}.
//!
//! Exact equivalence of semilinear sets is out of scope; `sl_bounded_equal`
//! is a box-bounded oracle only.

use std::collections::{BTreeMap, HashSet};

use crate::alphabet::{Alphabet, ParikhVector};
use crate::error::{Error, Result};
use crate::exec::filter_items;
use crate::expr::{Expr, Node};
use crate::machine::{machine_to_regex, Machine};

/// Maximum number of components `sl_star` may produce before it errors out
/// (the distribution step is exponential in the component count).
pub const STAR_COMPONENT_CAP: usize = 1 << 16;

/// {base + k₁p₁ + … + k_mp_m : kᵢ ∈ ℕ}. Periods are kept sorted, distinct,
/// and non-zero.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct LinearSet {
    base: ParikhVector,
    periods: Vec<ParikhVector>,
}

impl LinearSet {
    pub fn new(base: ParikhVector, periods: impl IntoIterator<Item = ParikhVector>) -> Result<Self> {
        let dim = base.dim();
        let mut ps: Vec<ParikhVector> = Vec::new();
        for p in periods {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: p.dim(),
                });
            }
            if !p.is_zero() {
                ps.push(p);
            }
        }
        ps.sort();
        ps.dedup();
        Ok(LinearSet { base, periods: ps })
    }

    pub fn point(base: ParikhVector) -> Self {
        LinearSet {
            base,
            periods: Vec::new(),
        }
    }

    pub fn base(&self) -> &ParikhVector {
        &self.base
    }

    pub fn periods(&self) -> &[ParikhVector] {
        &self.periods
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    /// Membership by depth-first search over period multiples on the
    /// residual x − base, memoizing failed residuals. Exact: all entries
    /// are non-negative, so the residual strictly shrinks.
    pub fn contains(&self, x: &ParikhVector) -> bool {
        let Some(residual) = x.checked_sub(&self.base) else {
            return false;
        };
        let mut failed: HashSet<Vec<u64>> = HashSet::new();
        self.reachable_zero(&residual, &mut failed)
    }

    fn reachable_zero(&self, residual: &ParikhVector, failed: &mut HashSet<Vec<u64>>) -> bool {
        if residual.is_zero() {
            return true;
        }
        if failed.contains(&residual.0) {
            return false;
        }
        for p in &self.periods {
            if let Some(next) = residual.checked_sub(p) {
                if self.reachable_zero(&next, failed) {
                    return true;
                }
            }
        }
        failed.insert(residual.0.clone());
        false
    }
}

/// A finite union of linear sets; components kept sorted and deduplicated
/// (syntactic canonicalization only — no semantic minimization).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SemilinearSet {
    dim: usize,
    components: Vec<LinearSet>,
}

impl SemilinearSet {
    pub fn empty(dim: usize) -> Self {
        SemilinearSet {
            dim,
            components: Vec::new(),
        }
    }

    /// The singleton {0⃗}.
    pub fn zero_point(dim: usize) -> Self {
        Self::from_components(dim, vec![LinearSet::point(ParikhVector::zero(dim))])
            .expect("dimensions agree")
    }

    pub fn from_components(dim: usize, components: Vec<LinearSet>) -> Result<Self> {
        for c in &components {
            if c.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: c.dim(),
                });
            }
        }
        let mut components = components;
        components.sort();
        components.dedup();
        Ok(SemilinearSet { dim, components })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn components(&self) -> &[LinearSet] {
        &self.components
    }

    pub fn is_empty_set(&self) -> bool {
        self.components.is_empty()
    }
}

pub fn sl_member(s: &SemilinearSet, x: &ParikhVector) -> Result<bool> {
    if x.dim() != s.dim {
        return Err(Error::DimensionMismatch {
            expected: s.dim,
            got: x.dim(),
        });
    }
    Ok(s.components.iter().any(|c| c.contains(x)))
}

pub fn sl_union(s1: &SemilinearSet, s2: &SemilinearSet) -> Result<SemilinearSet> {
    if s1.dim != s2.dim {
        return Err(Error::DimensionMismatch {
            expected: s1.dim,
            got: s2.dim,
        });
    }
    let mut components = s1.components.clone();
    components.extend(s2.components.iter().cloned());
    SemilinearSet::from_components(s1.dim, components)
}

/// Minkowski sum: pairwise Linear(b+b′, P ∪ P′). This is the ψ-image of a
/// shuffle, since ψ(u ⧢ v) = ψ(u) + ψ(v).
pub fn sl_sum(s1: &SemilinearSet, s2: &SemilinearSet) -> Result<SemilinearSet> {
    if s1.dim != s2.dim {
        return Err(Error::DimensionMismatch {
            expected: s1.dim,
            got: s2.dim,
        });
    }
    let mut components = Vec::with_capacity(s1.components.len() * s2.components.len());
    for a in &s1.components {
        for b in &s2.components {
            let mut periods = a.periods.clone();
            periods.extend(b.periods.iter().cloned());
            components.push(LinearSet::new(a.base.add(&b.base), periods)?);
        }
    }
    SemilinearSet::from_components(s1.dim, components)
}

/// ψ-image of iterated shuffle. The star of a single linear set L(c;P) is
/// {0⃗} ∪ L(c; P∪{c}); the star of a union is the sum of the component
/// stars, and distributing the sums over the per-component two-way unions
/// yields one component per subset of the input components.
pub fn sl_star(s: &SemilinearSet) -> Result<SemilinearSet> {
    let k = s.components.len();
    if k < 64 && (1u64 << k) as usize > STAR_COMPONENT_CAP || k >= 64 {
        return Err(Error::CapExceeded(format!(
            "sl_star would produce 2^{k} components (cap {STAR_COMPONENT_CAP})"
        )));
    }
    let mut components = Vec::with_capacity(1 << k);
    for mask in 0u64..(1u64 << k) {
        let mut base = ParikhVector::zero(s.dim);
        let mut periods: Vec<ParikhVector> = Vec::new();
        for (i, c) in s.components.iter().enumerate() {
            if mask & (1 << i) != 0 {
                base = base.add(&c.base);
                periods.extend(c.periods.iter().cloned());
                periods.push(c.base.clone());
            }
        }
        components.push(LinearSet::new(base, periods)?);
    }
    SemilinearSet::from_components(s.dim, components)
}

/// Compiles a shuffle expression (no Concat/Star nodes) to the ψ-image of
/// its language: ∅→∅, ε→{0⃗}, atom→{ψ(word)}, Union→sl_union,
/// Shuffle→sl_sum, IterShuffle→sl_star.
pub fn alpha_shuf_to_semilinear(e: &Expr) -> Result<SemilinearSet> {
    if !crate::expr::is_shuf(e) {
        return Err(Error::FlavorMismatch(
            "semilinear compilation requires a shuffle expression (no `.`/`*`); convert with regex_to_alpha_shuf first".into(),
        ));
    }
    let dim = e.alphabet().len();
    fn go(n: &Node, dim: usize) -> Result<SemilinearSet> {
        match n {
            Node::EmptySet => Ok(SemilinearSet::empty(dim)),
            Node::Epsilon => Ok(SemilinearSet::zero_point(dim)),
            Node::Atom(w) => {
                let mut v = ParikhVector::zero(dim);
                for &s in w {
                    v.0[s as usize] += 1;
                }
                SemilinearSet::from_components(dim, vec![LinearSet::point(v)])
            }
            Node::Union(l, r) => sl_union(&go(l, dim)?, &go(r, dim)?),
            Node::Shuffle(l, r) => sl_sum(&go(l, dim)?, &go(r, dim)?),
            Node::IterShuffle(x) => sl_star(&go(x, dim)?),
            Node::Concat(_, _) | Node::Star(_) => unreachable!("checked above"),
        }
    }
    go(e.node(), dim)
}

/// The normal-form expression ⋃ᵢ Fᵢ ⧢ Gᵢ^{⧢,*}: per component, Fᵢ is the
/// letterized shuffle of the canonical word for the base and Gᵢ the union
/// of letterized canonical words of the periods. Star height ≤ 1.
pub fn semilinear_to_normalform(s: &SemilinearSet, alphabet: &Alphabet) -> Result<Expr> {
    if s.dim != alphabet.len() {
        return Err(Error::DimensionMismatch {
            expected: alphabet.len(),
            got: s.dim,
        });
    }
    let vector_expr = |v: &ParikhVector| -> Expr {
        let w = v.canonical_word(alphabet);
        if w.is_empty() {
            Expr::epsilon(alphabet.clone())
        } else {
            let mut it = w.indices().iter();
            let mut acc = Expr::letter(alphabet.clone(), *it.next().expect("non-empty"));
            for &s in it {
                acc = acc
                    .shuffle(Expr::letter(alphabet.clone(), s))
                    .expect("same alphabet");
            }
            acc
        }
    };
    let mut terms = Vec::new();
    for c in &s.components {
        let f = vector_expr(&c.base);
        let term = if c.periods.is_empty() {
            f
        } else {
            let g = Expr::union_all(
                alphabet.clone(),
                c.periods.iter().map(&vector_expr).collect::<Vec<_>>(),
            )?;
            f.shuffle(g.iter_shuffle())?
        };
        terms.push(term);
    }
    Expr::union_all(alphabet.clone(), terms)
}

/// ψ-image of the JFA language of a finite machine, via state elimination
/// (regular expression), the `.`→`&`/`*`→`&*` rewrite, and compilation.
pub fn nfa_to_semilinear(m: &Machine) -> Result<SemilinearSet> {
    let regex = machine_to_regex(m);
    let alpha = crate::expr::regex_to_alpha_shuf(&regex)?;
    alpha_shuf_to_semilinear(&alpha)
}

/// One linear component whose periods are all axis-parallel: base ψ(wᵢ)
/// plus steps of n(a) in the coordinate of each symbol a in its support.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PeriodicLinear {
    pub base: ParikhVector,
    /// symbol index → positive step size n(a).
    pub unit_periods: BTreeMap<usize, u64>,
}

/// Syntactic check for the JFA ∩ REG shape: every period of every component
/// supported on a single coordinate, at most one period per coordinate.
/// `None` means "not in this syntactic form" — not a proof of
/// non-regularity (deciding that is NP-hard).
pub fn is_periodic_form(s: &SemilinearSet) -> Option<Vec<PeriodicLinear>> {
    let mut out = Vec::with_capacity(s.components.len());
    for c in &s.components {
        let mut unit_periods = BTreeMap::new();
        for p in &c.periods {
            let support: Vec<usize> = (0..p.dim()).filter(|&i| p.0[i] > 0).collect();
            let [coord] = support[..] else {
                return None;
            };
            if unit_periods.insert(coord, p.0[coord]).is_some() {
                return None;
            }
        }
        out.push(PeriodicLinear {
            base: c.base.clone(),
            unit_periods,
        });
    }
    Some(out)
}

/// Membership agreement on every vector of the box [0,b₁]×…×[0,b_k].
/// A bounded oracle, not a decision procedure.
pub fn sl_bounded_equal(s1: &SemilinearSet, s2: &SemilinearSet, bounds: &[u64]) -> Result<bool> {
    if s1.dim != s2.dim {
        return Err(Error::DimensionMismatch {
            expected: s1.dim,
            got: s2.dim,
        });
    }
    if bounds.len() != s1.dim {
        return Err(Error::DimensionMismatch {
            expected: s1.dim,
            got: bounds.len(),
        });
    }
    let points = box_points(bounds);
    let disagreements = filter_items(points, |v| {
        let x = ParikhVector(v.clone());
        s1.components.iter().any(|c| c.contains(&x)) != s2.components.iter().any(|c| c.contains(&x))
    });
    Ok(disagreements.is_empty())
}

/// All integer points of the box, in lexicographic order.
pub fn box_points(bounds: &[u64]) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for &b in bounds {
        let mut next = Vec::with_capacity(out.len() * (b as usize + 1));
        for prefix in &out {
            for v in 0..=b {
                let mut p = prefix.clone();
                p.push(v);
                next.push(p);
            }
        }
        out = next;
    }
    out
}

// ---------------------------------------------------------------------------
// Text format
// ---------------------------------------------------------------------------

/// Prints the text format:
/// ```text
/// alphabet: a b c
/// base: 1 0 2 ; periods: (1 1 0) (0 0 3)
/// ```
pub fn print_semilinear(s: &SemilinearSet, alphabet: &Alphabet) -> String {
    let mut out = String::new();
    out.push_str("alphabet:");
    for sym in alphabet.symbols() {
        out.push(' ');
        out.push_str(sym);
    }
    out.push('\n');
    let nums = |v: &ParikhVector| {
        v.0.iter()
            .map(u64::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    };
    for c in &s.components {
        out.push_str(&format!("base: {} ; periods:", nums(&c.base)));
        for p in &c.periods {
            out.push_str(&format!(" ({})", nums(p)));
        }
        out.push('\n');
    }
    out
}

/// Parses the text format; `#` starts a comment.
pub fn parse_semilinear(text: &str) -> Result<(Alphabet, SemilinearSet)> {
    let mut alphabet: Option<Alphabet> = None;
    let mut components = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = crate::alphabet::strip_comment(raw).trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("alphabet:") {
            alphabet = Some(Alphabet::new(rest.split_whitespace())?);
            continue;
        }
        let Some(rest) = line.strip_prefix("base:") else {
            return Err(Error::syntax(
                lineno + 1,
                "expected an `alphabet:` or `base:` line",
            ));
        };
        let alphabet = alphabet
            .as_ref()
            .ok_or_else(|| Error::syntax(lineno + 1, "`alphabet:` line must come first"))?;
        let dim = alphabet.len();
        let (base_part, periods_part) = match rest.split_once(';') {
            Some((b, p)) => {
                let p = p.trim();
                let p = p.strip_prefix("periods:").ok_or_else(|| {
                    Error::syntax(lineno + 1, "expected `periods:` after `;`")
                })?;
                (b, p)
            }
            None => (rest, ""),
        };
        let base = parse_vector(base_part, dim, lineno + 1)?;
        let mut periods = Vec::new();
        let mut remaining = periods_part.trim();
        while !remaining.is_empty() {
            let Some(stripped) = remaining.strip_prefix('(') else {
                return Err(Error::syntax(lineno + 1, "expected `(` starting a period"));
            };
            let Some((inner, rest)) = stripped.split_once(')') else {
                return Err(Error::syntax(lineno + 1, "unclosed `(` in periods"));
            };
            periods.push(parse_vector(inner, dim, lineno + 1)?);
            remaining = rest.trim();
        }
        components.push(LinearSet::new(base, periods)?);
    }
    let alphabet =
        alphabet.ok_or_else(|| Error::syntax(0, "missing `alphabet:` line"))?;
    let set = SemilinearSet::from_components(alphabet.len(), components)?;
    Ok((alphabet, set))
}

fn parse_vector(text: &str, dim: usize, lineno: usize) -> Result<ParikhVector> {
    let entries = text
        .split_whitespace()
        .map(|t| {
            t.parse::<u64>()
                .map_err(|_| Error::syntax(lineno, format!("bad number `{t}`")))
        })
        .collect::<Result<Vec<u64>>>()?;
    if entries.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: entries.len(),
        });
    }
    Ok(ParikhVector(entries))
}
