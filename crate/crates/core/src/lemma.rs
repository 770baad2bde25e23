//! Proof-search mirror that derives zero and diagonal facts about each
//! party's POVM element, one state pair at a time.
//!
//! Per party `t` the engine runs three phases:
//!
//! 1. **Zero entries.** A pair whose party-`t` factors are single basis kets
//!    `|a⟩`, `|b⟩` (`a != b`) and whose other factors are all nonzero forces
//!    `m[a,b] = 0`.
//! 2. **Unit propagation.** A pair constraint `Σ u_a v_b m[a,b] = 0` in which
//!    every term but one off-diagonal entry is already known to vanish forces
//!    that entry to zero. Repeated to a fixpoint.
//! 3. **Diagonal links.** Once every off-diagonal entry is zero, a state whose
//!    party-`t` factor is `|a - b⟩`, paired with the all-ones stopper, forces
//!    `m[a,a] = m[b,b]`.
//!
//! The party is certified trivial when all off-diagonal entries are zero and
//! the diagonal links connect every index. The engine is incomplete by
//! construction: an `Incomplete` verdict does not mean a nontrivial
//! measurement exists.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::tensor::{check_pairwise_orthogonality, inner_factors, StateSet, SystemShape};

/// Entry `m[row, col]` of party `party`'s POVM element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EntryRef {
    pub party: usize,
    pub row: usize,
    pub col: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Rule {
    Lemma1,
    Lemma2,
    UnitPropagation,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Rule::Lemma1 => "Lemma1",
            Rule::Lemma2 => "Lemma2",
            Rule::UnitPropagation => "UnitPropagation",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FactKind {
    ZeroEntry(EntryRef),
    DiagonalEqual { party: usize, a: usize, b: usize },
}

/// A derived fact and the ordered state pair that forced it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fact {
    pub kind: FactKind,
    pub states: (usize, usize),
    pub rule: Rule,
}

impl Fact {
    pub fn party(&self) -> usize {
        match self.kind {
            FactKind::ZeroEntry(e) => e.party,
            FactKind::DiagonalEqual { party, .. } => party,
        }
    }

    /// One-line rendering using the set's state labels.
    pub fn render(&self, set: &StateSet) -> String {
        let (i, j) = self.states;
        let (li, lj) = (set.label_of(i), set.label_of(j));
        match self.kind {
            FactKind::ZeroEntry(e) => format!(
                "party={} m[{},{}]=0 via states ({li},{lj}) rule={}",
                e.party, e.row, e.col, self.rule
            ),
            FactKind::DiagonalEqual { party, a, b } => {
                format!(
                    "party={party} m[{a},{a}]=m[{b},{b}] via ({li},{lj}) rule={}",
                    self.rule
                )
            }
        }
    }
}

/// Nonzero term `coeff · m[row, col]` of a pair constraint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub row: usize,
    pub col: usize,
    pub coeff: BigInt,
}

/// `Σ u_a v_b m[a,b] = 0` for a pair whose other-party factors are nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairConstraint {
    pub party: usize,
    pub pair: (usize, usize),
    pub terms: Vec<Term>,
}

/// Off-diagonal entries of one party known to vanish (closed under transpose).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnownZeros {
    dim: usize,
    mask: Vec<bool>,
}

impl KnownZeros {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            mask: vec![false; dim * dim],
        }
    }

    /// Every off-diagonal entry marked zero.
    pub fn all(dim: usize) -> Self {
        let mut z = Self::new(dim);
        for a in 0..dim {
            for b in 0..dim {
                if a != b {
                    z.mask[a * dim + b] = true;
                }
            }
        }
        z
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.mask[a * self.dim + b]
    }

    /// Returns `true` if the entry was not known before.
    pub fn insert(&mut self, a: usize, b: usize) -> bool {
        assert_ne!(a, b, "diagonal entries are never forced to zero");
        let fresh = !self.contains(a, b);
        self.mask[a * self.dim + b] = true;
        self.mask[b * self.dim + a] = true;
        fresh
    }

    /// Unknown off-diagonal entries as `(a, b)` with `a < b`.
    pub fn missing(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.dim {
            for b in a + 1..self.dim {
                if !self.contains(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn is_complete(&self) -> bool {
        self.missing().is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PartyConclusion {
    Trivial,
    Incomplete {
        /// Off-diagonal entries `(a, b)`, `a < b`, not shown to vanish.
        missing_zeros: Vec<(usize, usize)>,
        /// Equivalence classes of diagonal indices linked so far.
        diagonal_classes: Vec<Vec<usize>>,
    },
}

impl PartyConclusion {
    pub fn is_trivial(&self) -> bool {
        matches!(self, PartyConclusion::Trivial)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub shape: SystemShape,
    pub facts: Vec<Fact>,
    pub conclusions: Vec<PartyConclusion>,
}

impl Certificate {
    pub fn all_trivial(&self) -> bool {
        self.conclusions.iter().all(PartyConclusion::is_trivial)
    }

    pub fn facts_for(&self, party: usize) -> impl Iterator<Item = &Fact> {
        self.facts.iter().filter(move |f| f.party() == party)
    }

    /// Text form: one line per fact, then one verdict line per party.
    pub fn render(&self, set: &StateSet) -> String {
        let mut out = String::new();
        for f in &self.facts {
            out.push_str(&f.render(set));
            out.push('\n');
        }
        for (t, c) in self.conclusions.iter().enumerate() {
            out.push_str(&render_conclusion(t, c));
            out.push('\n');
        }
        out
    }
}

pub fn render_conclusion(party: usize, c: &PartyConclusion) -> String {
    match c {
        PartyConclusion::Trivial => format!("party={party} verdict=Trivial"),
        PartyConclusion::Incomplete {
            missing_zeros,
            diagonal_classes,
        } => {
            let missing: Vec<String> = missing_zeros
                .iter()
                .map(|(a, b)| format!("m[{a},{b}]"))
                .collect();
            let classes: Vec<String> = diagonal_classes
                .iter()
                .map(|c| {
                    format!(
                        "{{{}}}",
                        c.iter()
                            .map(|x| x.to_string())
                            .collect::<Vec<_>>()
                            .join(",")
                    )
                })
                .collect();
            format!(
                "party={party} verdict=Incomplete missing=[{}] diagonal_classes=[{}]",
                missing.join(","),
                classes.join(",")
            )
        }
    }
}

fn check_pair(set: &StateSet, i: usize, j: usize, t: usize) -> Result<()> {
    let len = set.len();
    if i >= len || j >= len {
        return Err(Error::IndexOutOfRange(format!(
            "state pair ({i},{j}) in a set of {len}"
        )));
    }
    if i == j {
        return Err(Error::IndexOutOfRange(format!(
            "state pair ({i},{j}) must be distinct"
        )));
    }
    let n = set.shape().parties();
    if t >= n {
        return Err(Error::IndexOutOfRange(format!(
            "party {t} (set has {n} parties)"
        )));
    }
    Ok(())
}

/// The constraint `u^T E_t v = 0` imposed by states `i`, `j` on party `t`,
/// or `None` when the pair is already orthogonal on another party.
pub fn pair_constraint(
    set: &StateSet,
    i: usize,
    j: usize,
    t: usize,
) -> Result<Option<PairConstraint>> {
    check_pair(set, i, j, t)?;
    let (a, b) = (&set.states()[i], &set.states()[j]);
    let factors = inner_factors(a, b)?;
    if factors
        .iter()
        .enumerate()
        .any(|(k, f)| k != t && f.is_zero())
    {
        return Ok(None);
    }
    let (u, v) = (a.local(t).coeffs(), b.local(t).coeffs());
    let mut terms = Vec::new();
    for (row, &x) in u.iter().enumerate().filter(|(_, &x)| x != 0) {
        for (col, &y) in v.iter().enumerate().filter(|(_, &y)| y != 0) {
            terms.push(Term {
                row,
                col,
                coeff: BigInt::from(x) * BigInt::from(y),
            });
        }
    }
    Ok(Some(PairConstraint {
        party: t,
        pair: (i, j),
        terms,
    }))
}

/// Zero-entry rule for two single-support party-`t` factors.
pub fn lemma1_zero(set: &StateSet, i: usize, j: usize, t: usize) -> Result<Option<Fact>> {
    Ok(pair_constraint(set, i, j, t)?.and_then(|c| lemma1_from(&c)))
}

fn lemma1_from(c: &PairConstraint) -> Option<Fact> {
    match c.terms.as_slice() {
        [only] if only.row != only.col => Some(Fact {
            kind: FactKind::ZeroEntry(EntryRef {
                party: c.party,
                row: only.row,
                col: only.col,
            }),
            states: c.pair,
            rule: Rule::Lemma1,
        }),
        _ => None,
    }
}

/// Diagonal-equality rule for state `i` against the stopper at `stopper_index`.
///
/// Fails with [`Error::RuleInapplicable`] when `known_zeros` does not yet
/// cover every off-diagonal entry, or when `stopper_index` is not all-ones.
pub fn lemma2_diagonal(
    set: &StateSet,
    i: usize,
    stopper_index: usize,
    t: usize,
    known_zeros: &KnownZeros,
) -> Result<Option<Fact>> {
    check_pair(set, i, stopper_index, t)?;
    if known_zeros.dim() != set.shape().dim(t) || !known_zeros.is_complete() {
        return Err(Error::RuleInapplicable(format!(
            "off-diagonal entries of party {t} are not all known to vanish"
        )));
    }
    let (state, s) = (&set.states()[i], &set.states()[stopper_index]);
    if !s.is_all_ones() {
        return Err(Error::RuleInapplicable(format!(
            "state {stopper_index} is not the stopper"
        )));
    }
    let coeffs = state.local(t).coeffs();
    let support: Vec<(usize, i64)> = coeffs
        .iter()
        .copied()
        .enumerate()
        .filter(|(_, c)| *c != 0)
        .collect();
    let (a, b) = match support.as_slice() {
        [(x, 1), (y, -1)] => (*x, *y),
        [(x, -1), (y, 1)] => (*y, *x),
        _ => return Ok(None),
    };
    let factors = inner_factors(state, s)?;
    if factors
        .iter()
        .enumerate()
        .any(|(k, f)| k != t && f.is_zero())
    {
        return Ok(None);
    }
    Ok(Some(Fact {
        kind: FactKind::DiagonalEqual { party: t, a, b },
        states: (i, stopper_index),
        rule: Rule::Lemma2,
    }))
}

struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let p = self.parent[x];
        if p == x {
            return x;
        }
        let root = self.find(p);
        self.parent[x] = root;
        root
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    fn classes(&mut self) -> Vec<Vec<usize>> {
        let n = self.parent.len();
        let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); n];
        for x in 0..n {
            let r = self.find(x);
            by_root[r].push(x);
        }
        by_root.into_iter().filter(|c| !c.is_empty()).collect()
    }
}

fn derive_party(set: &StateSet, t: usize) -> Result<(Vec<Fact>, PartyConclusion)> {
    let d = set.shape().dim(t);
    let len = set.len();
    let mut constraints = Vec::new();
    for i in 0..len {
        for j in i + 1..len {
            if let Some(c) = pair_constraint(set, i, j, t)? {
                constraints.push(c);
            }
        }
    }

    let mut facts = Vec::new();
    let mut zeros = KnownZeros::new(d);

    for c in &constraints {
        if let Some(f) = lemma1_from(c) {
            if let FactKind::ZeroEntry(e) = f.kind {
                if zeros.insert(e.row, e.col) {
                    facts.push(f);
                }
            }
        }
    }

    loop {
        let mut changed = false;
        for c in &constraints {
            let mut open = c
                .terms
                .iter()
                .filter(|x| x.row == x.col || !zeros.contains(x.row, x.col));
            let (Some(only), None) = (open.next(), open.next()) else {
                continue;
            };
            if only.row != only.col && zeros.insert(only.row, only.col) {
                facts.push(Fact {
                    kind: FactKind::ZeroEntry(EntryRef {
                        party: t,
                        row: only.row,
                        col: only.col,
                    }),
                    states: c.pair,
                    rule: Rule::UnitPropagation,
                });
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    let mut diag = DisjointSets::new(d);
    if zeros.is_complete() {
        if let Some(s) = set.stopper_index() {
            for i in (0..len).filter(|&i| i != s) {
                if let Some(f) = lemma2_diagonal(set, i, s, t, &zeros)? {
                    if let FactKind::DiagonalEqual { a, b, .. } = f.kind {
                        if diag.union(a, b) {
                            facts.push(f);
                        }
                    }
                    continue;
                }
                // with every off-diagonal entry zero the constraint against
                // the stopper reads Σ_a u_a m[a,a] = 0
                let Some(c) = pair_constraint(set, i, s, t)? else {
                    continue;
                };
                let mut diagonal: Vec<(usize, BigInt)> = Vec::new();
                for term in c.terms.iter().filter(|x| x.row == x.col) {
                    diagonal.push((term.row, term.coeff.clone()));
                }
                if let [(a, ca), (b, cb)] = diagonal.as_slice() {
                    if *ca == -cb && diag.union(*a, *b) {
                        facts.push(Fact {
                            kind: FactKind::DiagonalEqual {
                                party: t,
                                a: *a,
                                b: *b,
                            },
                            states: (i, s),
                            rule: Rule::UnitPropagation,
                        });
                    }
                }
            }
        }
    }

    let classes = diag.classes();
    let conclusion = if zeros.is_complete() && classes.len() == 1 {
        PartyConclusion::Trivial
    } else {
        PartyConclusion::Incomplete {
            missing_zeros: zeros.missing(),
            diagonal_classes: classes,
        }
    };
    Ok((facts, conclusion))
}

/// Runs the three-phase derivation for every party.
pub fn derive_certificate(set: &StateSet) -> Result<Certificate> {
    let violations = check_pairwise_orthogonality(set);
    if !violations.is_empty() {
        return Err(Error::NotOrthogonal(violations));
    }
    let per_party: Vec<(Vec<Fact>, PartyConclusion)> = (0..set.shape().parties())
        .into_par_iter()
        .map(|t| derive_party(set, t))
        .collect::<Result<_>>()?;
    let mut facts = Vec::new();
    let mut conclusions = Vec::new();
    for (f, c) in per_party {
        facts.extend(f);
        conclusions.push(c);
    }
    Ok(Certificate {
        shape: set.shape().clone(),
        facts,
        conclusions,
    })
}
