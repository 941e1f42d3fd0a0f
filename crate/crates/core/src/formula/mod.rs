//! Weighted LTL formulas.
//!
//! Negation only occurs on atoms, and conjunction is kept as a binary tree:
//! the product of a generalized monoid need not be associative, so nothing
//! here flattens `∧` implicitly. Subtrees are shared, so cloning is cheap.

mod fragment;
mod parse;
mod rewrite;

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::sync::Arc;

use crate::monoid::{Monoid, Weight};

pub use fragment::{
    is_boolean, is_restricted_step, is_rultl, is_step, is_trultl, FragmentReport,
};
pub use parse::{parse, ParseError};
pub use rewrite::{and_leaves, form_a, is_reduced, reduce, FormViolation};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Const(Weight),
    Atom(String),
    NegAtom(String),
    And(Arc<Formula>, Arc<Formula>),
    Or(Arc<Formula>, Arc<Formula>),
    Next(Arc<Formula>),
    Until(Arc<Formula>, Arc<Formula>),
    Always(Arc<Formula>),
}

impl Formula {
    pub fn constant(k: Weight) -> Self {
        Formula::Const(k)
    }

    /// The formula `true`, i.e. the constant `1` of `monoid`.
    pub fn tt(monoid: Monoid) -> Self {
        Formula::Const(monoid.one())
    }

    pub fn atom(name: impl Into<String>) -> Self {
        Formula::Atom(name.into())
    }

    pub fn neg_atom(name: impl Into<String>) -> Self {
        Formula::NegAtom(name.into())
    }

    pub fn and(l: Formula, r: Formula) -> Self {
        Formula::And(Arc::new(l), Arc::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Self {
        Formula::Or(Arc::new(l), Arc::new(r))
    }

    pub fn next(f: Formula) -> Self {
        Formula::Next(Arc::new(f))
    }

    pub fn until(l: Formula, r: Formula) -> Self {
        Formula::Until(Arc::new(l), Arc::new(r))
    }

    pub fn always(f: Formula) -> Self {
        Formula::Always(Arc::new(f))
    }

    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::Const(_) | Formula::Atom(_) | Formula::NegAtom(_) => vec![],
            Formula::Next(g) | Formula::Always(g) => vec![g],
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Until(l, r) => vec![l, r],
        }
    }

    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        1 + self.children().iter().map(|c| c.depth()).max().unwrap_or(0)
    }

    /// Atomic propositions occurring in the formula, negated or not.
    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Atom(a) | Formula::NegAtom(a) => {
                out.insert(a.clone());
            }
            _ => self.children().into_iter().for_each(|c| c.collect_atoms(out)),
        }
    }

    /// `cl(f)`: the formula and all its subformulas, deduplicated, in
    /// post-order of first occurrence (children always precede parents, so
    /// `f` itself comes last).
    pub fn closure(&self) -> Vec<Formula> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        self.post_order(&mut seen, &mut out);
        out
    }

    fn post_order(&self, seen: &mut HashSet<Formula>, out: &mut Vec<Formula>) {
        if seen.contains(self) {
            return;
        }
        for c in self.children() {
            c.post_order(seen, out);
        }
        seen.insert(self.clone());
        out.push(self.clone());
    }

    /// Distinct until-subformulas in closure order.
    pub fn untils(&self) -> Vec<Formula> {
        self.closure()
            .into_iter()
            .filter(|g| matches!(g, Formula::Until(..)))
            .collect()
    }

    /// Displays `1` as `true`.
    pub fn pretty(&self, monoid: Monoid) -> Pretty<'_> {
        Pretty {
            formula: self,
            monoid: Some(monoid),
        }
    }
}

/// Fully parenthesized printer; the output parses back to the same tree.
pub struct Pretty<'a> {
    formula: &'a Formula,
    monoid: Option<Monoid>,
}

impl Pretty<'_> {
    fn sub<'b>(&self, f: &'b Formula) -> Pretty<'b> {
        Pretty {
            formula: f,
            monoid: self.monoid,
        }
    }
}

impl fmt::Display for Pretty<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.formula {
            Formula::Const(k) => match self.monoid {
                Some(m) if m.is_one(k) => f.write_str("true"),
                _ => write!(f, "{k}"),
            },
            Formula::Atom(a) => f.write_str(a),
            Formula::NegAtom(a) => write!(f, "!{a}"),
            Formula::And(l, r) => write!(f, "({} & {})", self.sub(l), self.sub(r)),
            Formula::Or(l, r) => write!(f, "({} | {})", self.sub(l), self.sub(r)),
            Formula::Until(l, r) => write!(f, "({} U {})", self.sub(l), self.sub(r)),
            Formula::Next(g) => write!(f, "(X {})", self.sub(g)),
            Formula::Always(g) => write!(f, "(G {})", self.sub(g)),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Pretty {
            formula: self,
            monoid: None,
        }
        .fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> Formula {
        Formula::atom("a")
    }
    fn b() -> Formula {
        Formula::atom("b")
    }

    #[test]
    fn closure_of_disjunction() {
        let f = Formula::or(a(), b());
        assert_eq!(f.closure(), vec![a(), b(), f.clone()]);
        let k = Formula::constant(Weight::int(3));
        assert_eq!(k.closure(), vec![k.clone()]);
    }

    #[test]
    fn closure_dedups_shared_subformulas() {
        let f = Formula::and(a(), Formula::next(a()));
        assert_eq!(f.closure(), vec![a(), Formula::next(a()), f.clone()]);
    }

    #[test]
    fn closure_of_until_example() {
        let two = Formula::constant(Weight::int(2));
        let three = Formula::constant(Weight::int(3));
        let phi = Formula::or(
            Formula::and(a(), two.clone()),
            Formula::and(b(), three.clone()),
        );
        let c = Formula::atom("c");
        let psi = Formula::until(phi.clone(), Formula::next(c.clone()));
        let cl = psi.closure();
        for g in [
            &psi,
            &phi,
            &Formula::and(a(), two.clone()),
            &Formula::and(b(), three.clone()),
            &a(),
            &two,
            &b(),
            &three,
            &Formula::next(c.clone()),
            &c,
        ] {
            assert!(cl.contains(g), "{g}");
        }
        assert_eq!(cl.len(), 10);
        assert_eq!(cl.last(), Some(&psi));
    }

    #[test]
    fn printing() {
        let m = Monoid::Tropical;
        let f = Formula::always(Formula::and(a(), Formula::tt(m)));
        assert_eq!(f.to_string(), "(G (a & 0))");
        assert_eq!(f.pretty(m).to_string(), "(G (a & true))");
        assert_eq!(Formula::neg_atom("a").to_string(), "!a");
        assert_eq!(
            Formula::until(a(), Formula::next(b())).to_string(),
            "(a U (X b))"
        );
    }
}
