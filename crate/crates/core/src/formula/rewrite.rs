//! Reduction to the canonical "reduced" shape and the form-A conjunct view.

use thiserror::Error;

use super::{is_boolean, Formula};
use crate::monoid::Monoid;

/// Leaves of the maximal conjunction tree rooted at `f`, left to right.
/// A formula that is not a conjunction is its own single leaf.
pub fn and_leaves(f: &Formula) -> Vec<&Formula> {
    fn go<'a>(f: &'a Formula, out: &mut Vec<&'a Formula>) {
        match f {
            Formula::And(l, r) => {
                go(l, out);
                go(r, out);
            }
            _ => out.push(f),
        }
    }
    let mut out = Vec::new();
    go(f, &mut out);
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("conjunction has {count} non-boolean conjuncts; at most one is allowed")]
pub struct FormViolation {
    pub count: usize,
}

/// The conjuncts `φ_1, …, φ_n` of `f = φ_1 ∧ … ∧ φ_n`, none of them a
/// conjunction, with at most one non-boolean conjunct.
pub fn form_a(f: &Formula, m: Monoid) -> Result<Vec<Formula>, FormViolation> {
    let leaves = and_leaves(f);
    let count = leaves.iter().filter(|g| !is_boolean(g, m)).count();
    if count > 1 {
        return Err(FormViolation { count });
    }
    Ok(leaves.into_iter().cloned().collect())
}

/// Rewrites `f` to fixpoint with the equivalences
/// `○(φ∧ψ) ≡ ○φ∧○ψ`, `○(φ∨ψ) ≡ ○φ∨○ψ`, `○(φUψ) ≡ ○φ U ○ψ`, `○□φ ≡ □○φ`,
/// `○k ≡ k`, `φ∧true ≡ φ` and `ψ∧ψ ≡ ψ` for boolean `ψ`.
///
/// Within a conjunction tree the first occurrence of a boolean conjunct is kept
/// and later copies are dropped; the surviving conjuncts keep their positions.
pub fn reduce(f: &Formula, m: Monoid) -> Formula {
    let mut cur = f.clone();
    loop {
        let next = pass(&cur, m);
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

/// `f` is reduced when [`reduce`] leaves it unchanged.
pub fn is_reduced(f: &Formula, m: Monoid) -> bool {
    reduce(f, m) == *f
}

fn pass(f: &Formula, m: Monoid) -> Formula {
    match f {
        Formula::Const(_) | Formula::Atom(_) | Formula::NegAtom(_) => f.clone(),
        Formula::Next(g) => push_next(pass(g, m)),
        Formula::Or(l, r) => Formula::or(pass(l, m), pass(r, m)),
        Formula::Until(l, r) => Formula::until(pass(l, m), pass(r, m)),
        Formula::Always(g) => Formula::always(pass(g, m)),
        Formula::And(..) => simplify_conjunction(f, m),
    }
}

fn unwrap(f: std::sync::Arc<Formula>) -> Formula {
    std::sync::Arc::unwrap_or_clone(f)
}

fn push_next(g: Formula) -> Formula {
    match g {
        Formula::Const(k) => Formula::Const(k),
        Formula::And(l, r) => Formula::and(push_next(unwrap(l)), push_next(unwrap(r))),
        Formula::Or(l, r) => Formula::or(push_next(unwrap(l)), push_next(unwrap(r))),
        Formula::Until(l, r) => Formula::until(push_next(unwrap(l)), push_next(unwrap(r))),
        Formula::Always(h) => Formula::always(push_next(unwrap(h))),
        other => Formula::next(other),
    }
}

fn simplify_conjunction(f: &Formula, m: Monoid) -> Formula {
    let leaves: Vec<Formula> = and_leaves(f).into_iter().map(|g| pass(g, m)).collect();
    let mut kept: Vec<Option<Formula>> = Vec::with_capacity(leaves.len());
    for (i, g) in leaves.iter().enumerate() {
        let is_true = matches!(g, Formula::Const(k) if m.is_one(k));
        let dup = is_boolean(g, m) && kept[..i].iter().flatten().any(|h| h == g);
        kept.push(if is_true || dup { None } else { Some(g.clone()) });
    }
    let mut at = 0;
    rebuild(f, &kept, &mut at).unwrap_or_else(|| Formula::tt(m))
}

fn rebuild(shape: &Formula, leaves: &[Option<Formula>], at: &mut usize) -> Option<Formula> {
    match shape {
        Formula::And(l, r) => {
            let a = rebuild(l, leaves, at);
            let b = rebuild(r, leaves, at);
            match (a, b) {
                (Some(a), Some(b)) => Some(Formula::and(a, b)),
                (a, b) => a.or(b),
            }
        }
        _ => {
            let leaf = leaves[*at].clone();
            *at += 1;
            leaf
        }
    }
}
