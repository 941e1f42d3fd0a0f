//! Syntactic fragments.
//!
//! Which constants count as `0` and `true` depends on the monoid, so every
//! classifier takes it as an argument.

use serde::Serialize;

use super::{is_reduced, Formula};
use crate::monoid::Monoid;

/// Boolean formulas: built from `0`, `true`, literals and all operators.
pub fn is_boolean(f: &Formula, m: Monoid) -> bool {
    match f {
        Formula::Const(k) => m.is_zero(k) || m.is_one(k),
        Formula::Atom(_) | Formula::NegAtom(_) => true,
        Formula::Next(g) | Formula::Always(g) => is_boolean(g, m),
        Formula::And(l, r) | Formula::Or(l, r) | Formula::Until(l, r) => {
            is_boolean(l, m) && is_boolean(r, m)
        }
    }
}

fn disjuncts(f: &Formula) -> Vec<&Formula> {
    match f {
        Formula::Or(l, r) => {
            let mut out = disjuncts(l);
            out.extend(disjuncts(r));
            out
        }
        _ => vec![f],
    }
}

/// `k ∧ φ` or `φ ∧ k` with `φ` boolean; returns `k`'s formula.
fn weighted_disjunct<'a>(f: &'a Formula, m: Monoid) -> Option<&'a Formula> {
    match f {
        Formula::And(l, r) => match (&**l, &**r) {
            (k @ Formula::Const(_), phi) | (phi, k @ Formula::Const(_)) if is_boolean(phi, m) => {
                Some(k)
            }
            _ => None,
        },
        _ => None,
    }
}

/// Step formulas: disjunctions of `k ∧ φ` (either order) with `φ` boolean.
/// Boolean formulas are step formulas with `k = true`.
pub fn is_step(f: &Formula, m: Monoid) -> bool {
    is_boolean(f, m)
        || disjuncts(f)
            .into_iter()
            .all(|d| is_boolean(d, m) || weighted_disjunct(d, m).is_some())
}

/// Restricted step formulas: every disjunct carries a constant outside `{0, 1}`.
pub fn is_restricted_step(f: &Formula, m: Monoid) -> bool {
    disjuncts(f).into_iter().all(|d| match weighted_disjunct(d, m) {
        Some(Formula::Const(k)) => !m.is_zero(k) && !m.is_one(k),
        _ => false,
    })
}

/// Restricted U-nesting formulas.
pub fn is_rultl(f: &Formula, m: Monoid) -> bool {
    if is_boolean(f, m) {
        return true;
    }
    match f {
        Formula::Const(_) => true,
        Formula::Atom(_) | Formula::NegAtom(_) => true,
        Formula::Next(g) => is_rultl(g, m),
        Formula::Or(l, r) => is_rultl(l, m) && is_rultl(r, m),
        Formula::And(l, r) => {
            (is_boolean(l, m) && is_rultl(r, m)) || (is_rultl(l, m) && is_boolean(r, m))
        }
        Formula::Until(l, r) => is_step(l, m) && is_step(r, m),
        Formula::Always(g) => is_step(g, m),
    }
}

fn trultl_conjunct(f: &Formula, m: Monoid) -> bool {
    is_restricted_step(f, m)
        || is_boolean(f, m)
        || match f {
            Formula::Until(l, r) => is_restricted_step(l, m) && is_restricted_step(r, m),
            Formula::Always(g) => is_restricted_step(g, m),
            _ => false,
        }
}

/// Totally restricted U-nesting formulas.
pub fn is_trultl(f: &Formula, m: Monoid) -> bool {
    if is_boolean(f, m) {
        return true;
    }
    match f {
        Formula::Const(_) => true,
        Formula::Atom(_) | Formula::NegAtom(_) => true,
        Formula::Next(g) => is_trultl(g, m),
        Formula::Or(l, r) => is_trultl(l, m) && is_trultl(r, m),
        Formula::And(l, r) => {
            (is_boolean(l, m) && trultl_conjunct(r, m))
                || (trultl_conjunct(l, m) && is_boolean(r, m))
        }
        Formula::Until(l, r) => is_restricted_step(l, m) && is_restricted_step(r, m),
        Formula::Always(g) => is_restricted_step(g, m),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FragmentReport {
    pub is_boolean: bool,
    pub is_step: bool,
    pub is_restricted_step: bool,
    #[serde(rename = "isRULTL")]
    pub is_rultl: bool,
    #[serde(rename = "isTRULTL")]
    pub is_trultl: bool,
    pub is_reduced: bool,
}

impl FragmentReport {
    pub fn classify(f: &Formula, m: Monoid) -> Self {
        FragmentReport {
            is_boolean: is_boolean(f, m),
            is_step: is_step(f, m),
            is_restricted_step: is_restricted_step(f, m),
            is_rultl: is_rultl(f, m),
            is_trultl: is_trultl(f, m),
            is_reduced: is_reduced(f, m),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;

    fn report(s: &str, m: Monoid) -> FragmentReport {
        let ap: Vec<String> = ["a", "b", "c", "d"].iter().map(|s| s.to_string()).collect();
        FragmentReport::classify(&parse(s, &ap, m).unwrap(), m)
    }

    #[test]
    fn examples() {
        let t = Monoid::Tropical;
        let r = report("a | b", t);
        assert!(r.is_rultl && r.is_boolean && r.is_step);
        assert!(!report("G(G(a & 2))", t).is_rultl);
        assert!(!report("((a & 2) U c) U d", t).is_rultl);
        let r = report("G(a & 2)", Monoid::Liminf);
        assert!(r.is_trultl && r.is_rultl && !r.is_boolean);
    }

    #[test]
    fn step_formulas() {
        let t = Monoid::Tropical;
        assert!(report("(a & 2) | (3 & b)", t).is_restricted_step);
        assert!(report("(a & 2) | b", t).is_step);
        assert!(!report("(a & 2) | b", t).is_restricted_step);
        // the constant must be outside {0, 1}
        assert!(!report("a & true", t).is_restricted_step);
        assert!(!report("a & inf", t).is_restricted_step);
        assert!(!report("2", t).is_step);
        assert!(!report("(a & 2) & b", t).is_step);
        assert!(report("((a U b) & 2)", t).is_step);
    }

    #[test]
    fn rultl_shapes() {
        let t = Monoid::Tropical;
        assert!(report("((a & 2) | (b & 3)) U (X c)", t).is_rultl);
        assert!(report("X ((a & 2) U b)", t).is_rultl);
        assert!(report("(G (a & 2)) & b", t).is_rultl);
        assert!(!report("(G (a & 2)) & (b & 2)", t).is_rultl);
        assert!(!report("(2 U a) & b", t).is_rultl);
        assert!(report("2 | (G(a & 3))", t).is_rultl);
    }

    #[test]
    fn trultl_is_stricter() {
        let l = Monoid::Liminf;
        assert!(report("(a & 2) U (b & 3)", l).is_trultl);
        assert!(!report("a U (b & 3)", l).is_trultl);
        assert!(report("a U (b & 3)", l).is_rultl);
        assert!(report("c & (G (a & 2))", l).is_trultl);
        // only restricted shapes may sit next to a boolean conjunct
        assert!(!report("c & X(a & 2)", l).is_trultl);
        assert!(report("c & X(a & 2)", l).is_rultl);
        assert!(!report("c & ((a & 2) & (b & 3))", l).is_rultl);
        assert!(report("X (c & (G (a & -3)))", l).is_trultl);
    }
}
