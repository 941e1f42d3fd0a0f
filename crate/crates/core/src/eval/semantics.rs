//! The semantics `(‖φ‖, w)` on a lasso word, by structural induction.

use std::collections::HashMap;

use super::LassoWord;
use crate::formula::Formula;
use crate::monoid::{Monoid, UltPeriodic, Weight};

/// Multiplier of the until horizon `|u| + 3|v|` used by [`eval_semantics`].
pub const HORIZON_FACTOR: usize = 1;

/// `(‖f‖, w)` over `m`. Atoms missing from a letter are false there.
pub fn eval_semantics(f: &Formula, w: &LassoWord, m: Monoid) -> Weight {
    eval_semantics_with(f, w, m, HORIZON_FACTOR)
}

/// As [`eval_semantics`], summing every until over the first
/// `factor · (|u| + 3|v|)` split points.
///
/// The sum over all split points is reached within one factor: past the
/// first wrap through the period the ψ-values repeat while the prefix values
/// can only move away from the optimum (prefix sums grow in the tropical
/// monoid, running minima shrink in the liminf one).
pub fn eval_semantics_with(f: &Formula, w: &LassoWord, m: Monoid, factor: usize) -> Weight {
    let mut memo: HashMap<Formula, Vec<Weight>> = HashMap::new();
    for g in f.closure() {
        let vals = values(&g, w, m, factor, &memo);
        memo.insert(g, vals);
    }
    memo[f][0].clone()
}

/// The value of `g` at every position, given the values of its children.
fn values(
    g: &Formula,
    w: &LassoWord,
    m: Monoid,
    factor: usize,
    memo: &HashMap<Formula, Vec<Weight>>,
) -> Vec<Weight> {
    let n = w.len();
    let bool_at = |b: bool| if b { m.one() } else { m.zero() };
    let of = |h: &Formula| &memo[h];
    match g {
        Formula::Const(k) => vec![k.clone(); n],
        Formula::Atom(a) => (0..n).map(|i| bool_at(w.letter(i).contains(a))).collect(),
        Formula::NegAtom(a) => (0..n).map(|i| bool_at(!w.letter(i).contains(a))).collect(),
        Formula::And(l, r) => {
            let (l, r) = (of(l), of(r));
            (0..n).map(|i| m.times(&l[i], &r[i])).collect()
        }
        Formula::Or(l, r) => {
            let (l, r) = (of(l), of(r));
            (0..n).map(|i| m.plus(&l[i], &r[i])).collect()
        }
        Formula::Next(h) => {
            let h = of(h);
            (0..n).map(|i| h[w.succ(i)].clone()).collect()
        }
        Formula::Always(h) => {
            let h = of(h);
            let s = w.stem().len();
            (0..n)
                .map(|i| {
                    let seq = UltPeriodic::new(h[i..].to_vec(), h[s..].to_vec())
                        .expect("period is non-empty");
                    m.val_omega(&seq)
                })
                .collect()
        }
        Formula::Until(l, r) => {
            let (l, r) = (of(l), of(r));
            let horizon = factor * (n + 2 * w.period().len());
            (0..n)
                .map(|i| {
                    let mut total = m.zero();
                    let mut prefix = Vec::with_capacity(horizon + 1);
                    let mut j = i;
                    for _ in 0..horizon {
                        prefix.push(r[j].clone());
                        let term = m.val_omega_prefix(&prefix);
                        total = m.plus(&total, &term);
                        prefix.pop();
                        prefix.push(l[j].clone());
                        j = w.succ(j);
                    }
                    total
                })
                .collect()
        }
    }
}
