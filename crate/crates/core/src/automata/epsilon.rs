//! ε-removal for automata with a single final set.
//!
//! Both constructions sum, for every letter `a`, the weights of the bracketed
//! moves `q →* q̃ –a→ q̄ →* q'`. Over a product monoid the sum can be taken
//! as is. Over a generalized monoid `Val^ω` only distributes over sums of
//! weights outside `{0, 1}`, so `1`-moves are routed through decoy states.

use std::collections::{BTreeMap, BTreeSet};

use super::{Automaton, AutomatonError, Symbol};
use crate::monoid::{MonoidKind, Weight};

/// Removes ε-transitions, choosing the construction by the monoid kind.
pub fn remove_epsilon(a: &Automaton) -> Result<Automaton, AutomatonError> {
    match a.monoid.kind() {
        MonoidKind::Product => remove_epsilon_product(a),
        MonoidKind::Generalized => remove_epsilon_generalized(a),
    }
}

fn check(a: &Automaton) -> Result<(), AutomatonError> {
    a.ensure_valid()?;
    match a.final_family.len() {
        1 => Ok(()),
        l => Err(AutomatonError::WrongKind(l)),
    }
}

/// The bracketed moves `q →* q̃ –a→ q̄ →* q'` from one `q`, split into
/// whether some weighs `1` and the sum of those outside `{0, 1}`.
#[derive(Default)]
struct Bracket {
    one: bool,
    proper: Option<Weight>,
}

/// Calls `emit(q, a, q', bracket)` for every `q` in turn; brackets are
/// aggregated per source state so memory stays proportional to the output.
fn bracketed(a: &Automaton, mut emit: impl FnMut(usize, u32, usize, Bracket)) {
    let m = a.monoid;
    let n = a.num_states();
    let closures: Vec<BTreeSet<usize>> = (0..n).map(|q| a.epsilon_closure(q)).collect();
    for (q, cl) in closures.iter().enumerate() {
        let mut acc: BTreeMap<(u32, usize), Bracket> = BTreeMap::new();
        for &qt in cl {
            let lo = (qt, Symbol::Letter(0), 0);
            let hi = (qt, Symbol::Letter(u32::MAX), usize::MAX);
            for (&(_, s, qb), w) in a.weights.range(lo..=hi) {
                let Symbol::Letter(l) = s else { continue };
                for &q2 in &closures[qb] {
                    let b = acc.entry((l, q2)).or_default();
                    if m.is_one(w) {
                        b.one = true;
                    } else if !m.is_zero(w) {
                        b.proper = Some(match &b.proper {
                            Some(old) => m.plus(old, w),
                            None => w.clone(),
                        });
                    }
                }
            }
        }
        for ((l, q2), b) in acc {
            emit(q, l, q2, b);
        }
    }
}

/// Same states, initial and final sets; letter weights summed over
/// ε-bracketed moves.
pub fn remove_epsilon_product(a: &Automaton) -> Result<Automaton, AutomatonError> {
    check(a)?;
    let m = a.monoid;
    let mut out = Automaton::new(m, a.ap.clone(), a.labels.clone());
    out.initial = a.initial.clone();
    out.final_family = a.final_family.clone();
    bracketed(a, |q, l, q2, b| {
        let one = if b.one { m.one() } else { m.zero() };
        let w = b.proper.map_or(one.clone(), |k| m.plus(&k, &one));
        out.set_weight(q, Symbol::Letter(l), q2, w);
    });
    Ok(out)
}

/// Triples the state space: every state `q` gets two decoys, `s_q`
/// (index `n + q`) and `t_q` (index `2n + q`).
///
/// The copy a run is in records how it got there: `s_q` after a `1`-move,
/// `t_q` after an aggregated move that a `1`-move will follow, `q` after an
/// aggregated move that another aggregated move will follow. So `1`-moves
/// lead from decoys to `s`-decoys with weight `1`, and every copy moves to
/// `q'` and `t_q'` with the sum of the bracketed weights outside `{0, 1}`.
/// Each position of a run then sums a set that is entirely `1` or entirely
/// outside `{0, 1}`, which is where `Val^ω` distributes; and any
/// interleaving of the two kinds of move has a run. Two copies do not
/// suffice: a `1`-move, an aggregated move and a `1`-move in a row would need
/// both weights on one decoy-to-decoy edge.
pub fn remove_epsilon_generalized(a: &Automaton) -> Result<Automaton, AutomatonError> {
    check(a)?;
    let m = a.monoid;
    let n = a.num_states();
    let s = |q: usize| n + q;
    let t = |q: usize| 2 * n + q;
    let labels = a
        .labels
        .iter()
        .cloned()
        .chain(a.labels.iter().map(|l| format!("s{l}")))
        .chain(a.labels.iter().map(|l| format!("t{l}")))
        .collect();
    let mut out = Automaton::new(m, a.ap.clone(), labels);
    let copies = |set: &BTreeSet<usize>| set.iter().flat_map(|&q| [q, s(q), t(q)]).collect();
    out.initial = copies(&a.initial);
    out.final_family = vec![copies(&a.final_family[0])];
    bracketed(a, |q, l, q2, b| {
        let sym = Symbol::Letter(l);
        if b.one {
            for p in [s(q), t(q)] {
                out.set_weight(p, sym, s(q2), m.one());
            }
        }
        if let Some(w) = b.proper {
            for p in [q, s(q), t(q)] {
                for p2 in [q2, t(q2)] {
                    out.set_weight(p, sym, p2, w.clone());
                }
            }
        }
    });
    Ok(out)
}
