//! From a reduced RULTL / t-RULTL formula to its ε-wgBa.
//!
//! States are consistent sets: every consistent set of the input formula
//! plus everything reachable from them. A reduced non-empty state moves on a
//! letter to each non-empty consistent set of one of its next formulas, and
//! every non-empty state steps by `ε` into the consistent sets of its
//! reduced anchor.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::automata::{Automaton, Symbol};
use crate::consistency::{next_table, CapExceeded, ConsistentSet, Explorer};
use crate::formula::{and_leaves, is_rultl, is_trultl, Formula};
use crate::monoid::{Monoid, MonoidKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TranslateError {
    #[error("formula is not reduced (its reduction is {0})")]
    NotReduced(String),
    #[error("formula is outside the fragment the {0} monoid supports")]
    FragmentMismatch(Monoid),
    #[error("proposition `{0}` is not in the alphabet")]
    UnknownAtom(String),
    #[error(transparent)]
    Cap(#[from] CapExceeded),
}

#[derive(Debug, Clone)]
pub struct Translation {
    pub automaton: Automaton,
    /// The consistent set of each state, by state index.
    pub states: Vec<ConsistentSet>,
    /// The until-subformula of each final set, by position.
    pub untils: Vec<Formula>,
}

impl Translation {
    pub fn state_of(&self, b: &ConsistentSet) -> Option<usize> {
        self.states.iter().position(|s| s == b)
    }
}

/// `B` is final for `u` when it is non-empty and `u` is none of the
/// conjuncts of its anchor.
pub fn is_final_for(b: &ConsistentSet, u: &Formula) -> bool {
    !b.is_empty() && and_leaves(b.anchor()).into_iter().all(|g| g != u)
}

fn respects(b: &ConsistentSet, ap: &[String], letter: u32) -> bool {
    let (pos, neg) = b.literals();
    let holds = |a: &str| {
        ap.iter()
            .position(|x| x == a)
            .is_some_and(|i| letter >> i & 1 == 1)
    };
    pos.into_iter().all(holds) && !neg.into_iter().any(holds)
}

pub fn translate(f: &Formula, m: Monoid, ap: &[String], cap: usize) -> Result<Translation, TranslateError> {
    if let Some(a) = f.atoms().into_iter().find(|a| !ap.contains(a)) {
        return Err(TranslateError::UnknownAtom(a));
    }
    let mut ex = Explorer::new(m, cap);
    let red = ex.reduce(f);
    if red != *f {
        return Err(TranslateError::NotReduced(red.pretty(m).to_string()));
    }
    let in_fragment = match m.kind() {
        MonoidKind::Product => is_rultl(f, m),
        MonoidKind::Generalized => is_trultl(f, m),
    };
    if !in_fragment {
        return Err(TranslateError::FragmentMismatch(m));
    }

    let initial = ex.sets(f).to_vec();
    let mut states = ex.explore(&initial)?;
    let key = |b: &ConsistentSet| (!b.is_empty(), b.label(m));
    states.sort_by_cached_key(key);
    let index = |b: &ConsistentSet| states.binary_search_by_key(&key(b), key).ok();

    let labels = states.iter().map(|b| b.label(m)).collect();
    let mut a = Automaton::new(m, ap.to_vec(), labels);
    a.set_initial(initial.iter().filter_map(index).collect());
    let untils = f.untils();
    a.set_final_family(
        untils
            .iter()
            .map(|u| {
                (0..states.len())
                    .filter(|&q| is_final_for(&states[q], u))
                    .collect::<BTreeSet<_>>()
            })
            .collect(),
    );

    let letters = 1u32 << ap.len();
    for (q, b) in states.iter().enumerate() {
        if b.is_empty() {
            continue;
        }
        let anchor = b.anchor();
        let red = ex.reduce(anchor);
        for c in ex.sets(&red).to_vec() {
            if !c.is_empty() {
                let to = index(&c).expect("ε-successor was explored");
                a.set_weight(q, Symbol::Eps, to, m.one());
            }
        }
        if red != *anchor {
            continue;
        }
        let ok: Vec<u32> = (0..letters).filter(|&l| respects(b, ap, l)).collect();
        for (xi, v) in next_table(b, m) {
            if m.is_zero(&v) {
                continue;
            }
            for c in ex.sets(&xi).to_vec() {
                if c.is_empty() {
                    continue;
                }
                let to = index(&c).expect("next successor was explored");
                for &l in &ok {
                    a.add_weight(q, Symbol::Letter(l), to, &v);
                }
            }
        }
    }
    Ok(Translation {
        automaton: a,
        states,
        untils,
    })
}
