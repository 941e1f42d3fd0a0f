//! Weighted generalized Büchi automata with ε-transitions.
//!
//! Letters are subsets of the proposition list `ap`, encoded as bitmasks
//! (bit `i` set iff `ap[i]` holds). Weights are stored sparsely: a missing
//! transition has weight `0`.

mod degeneralize;
mod epsilon;
mod export;

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::monoid::{Monoid, Weight};

pub use degeneralize::degeneralize;
pub use epsilon::{remove_epsilon, remove_epsilon_generalized, remove_epsilon_product};
pub use export::{from_json, to_dot, to_json, to_json_value, JsonAutomaton, JsonError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    Eps,
    Letter(u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automaton {
    monoid: Monoid,
    ap: Vec<String>,
    labels: Vec<String>,
    initial: BTreeSet<usize>,
    final_family: Vec<BTreeSet<usize>>,
    weights: BTreeMap<(usize, Symbol, usize), Weight>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutomatonError {
    #[error("automaton is not well formed: {0}")]
    Invalid(Violation),
    #[error("expected exactly one final set, found {0}")]
    WrongKind(usize),
    #[error("automaton has a non-zero ε-transition")]
    HasEpsilon,
}

/// A breach of the structural requirements on ε-wgBa.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    StateOutOfRange(usize),
    LetterOutOfRange(u32),
    NotInCarrier { from: usize, to: usize, weight: Weight },
    EpsilonWeight { from: usize, to: usize, weight: Weight },
    FinalCrossing { from: usize, to: usize, set: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::StateOutOfRange(q) => write!(f, "state {q} does not exist"),
            Violation::LetterOutOfRange(a) => write!(f, "letter {a:#b} uses unknown propositions"),
            Violation::NotInCarrier { from, to, weight } => {
                write!(f, "weight {weight} on {from} -> {to} is outside the carrier")
            }
            Violation::EpsilonWeight { from, to, weight } => {
                write!(f, "ε-transition {from} -> {to} has weight {weight}, expected 0 or 1")
            }
            Violation::FinalCrossing { from, to, set } => {
                write!(f, "ε-transition {from} -> {to} leaves or enters final set {set}")
            }
        }
    }
}

impl Automaton {
    /// An automaton with the given states and no transitions.
    pub fn new(monoid: Monoid, ap: Vec<String>, labels: Vec<String>) -> Self {
        Automaton {
            monoid,
            ap,
            labels,
            initial: BTreeSet::new(),
            final_family: Vec::new(),
            weights: BTreeMap::new(),
        }
    }

    pub fn monoid(&self) -> Monoid {
        self.monoid
    }

    pub fn ap(&self) -> &[String] {
        &self.ap
    }

    pub fn num_states(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn num_letters(&self) -> u32 {
        1 << self.ap.len()
    }

    pub fn initial(&self) -> &BTreeSet<usize> {
        &self.initial
    }

    pub fn set_initial(&mut self, initial: BTreeSet<usize>) {
        self.initial = initial;
    }

    pub fn final_family(&self) -> &[BTreeSet<usize>] {
        &self.final_family
    }

    pub fn set_final_family(&mut self, family: Vec<BTreeSet<usize>>) {
        self.final_family = family;
    }

    /// Sets a transition weight; setting `0` removes the transition.
    pub fn set_weight(&mut self, from: usize, sym: Symbol, to: usize, w: Weight) {
        if self.monoid.is_zero(&w) {
            self.weights.remove(&(from, sym, to));
        } else {
            self.weights.insert((from, sym, to), w);
        }
    }

    /// Adds `w` to the current weight of a transition.
    pub fn add_weight(&mut self, from: usize, sym: Symbol, to: usize, w: &Weight) {
        let old = self.weight(from, sym, to);
        let sum = self.monoid.plus(&old, w);
        self.set_weight(from, sym, to, sum);
    }

    pub fn weight(&self, from: usize, sym: Symbol, to: usize) -> Weight {
        self.weights
            .get(&(from, sym, to))
            .cloned()
            .unwrap_or_else(|| self.monoid.zero())
    }

    /// All transitions with a non-zero weight, in order.
    pub fn transitions(&self) -> impl Iterator<Item = (usize, Symbol, usize, &Weight)> {
        self.weights.iter().map(|(&(p, s, q), w)| (p, s, q, w))
    }

    /// Outgoing non-zero transitions per state.
    pub fn out_edges(&self) -> Vec<Vec<(Symbol, usize, Weight)>> {
        let mut out = vec![Vec::new(); self.num_states()];
        for (p, s, q, w) in self.transitions() {
            out[p].push((s, q, w.clone()));
        }
        out
    }

    pub fn has_epsilon(&self) -> bool {
        self.transitions().any(|(_, s, _, _)| s == Symbol::Eps)
    }

    /// Structural problems; empty iff the automaton is a valid ε-wgBa.
    pub fn validate(&self) -> Vec<Violation> {
        let m = self.monoid;
        let n = self.num_states();
        let mut out = Vec::new();
        let states = self
            .initial
            .iter()
            .chain(self.final_family.iter().flatten())
            .copied();
        for q in states {
            if q >= n {
                out.push(Violation::StateOutOfRange(q));
            }
        }
        for (p, s, q, w) in self.transitions() {
            for x in [p, q] {
                if x >= n {
                    out.push(Violation::StateOutOfRange(x));
                }
            }
            if !m.contains(w) {
                out.push(Violation::NotInCarrier {
                    from: p,
                    to: q,
                    weight: w.clone(),
                });
            }
            match s {
                Symbol::Letter(a) => {
                    if a >= self.num_letters() {
                        out.push(Violation::LetterOutOfRange(a));
                    }
                }
                Symbol::Eps => {
                    if !m.is_one(w) {
                        out.push(Violation::EpsilonWeight {
                            from: p,
                            to: q,
                            weight: w.clone(),
                        });
                        continue;
                    }
                    for (i, f) in self.final_family.iter().enumerate() {
                        if f.contains(&p) != f.contains(&q) {
                            out.push(Violation::FinalCrossing {
                                from: p,
                                to: q,
                                set: i,
                            });
                        }
                    }
                }
            }
        }
        out
    }

    pub(crate) fn ensure_valid(&self) -> Result<(), AutomatonError> {
        match self.validate().into_iter().next() {
            Some(v) => Err(AutomatonError::Invalid(v)),
            None => Ok(()),
        }
    }

    /// States reachable from `q` through `1`-weighted ε-transitions, `q` included.
    pub fn epsilon_closure(&self, q: usize) -> BTreeSet<usize> {
        let mut seen = BTreeSet::from([q]);
        let mut queue = VecDeque::from([q]);
        while let Some(p) = queue.pop_front() {
            let lo = (p, Symbol::Eps, 0);
            let hi = (p, Symbol::Eps, usize::MAX);
            for (&(_, _, r), w) in self.weights.range(lo..=hi) {
                if self.monoid.is_one(w) && seen.insert(r) {
                    queue.push_back(r);
                }
            }
        }
        seen
    }

    /// Drops states that no initial state reaches through non-zero transitions.
    pub fn prune_unreachable(&self) -> Automaton {
        let adj = self.out_edges();
        let mut seen: BTreeSet<usize> = self.initial.clone();
        let mut queue: VecDeque<usize> = self.initial.iter().copied().collect();
        while let Some(p) = queue.pop_front() {
            for (_, q, _) in &adj[p] {
                if seen.insert(*q) {
                    queue.push_back(*q);
                }
            }
        }
        let keep: Vec<usize> = seen.into_iter().collect();
        let index: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(i, &q)| (q, i)).collect();
        let mut out = Automaton::new(
            self.monoid,
            self.ap.clone(),
            keep.iter().map(|&q| self.labels[q].clone()).collect(),
        );
        out.initial = self.initial.iter().map(|q| index[q]).collect();
        out.final_family = self
            .final_family
            .iter()
            .map(|f| f.iter().filter_map(|q| index.get(q).copied()).collect())
            .collect();
        for (p, s, q, w) in self.transitions() {
            if let (Some(&i), Some(&j)) = (index.get(&p), index.get(&q)) {
                out.weights.insert((i, s, j), w.clone());
            }
        }
        out
    }

    /// Letter mask for a set of propositions; `None` if one is unknown.
    pub fn letter_of<'a, I>(&self, props: I) -> Option<u32>
    where
        I: IntoIterator<Item = &'a str>,
    {
        letter_mask(&self.ap, props)
    }

    /// The propositions of a letter, in `ap` order.
    pub fn letter_props(&self, letter: u32) -> Vec<&str> {
        self.ap
            .iter()
            .enumerate()
            .filter(|(i, _)| letter >> i & 1 == 1)
            .map(|(_, a)| a.as_str())
            .collect()
    }
}

/// Bitmask of `props` over `ap`; `None` if a proposition is not in `ap`.
pub fn letter_mask<'a, I>(ap: &[String], props: I) -> Option<u32>
where
    I: IntoIterator<Item = &'a str>,
{
    let mut mask = 0;
    for a in props {
        let i = ap.iter().position(|x| x == a)?;
        mask |= 1 << i;
    }
    Some(mask)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ap() -> Vec<String> {
        vec!["a".into()]
    }

    fn chain() -> Automaton {
        let m = Monoid::Tropical;
        let mut a = Automaton::new(m, ap(), (0..4).map(|i| format!("q{i}")).collect());
        a.set_weight(0, Symbol::Eps, 1, m.one());
        a.set_weight(1, Symbol::Letter(1), 2, Weight::int(3));
        a.set_weight(2, Symbol::Eps, 3, m.one());
        a.set_initial(BTreeSet::from([0]));
        a
    }

    #[test]
    fn closures() {
        let a = chain();
        assert_eq!(a.epsilon_closure(0), BTreeSet::from([0, 1]));
        assert_eq!(a.epsilon_closure(3), BTreeSet::from([3]));
        let mut b = a.clone();
        b.set_weight(0, Symbol::Eps, 1, b.monoid().zero());
        assert_eq!(b.epsilon_closure(0), BTreeSet::from([0]));
    }

    #[test]
    fn validation() {
        let mut a = chain();
        assert!(a.validate().is_empty());
        a.set_weight(3, Symbol::Eps, 0, Weight::int(2));
        assert_eq!(a.validate().len(), 1);

        let mut b = chain();
        b.set_final_family(vec![BTreeSet::from([0])]);
        assert_eq!(
            b.validate(),
            vec![Violation::FinalCrossing {
                from: 0,
                to: 1,
                set: 0
            }]
        );
        let mut c = chain();
        c.set_weight(0, Symbol::Letter(4), 0, Weight::int(1));
        assert_eq!(c.validate(), vec![Violation::LetterOutOfRange(4)]);
    }

    #[test]
    fn zero_weights_are_not_stored() {
        let mut a = chain();
        let n = a.transitions().count();
        a.set_weight(3, Symbol::Letter(0), 3, Weight::PosInf);
        assert_eq!(a.transitions().count(), n);
        a.add_weight(1, Symbol::Letter(1), 2, &Weight::int(1));
        assert_eq!(a.weight(1, Symbol::Letter(1), 2), Weight::int(1));
    }

    #[test]
    fn pruning() {
        let mut a = chain();
        a.set_weight(3, Symbol::Letter(0), 0, Weight::int(0));
        let mut b = a.clone();
        b.set_weight(1, Symbol::Letter(1), 2, Weight::PosInf);
        let p = b.prune_unreachable();
        assert_eq!(p.num_states(), 2);
        assert_eq!(a.prune_unreachable(), a);
    }
}
