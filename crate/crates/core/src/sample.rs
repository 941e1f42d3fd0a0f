//! Seeded random words, fragment formulas and automata.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::automata::{Automaton, Symbol};
use crate::eval::{LassoWord, Letter};
use crate::formula::{is_rultl, is_trultl, reduce, Formula};
use crate::monoid::{Monoid, Weight};

pub fn random_letter<R: Rng>(rng: &mut R, ap: &[String]) -> Letter {
    ap.iter().filter(|_| rng.gen_bool(0.5)).cloned().collect()
}

/// A word with `|u| ≤ max_stem` and `1 ≤ |v| ≤ max_period`.
pub fn random_lasso<R: Rng>(rng: &mut R, ap: &[String], max_stem: usize, max_period: usize) -> LassoWord {
    let s = rng.gen_range(0..=max_stem);
    let p = rng.gen_range(1..=max_period.max(1));
    let stem = (0..s).map(|_| random_letter(rng, ap)).collect();
    let period = (0..p).map(|_| random_letter(rng, ap)).collect();
    LassoWord::new(stem, period).expect("period is non-empty")
}

/// Constants the generators draw from: `0..=5` for the tropical monoid,
/// `-3..=3` and `±∞` for the liminf one.
pub fn weight_pool(m: Monoid) -> Vec<Weight> {
    match m {
        Monoid::Tropical => (0..=5).map(Weight::int).chain([Weight::PosInf]).collect(),
        Monoid::Liminf => (-3..=3)
            .map(Weight::int)
            .chain([Weight::NegInf, Weight::PosInf])
            .collect(),
    }
}

/// Pool members other than `0` and `1`.
fn proper_weights(m: Monoid) -> Vec<Weight> {
    weight_pool(m)
        .into_iter()
        .filter(|k| !m.is_zero(k) && !m.is_one(k))
        .collect()
}

struct Gen<'a, R> {
    rng: &'a mut R,
    ap: &'a [String],
    m: Monoid,
}

impl<R: Rng> Gen<'_, R> {
    fn literal(&mut self) -> Formula {
        let a = self.ap.choose(self.rng).expect("non-empty alphabet").clone();
        if self.rng.gen_bool(0.3) {
            Formula::NegAtom(a)
        } else {
            Formula::Atom(a)
        }
    }

    fn constant(&mut self) -> Formula {
        Formula::Const(weight_pool(self.m).choose(self.rng).unwrap().clone())
    }

    fn proper_constant(&mut self) -> Formula {
        Formula::Const(proper_weights(self.m).choose(self.rng).unwrap().clone())
    }

    /// Boolean formulas, mostly propositional.
    fn boolean(&mut self, depth: usize) -> Formula {
        if depth <= 1 || self.rng.gen_bool(0.45) {
            return match self.rng.gen_range(0..10) {
                0 => Formula::tt(self.m),
                _ => self.literal(),
            };
        }
        let d = depth - 1;
        match self.rng.gen_range(0..6) {
            0 | 1 => Formula::and(self.boolean(d), self.boolean(d)),
            2 | 3 => Formula::or(self.boolean(d), self.boolean(d)),
            4 => Formula::next(self.boolean(d)),
            _ => Formula::until(self.boolean(d), self.boolean(d)),
        }
    }

    fn weighted(&mut self, depth: usize, restricted: bool) -> Formula {
        let k = if restricted {
            self.proper_constant()
        } else {
            self.constant()
        };
        let phi = self.boolean(depth.saturating_sub(1).min(2));
        if self.rng.gen_bool(0.5) {
            Formula::and(k, phi)
        } else {
            Formula::and(phi, k)
        }
    }

    /// `⋁ (k_i ∧ φ_i)`, possibly with plain boolean disjuncts unless restricted.
    fn step(&mut self, depth: usize, restricted: bool) -> Formula {
        let disjunct = |g: &mut Self| {
            if !restricted && g.rng.gen_bool(0.25) {
                g.boolean(depth.saturating_sub(1).min(2))
            } else {
                g.weighted(depth, restricted)
            }
        };
        let mut f = disjunct(self);
        if depth >= 3 && self.rng.gen_bool(0.3) {
            f = Formula::or(f, disjunct(self));
        }
        f
    }

    fn rultl(&mut self, depth: usize) -> Formula {
        if depth <= 1 {
            return match self.rng.gen_range(0..3) {
                0 => self.constant(),
                _ => self.literal(),
            };
        }
        let d = depth - 1;
        match self.rng.gen_range(0..9) {
            0 => self.boolean(depth),
            1 => self.constant(),
            2 | 3 => Formula::until(self.step(d, false), self.step(d, false)),
            4 => Formula::always(self.step(d, false)),
            5 => Formula::next(self.rultl(d)),
            6 => Formula::or(self.rultl(d), self.rultl(d)),
            7 => Formula::and(self.boolean(d.min(2)), self.rultl(d)),
            _ => Formula::and(self.rultl(d), self.boolean(d.min(2))),
        }
    }

    fn trultl_conjunct(&mut self, depth: usize) -> Formula {
        let d = depth.saturating_sub(1);
        match self.rng.gen_range(0..4) {
            0 => self.step(depth, true),
            1 => Formula::until(self.step(d, true), self.step(d, true)),
            2 => Formula::always(self.step(d, true)),
            _ => self.boolean(depth.min(2)),
        }
    }

    fn trultl(&mut self, depth: usize) -> Formula {
        if depth <= 1 {
            return match self.rng.gen_range(0..3) {
                0 => self.constant(),
                _ => self.literal(),
            };
        }
        let d = depth - 1;
        match self.rng.gen_range(0..9) {
            0 => self.boolean(depth),
            1 => self.constant(),
            2 | 3 => Formula::until(self.step(d, true), self.step(d, true)),
            4 => Formula::always(self.step(d, true)),
            5 => Formula::next(self.trultl(d)),
            6 => Formula::or(self.trultl(d), self.trultl(d)),
            7 => Formula::and(self.boolean(d.min(2)), self.trultl_conjunct(d)),
            _ => Formula::and(self.trultl_conjunct(d), self.boolean(d.min(2))),
        }
    }
}

/// A reduced RULTL formula over the tropical monoid of depth at most `depth`.
pub fn random_rultl<R: Rng>(rng: &mut R, ap: &[String], depth: usize) -> Formula {
    let m = Monoid::Tropical;
    loop {
        let f = Gen { rng, ap, m }.rultl(depth);
        let f = reduce(&f, m);
        if is_rultl(&f, m) && f.depth() <= depth {
            return f;
        }
    }
}

/// A reduced t-RULTL formula over the liminf monoid of depth at most `depth`.
pub fn random_trultl<R: Rng>(rng: &mut R, ap: &[String], depth: usize) -> Formula {
    let m = Monoid::Liminf;
    loop {
        let f = Gen { rng, ap, m }.trultl(depth);
        let f = reduce(&f, m);
        if is_trultl(&f, m) && f.depth() <= depth {
            return f;
        }
    }
}

/// A small valid ε-wgBa: at most `max_states` states and `max_final` final
/// sets, sparse letter transitions with pool weights, and `1`-weighted
/// ε-transitions between states with the same final-set membership.
pub fn random_automaton<R: Rng>(
    rng: &mut R,
    m: Monoid,
    ap: &[String],
    max_states: usize,
    max_final: usize,
) -> Automaton {
    let n = rng.gen_range(1..=max_states.max(1));
    let labels = (0..n).map(|q| format!("p{q}")).collect();
    let mut a = Automaton::new(m, ap.to_vec(), labels);
    let l = rng.gen_range(0..=max_final);
    let family: Vec<BTreeSet<usize>> = (0..l)
        .map(|_| (0..n).filter(|_| rng.gen_bool(0.4)).collect())
        .collect();
    let pool: Vec<Weight> = weight_pool(m).into_iter().filter(|k| !m.is_zero(k)).collect();
    let letters = 1u32 << ap.len();
    for p in 0..n {
        for q in 0..n {
            for letter in 0..letters {
                if rng.gen_bool(0.3) {
                    let k = pool.choose(rng).unwrap().clone();
                    a.set_weight(p, Symbol::Letter(letter), q, k);
                }
            }
            let same = family.iter().all(|f| f.contains(&p) == f.contains(&q));
            if same && rng.gen_bool(0.2) {
                a.set_weight(p, Symbol::Eps, q, m.one());
            }
        }
    }
    a.set_initial((0..n).filter(|_| rng.gen_bool(0.4)).collect());
    if a.initial().is_empty() && rng.gen_bool(0.8) {
        a.set_initial(BTreeSet::from([0]));
    }
    a.set_final_family(family);
    a
}
