//! Consistent sets, next formulas with their weights, and reachability.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::hash::{Hash, Hasher};

use thiserror::Error;

use crate::formula::{reduce, Formula};
use crate::monoid::{Monoid, Weight};

/// A subset of `cl(anchor)` closed under the consistency rules.
///
/// Equality, ordering and hashing look at the members only: the anchor of a
/// non-empty set is its unique maximal member, and all empty sets coincide.
#[derive(Clone, Debug)]
pub struct ConsistentSet {
    anchor: Formula,
    members: BTreeSet<Formula>,
}

impl PartialEq for ConsistentSet {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for ConsistentSet {}

impl PartialOrd for ConsistentSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ConsistentSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.members.cmp(&other.members)
    }
}

impl Hash for ConsistentSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.members.hash(state);
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InconsistentSet {
    #[error("`{0}` is not in the closure of the anchor")]
    NotInClosure(Formula),
    #[error("the anchor is missing")]
    MissingAnchor,
    #[error("both `{0}` and its negation are members")]
    Contradiction(String),
    #[error("`{0}` is a member but not all of its required subformulas are")]
    Unjustified(Formula),
}

impl ConsistentSet {
    pub fn empty(anchor: Formula) -> Self {
        ConsistentSet {
            anchor,
            members: BTreeSet::new(),
        }
    }

    /// Checks the consistency rules and builds the set.
    pub fn new(anchor: Formula, members: BTreeSet<Formula>) -> Result<Self, InconsistentSet> {
        check_consistent(&anchor, &members)?;
        Ok(ConsistentSet { anchor, members })
    }

    pub fn anchor(&self) -> &Formula {
        &self.anchor
    }

    pub fn members(&self) -> &BTreeSet<Formula> {
        &self.members
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, f: &Formula) -> bool {
        self.members.contains(f)
    }

    /// Canonical text: the anchor first, then the other members by length and text.
    pub fn label(&self, m: Monoid) -> String {
        if self.is_empty() {
            return "{}".to_string();
        }
        let mut rest: Vec<String> = self
            .members
            .iter()
            .filter(|g| **g != self.anchor)
            .map(|g| g.pretty(m).to_string())
            .collect();
        rest.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let mut parts = vec![self.anchor.pretty(m).to_string()];
        parts.extend(rest);
        format!("{{{}}}", parts.join(", "))
    }

    /// Atoms that must hold (`a ∈ B`) and must not hold (`¬a ∈ B`) now.
    pub fn literals(&self) -> (BTreeSet<&str>, BTreeSet<&str>) {
        let mut pos = BTreeSet::new();
        let mut neg = BTreeSet::new();
        for g in &self.members {
            match g {
                Formula::Atom(a) => {
                    pos.insert(a.as_str());
                }
                Formula::NegAtom(a) => {
                    neg.insert(a.as_str());
                }
                _ => {}
            }
        }
        (pos, neg)
    }
}

pub fn check_consistent(anchor: &Formula, members: &BTreeSet<Formula>) -> Result<(), InconsistentSet> {
    if members.is_empty() {
        return Ok(());
    }
    let cl: BTreeSet<Formula> = anchor.closure().into_iter().collect();
    if let Some(g) = members.iter().find(|g| !cl.contains(g)) {
        return Err(InconsistentSet::NotInClosure(g.clone()));
    }
    if !members.contains(anchor) {
        return Err(InconsistentSet::MissingAnchor);
    }
    for g in members {
        let ok = match g {
            Formula::Atom(a) => {
                if members.contains(&Formula::NegAtom(a.clone())) {
                    return Err(InconsistentSet::Contradiction(a.clone()));
                }
                true
            }
            Formula::And(l, r) => members.contains(&**l) && members.contains(&**r),
            Formula::Or(l, r) | Formula::Until(l, r) => {
                members.contains(&**l) || members.contains(&**r)
            }
            Formula::Always(h) => members.contains(&**h),
            _ => true,
        };
        if !ok {
            return Err(InconsistentSet::Unjustified(g.clone()));
        }
    }
    Ok(())
}

/// All `f`-consistent sets: the empty set first, then the others in order.
pub fn enumerate_consistent_sets(f: &Formula) -> Vec<ConsistentSet> {
    // parents before children
    let order: Vec<Formula> = f.closure().into_iter().rev().collect();
    let pos: HashMap<&Formula, usize> = order.iter().enumerate().map(|(i, g)| (g, i)).collect();

    // constraint checks, each registered at the last position it mentions
    enum Check {
        Both(usize, usize),
        Either(usize, usize, usize),
        NotBoth(usize, usize),
    }
    let mut checks: Vec<Vec<Check>> = (0..order.len()).map(|_| Vec::new()).collect();
    for (i, g) in order.iter().enumerate() {
        match g {
            Formula::And(l, r) => {
                for c in [&**l, &**r] {
                    checks[pos[c]].push(Check::Both(i, pos[c]));
                }
            }
            Formula::Always(h) => checks[pos[&**h]].push(Check::Both(i, pos[&**h])),
            Formula::Or(l, r) | Formula::Until(l, r) => {
                let (a, b) = (pos[&**l], pos[&**r]);
                checks[a.max(b)].push(Check::Either(i, a, b));
            }
            Formula::Atom(a) => {
                if let Some(&j) = pos.get(&Formula::NegAtom(a.clone())) {
                    checks[i.max(j)].push(Check::NotBoth(i, j));
                }
            }
            _ => {}
        }
    }

    fn search(
        i: usize,
        chosen: &mut Vec<bool>,
        checks: &[Vec<Check>],
        order: &[Formula],
        out: &mut Vec<BTreeSet<Formula>>,
    ) {
        if i == order.len() {
            let set = order
                .iter()
                .zip(chosen.iter())
                .filter(|(_, &c)| c)
                .map(|(g, _)| g.clone())
                .collect();
            out.push(set);
            return;
        }
        let options: &[bool] = if i == 0 { &[true] } else { &[false, true] };
        for &v in options {
            chosen.push(v);
            let ok = checks[i].iter().all(|c| match *c {
                Check::Both(p, c) => !chosen[p] || chosen[c],
                Check::Either(p, a, b) => !chosen[p] || chosen[a] || chosen[b],
                Check::NotBoth(a, b) => !(chosen[a] && chosen[b]),
            });
            if ok {
                search(i + 1, chosen, checks, order, out);
            }
            chosen.pop();
        }
    }

    let mut found = Vec::new();
    search(0, &mut Vec::new(), &checks, &order, &mut found);
    found.sort();
    let mut out = vec![ConsistentSet::empty(f.clone())];
    out.extend(found.into_iter().map(|members| ConsistentSet {
        anchor: f.clone(),
        members,
    }));
    out
}

/// `M_{B,g}`: the greatest `g`-consistent subset of `B`.
///
/// This is `B ∩ cl(g)` when `g ∈ B`: every rule a member of `cl(g)` imposes
/// only mentions members of `cl(g)`, and `B` already satisfies it.
pub fn maximal_subset(b: &ConsistentSet, g: &Formula) -> ConsistentSet {
    if !b.contains(g) {
        return ConsistentSet::empty(g.clone());
    }
    let cl: BTreeSet<Formula> = g.closure().into_iter().collect();
    ConsistentSet {
        anchor: g.clone(),
        members: b.members.intersection(&cl).cloned().collect(),
    }
}

fn insert_sum(table: &mut BTreeMap<Formula, Weight>, m: Monoid, key: Formula, v: Weight) {
    match table.get_mut(&key) {
        Some(old) => *old = m.plus(old, &v),
        None => {
            table.insert(key, v);
        }
    }
}

/// The next formulas of `B` with their weights `v_B`.
///
/// Keys produced twice are summed, which is how overlapping disjuncts are
/// treated as well.
pub fn next_table(b: &ConsistentSet, m: Monoid) -> BTreeMap<Formula, Weight> {
    let mut out = BTreeMap::new();
    if b.is_empty() {
        out.insert(Formula::Const(m.zero()), m.zero());
        return out;
    }
    let anchor = b.anchor();
    match anchor {
        Formula::Const(k) => {
            out.insert(Formula::tt(m), k.clone());
        }
        Formula::Atom(_) | Formula::NegAtom(_) => {
            out.insert(Formula::tt(m), m.one());
        }
        Formula::And(l, r) => {
            let tl = next_table(&maximal_subset(b, l), m);
            let tr = next_table(&maximal_subset(b, r), m);
            for (fl, vl) in &tl {
                for (fr, vr) in &tr {
                    insert_sum(&mut out, m, Formula::and(fl.clone(), fr.clone()), m.times(vl, vr));
                }
            }
        }
        Formula::Or(l, r) => {
            for side in [l, r] {
                for (g, v) in next_table(&maximal_subset(b, side), m) {
                    insert_sum(&mut out, m, g, v);
                }
            }
        }
        Formula::Next(g) => {
            out.insert((**g).clone(), m.one());
        }
        Formula::Until(l, r) => {
            for (g, v) in next_table(&maximal_subset(b, r), m) {
                insert_sum(&mut out, m, g, v);
            }
            for (g, v) in next_table(&maximal_subset(b, l), m) {
                insert_sum(&mut out, m, Formula::and(anchor.clone(), g), v);
            }
        }
        Formula::Always(h) => {
            for (g, v) in next_table(&maximal_subset(b, h), m) {
                insert_sum(&mut out, m, Formula::and(anchor.clone(), g), v);
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("more than {0} consistent sets are reachable")]
pub struct CapExceeded(pub usize);

/// Memoizing explorer of the step relation between consistent sets.
pub struct Explorer {
    monoid: Monoid,
    cap: usize,
    sets: HashMap<Formula, Vec<ConsistentSet>>,
    reduced: HashMap<Formula, Formula>,
}

impl Explorer {
    pub fn new(monoid: Monoid, cap: usize) -> Self {
        Explorer {
            monoid,
            cap,
            sets: HashMap::new(),
            reduced: HashMap::new(),
        }
    }

    pub fn monoid(&self) -> Monoid {
        self.monoid
    }

    /// Consistent sets of `f`, the empty set first.
    pub fn sets(&mut self, f: &Formula) -> &[ConsistentSet] {
        self.sets
            .entry(f.clone())
            .or_insert_with(|| enumerate_consistent_sets(f))
    }

    pub fn reduce(&mut self, f: &Formula) -> Formula {
        let m = self.monoid;
        self.reduced
            .entry(f.clone())
            .or_insert_with(|| reduce(f, m))
            .clone()
    }

    pub fn is_reduced(&mut self, f: &Formula) -> bool {
        self.reduce(f) == *f
    }

    /// Sets one step away from `b`: through a next formula when the anchor is
    /// reduced, through reduction otherwise. A reduced anchor also steps to its
    /// own consistent sets, as it is its own reduction.
    pub fn successors(&mut self, b: &ConsistentSet) -> Vec<ConsistentSet> {
        let m = self.monoid;
        if b.is_empty() {
            return self.sets(&Formula::Const(m.zero())).to_vec();
        }
        let anchor = b.anchor().clone();
        let red = self.reduce(&anchor);
        let mut out = self.sets(&red).to_vec();
        if red == anchor {
            for key in next_table(b, m).into_keys() {
                out.extend_from_slice(self.sets(&key));
            }
        }
        out
    }

    /// Every set reachable from `seeds`, seeds included, sorted.
    pub fn explore(&mut self, seeds: &[ConsistentSet]) -> Result<Vec<ConsistentSet>, CapExceeded> {
        let mut seen: BTreeSet<ConsistentSet> = BTreeSet::new();
        let mut queue: VecDeque<ConsistentSet> = VecDeque::new();
        for s in seeds {
            if seen.insert(s.clone()) {
                queue.push_back(s.clone());
            }
        }
        while let Some(b) = queue.pop_front() {
            for c in self.successors(&b) {
                if !seen.contains(&c) {
                    seen.insert(c.clone());
                    if seen.len() > self.cap {
                        return Err(CapExceeded(self.cap));
                    }
                    queue.push_back(c);
                }
            }
        }
        Ok(seen.into_iter().collect())
    }
}

/// `reach(B0)`: the sets reachable from `b0` by any number of steps, `b0` included.
pub fn reach(b0: &ConsistentSet, m: Monoid, cap: usize) -> Result<BTreeSet<ConsistentSet>, CapExceeded> {
    let mut ex = Explorer::new(m, cap);
    Ok(ex.explore(std::slice::from_ref(b0))?.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;

    fn ap() -> Vec<String> {
        ["a", "b", "c", "d"].iter().map(|s| s.to_string()).collect()
    }

    fn p(s: &str, m: Monoid) -> Formula {
        parse(s, &ap(), m).unwrap()
    }

    fn set(anchor: &str, members: &[&str], m: Monoid) -> ConsistentSet {
        let members = members.iter().map(|s| p(s, m)).collect();
        ConsistentSet::new(p(anchor, m), members).unwrap()
    }

    /// Every subset of the closure, filtered by the validator.
    fn brute_force_sets(f: &Formula) -> BTreeSet<BTreeSet<Formula>> {
        let cl = f.closure();
        (0u32..1 << cl.len())
            .map(|mask| {
                cl.iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, g)| g.clone())
                    .collect::<BTreeSet<_>>()
            })
            .filter(|s| check_consistent(f, s).is_ok())
            .collect()
    }

    #[test]
    fn disjunction_sets() {
        let m = Monoid::Tropical;
        let f = p("a | b", m);
        let got: Vec<_> = enumerate_consistent_sets(&f);
        let want = vec![
            ConsistentSet::empty(f.clone()),
            set("a | b", &["a | b", "a"], m),
            set("a | b", &["a | b", "a", "b"], m),
            set("a | b", &["a | b", "b"], m),
        ];
        assert_eq!(got.len(), 4);
        assert_eq!(
            got.iter().collect::<BTreeSet<_>>(),
            want.iter().collect::<BTreeSet<_>>()
        );
        assert!(got[0].is_empty());
    }

    #[test]
    fn constant_and_always_sets() {
        let m = Monoid::Liminf;
        assert_eq!(enumerate_consistent_sets(&p("3", m)).len(), 2);
        let sets = enumerate_consistent_sets(&p("G (a & 2)", m));
        assert_eq!(sets.len(), 2);
        assert_eq!(sets[1], set("G (a & 2)", &["G (a & 2)", "a & 2", "a", "2"], m));
    }

    #[test]
    fn enumeration_matches_subset_filter() {
        let m = Monoid::Tropical;
        for s in [
            "a | b",
            "a & !a",
            "(a U b) | (X !a)",
            "((a & 2) | (b & 3)) U (X c)",
            "G ((a & 2) | (!a & 1))",
            "(G (a U b)) & (a U b)",
        ] {
            let f = p(s, m);
            let got: BTreeSet<_> = enumerate_consistent_sets(&f)
                .into_iter()
                .map(|c| c.members)
                .collect();
            assert_eq!(got, brute_force_sets(&f), "{s}");
        }
    }

    #[test]
    fn maximal_subsets() {
        let m = Monoid::Tropical;
        let b = set(
            "((a & 2) | (b & 3)) U (X c)",
            &["((a & 2) | (b & 3)) U (X c)", "(a & 2) | (b & 3)", "a & 2", "a", "2"],
            m,
        );
        let phi = p("(a & 2) | (b & 3)", m);
        assert_eq!(
            maximal_subset(&b, &phi),
            set("(a & 2) | (b & 3)", &["(a & 2) | (b & 3)", "a & 2", "a", "2"], m)
        );
        assert!(maximal_subset(&b, &p("X c", m)).is_empty());
        assert_eq!(maximal_subset(&b, b.anchor()), b);
    }

    #[test]
    fn next_of_empty_and_literals() {
        let m = Monoid::Tropical;
        let t = next_table(&ConsistentSet::empty(p("a", m)), m);
        assert_eq!(t.into_iter().collect::<Vec<_>>(), vec![(Formula::Const(m.zero()), m.zero())]);
        let t = next_table(&set("3", &["3"], m), m);
        assert_eq!(t[&Formula::tt(m)], Weight::int(3));
        let t = next_table(&set("!a", &["!a"], m), m);
        assert_eq!(t[&Formula::tt(m)], m.one());
    }

    #[test]
    fn next_of_weighted_disjunction() {
        // the product of `true` and 2 is 2, and min(2, 3) = 2
        let m = Monoid::Tropical;
        let b = set(
            "(a & 2) | (b & 3)",
            &["(a & 2) | (b & 3)", "a & 2", "b & 3", "a", "2", "b", "3"],
            m,
        );
        let t = next_table(&b, m);
        let tt = Formula::tt(m);
        assert_eq!(t.len(), 1);
        assert_eq!(t[&Formula::and(tt.clone(), tt.clone())], Weight::int(2));
    }

    #[test]
    fn next_of_until() {
        let m = Monoid::Tropical;
        let psi = "((a & 2) | (b & 3)) U (X c)";
        let b = set(
            psi,
            &[psi, "(a & 2) | (b & 3)", "a & 2", "b & 3", "a", "2", "b", "3", "X c"],
            m,
        );
        let t = next_table(&b, m);
        let tt = Formula::tt(m);
        let stay = Formula::and(p(psi, m), Formula::and(tt.clone(), tt));
        assert_eq!(t.len(), 2);
        assert_eq!(t[&p("c", m)], Weight::int(0));
        assert_eq!(t[&stay], Weight::int(2));
    }

    #[test]
    fn next_of_always_example() {
        let m = Monoid::Liminf;
        let b = set("G (a & 2)", &["G (a & 2)", "a & 2", "a", "2"], m);
        let t = next_table(&b, m);
        let tt = Formula::tt(m);
        let key = Formula::and(p("G (a & 2)", m), Formula::and(tt.clone(), tt));
        assert_eq!(t.into_iter().collect::<Vec<_>>(), vec![(key, Weight::int(2))]);
    }

    #[test]
    fn reach_of_always_example() {
        let m = Monoid::Liminf;
        let b0 = set("G (a & 2)", &["G (a & 2)", "a & 2", "a", "2"], m);
        let r = reach(&b0, m, 50).unwrap();
        assert_eq!(r.len(), 5);
        assert!(r.contains(&b0));
        assert!(r.contains(&ConsistentSet::empty(p("a", m))));
    }

    #[test]
    fn reach_of_constant() {
        let m = Monoid::Tropical;
        let b0 = set("3", &["3"], m);
        let r = reach(&b0, m, 10).unwrap();
        for want in [
            set("true", &["true"], m),
            ConsistentSet::empty(p("a", m)),
            set("inf", &["inf"], m),
        ] {
            assert!(r.contains(&want));
        }
        assert_eq!(r.len(), 4);
    }

    #[test]
    fn divergent_reach() {
        let m = Monoid::Tropical;
        let b0 = set(
            "G G (a & 2)",
            &["G G (a & 2)", "G (a & 2)", "a & 2", "a", "2"],
            m,
        );
        assert_eq!(reach(&b0, m, 200), Err(CapExceeded(200)));
        let f = "((a & 2) U c) U d";
        let b1 = set(f, &[f, "(a & 2) U c", "a & 2", "a", "2"], m);
        assert_eq!(reach(&b1, m, 200), Err(CapExceeded(200)));
    }

    #[test]
    fn labels() {
        let m = Monoid::Liminf;
        let b = set("G (a & 2)", &["G (a & 2)", "a & 2", "a", "2"], m);
        assert_eq!(b.label(m), "{(G (a & 2)), 2, a, (a & 2)}");
        assert_eq!(ConsistentSet::empty(p("a", m)).label(m), "{}");
    }
}
