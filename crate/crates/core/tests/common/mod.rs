//! Shared samplers and checks for the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;
use wltl::automata::{degeneralize, remove_epsilon_generalized, remove_epsilon_product, Automaton, Symbol};
use wltl::eval::{eval_behavior, eval_behavior_brute_force, LassoWord};
use wltl::{Monoid, UltPeriodic, Weight};

pub fn ap2() -> Vec<String> {
    vec!["a".into(), "b".into()]
}

/// Weights used by the algebra checks; a few fractions on top of the
/// generator pools.
pub fn law_pool(m: Monoid) -> Vec<Weight> {
    let mut out = wltl::sample::weight_pool(m);
    out.push(Weight::ratio(1, 2));
    out.push(Weight::ratio(7, 3));
    if m == Monoid::Liminf {
        out.push(Weight::ratio(-5, 2));
    }
    out
}

pub fn weight<R: Rng>(rng: &mut R, m: Monoid) -> Weight {
    law_pool(m).choose(rng).unwrap().clone()
}

pub fn seq<R: Rng>(rng: &mut R, m: Monoid) -> UltPeriodic {
    let s = rng.gen_range(0..4);
    let p = rng.gen_range(1..4);
    UltPeriodic::new(
        (0..s).map(|_| weight(rng, m)).collect(),
        (0..p).map(|_| weight(rng, m)).collect(),
    )
    .unwrap()
}

pub fn special(m: Monoid, k: &Weight) -> bool {
    m.is_zero(k) || m.is_one(k)
}

/// Semiring-style laws of `+` and `·` on one triple.
pub fn check_operations(m: Monoid, a: &Weight, b: &Weight, c: &Weight) -> Result<(), String> {
    let p = |x: &Weight, y: &Weight| m.plus(x, y);
    let t = |x: &Weight, y: &Weight| m.times(x, y);
    let checks = [
        ("plus associative", p(&p(a, b), c) == p(a, &p(b, c))),
        ("plus commutative", p(a, b) == p(b, a)),
        ("plus idempotent", p(a, a) == *a),
        ("zero neutral for plus", p(a, &m.zero()) == *a),
        ("zero absorbing", t(a, &m.zero()) == m.zero() && t(&m.zero(), a) == m.zero()),
        ("one neutral for times", t(a, &m.one()) == *a && t(&m.one(), a) == *a),
    ];
    for (name, ok) in checks {
        if !ok {
            return Err(format!("{name} fails on {a}, {b}, {c}"));
        }
    }
    Ok(())
}

/// Val^ω laws that concern a single sequence.
pub fn check_valuation(m: Monoid, s: &UltPeriodic) -> Result<(), String> {
    let v = m.val_omega(s);
    let has_zero = s.stem().iter().chain(s.period()).any(|k| m.is_zero(k));
    if has_zero && !m.is_zero(&v) {
        return Err(format!("zero entry but value {v}"));
    }
    let mut stem = vec![m.one()];
    stem.extend_from_slice(s.stem());
    let shifted = UltPeriodic::new(stem, s.period().to_vec()).unwrap();
    if m.val_omega(&shifted) != v {
        return Err("leading one changes the value".into());
    }
    let mut stem = s.stem().to_vec();
    stem.push(s.period()[0].clone());
    let mut period = s.period()[1..].to_vec();
    period.push(s.period()[0].clone());
    let rotated = UltPeriodic::new(stem, period).unwrap();
    let doubled = UltPeriodic::new(s.stem().to_vec(), [s.period(), s.period()].concat()).unwrap();
    if m.val_omega(&rotated) != v || m.val_omega(&doubled) != v {
        return Err("value depends on the presentation".into());
    }
    for k in s.stem().iter().chain(s.period()) {
        if m.val_omega_prefix(std::slice::from_ref(k)) != *k {
            return Err(format!("Val^ω(k, 1, 1, …) ≠ k for {k}"));
        }
    }
    Ok(())
}

/// Pairs of sequences of the same shape with `s1[i] ≤ s2[i]`; over liminf
/// the period positions stay on one side of `{0, 1}`.
pub fn ordered_pair<R: Rng>(rng: &mut R, m: Monoid) -> (UltPeriodic, UltPeriodic) {
    let s = seq(rng, m);
    let pool = law_pool(m);
    let raise = |rng: &mut R, k: &Weight, periodic: bool| -> Weight {
        let ups: Vec<&Weight> = pool
            .iter()
            .filter(|x| m.natural_leq(k, x))
            .filter(|x| {
                !periodic || m == Monoid::Tropical || special(m, k) == special(m, x)
            })
            .collect();
        (*ups.choose(rng).unwrap()).clone()
    };
    let stem2 = s.stem().iter().map(|k| raise(rng, k, false)).collect();
    let period2 = s.period().iter().map(|k| raise(rng, k, true)).collect();
    (s, UltPeriodic::new(stem2, period2).unwrap())
}

pub fn check_monotone(m: Monoid, lo: &UltPeriodic, hi: &UltPeriodic) -> Result<(), String> {
    let (a, b) = (m.val_omega(lo), m.val_omega(hi));
    if m.natural_leq(&a, &b) {
        Ok(())
    } else {
        Err(format!("{lo:?} ≤ {hi:?} pointwise but {a} > {b}"))
    }
}

/// A family of finite weight sets indexed by `j`, ultimately periodic in `j`.
#[derive(Debug, Clone)]
pub struct Family {
    pub stem: Vec<Vec<Weight>>,
    pub period: Vec<Vec<Weight>>,
}

/// Families whose periodic sets respect the generalized side condition
/// when `restricted` holds.
pub fn family<R: Rng>(rng: &mut R, m: Monoid, restricted: bool) -> Family {
    let pool = law_pool(m);
    let set = |rng: &mut R, pure: bool| -> Vec<Weight> {
        let n = rng.gen_range(1..=3);
        let mut out: Vec<Weight> = (0..n).map(|_| pool.choose(rng).unwrap().clone()).collect();
        if pure {
            let kind = special(m, &out[0]);
            out.retain(|k| special(m, k) == kind);
        }
        out
    };
    let s = rng.gen_range(0..3);
    let p = rng.gen_range(1..3);
    Family {
        stem: (0..s).map(|_| set(rng, false)).collect(),
        period: (0..p).map(|_| set(rng, restricted)).collect(),
    }
}

/// `Val^ω` of the pointwise sums.
pub fn distributed_lhs(m: Monoid, f: &Family) -> Weight {
    let sum = |s: &Vec<Weight>| m.sum(s.iter());
    m.val_omega(&UltPeriodic::new(f.stem.iter().map(sum).collect(), f.period.iter().map(sum).collect()).unwrap())
}

/// The sum of `Val^ω` over choice sequences, enumerated over the stem and
/// two unrolled copies of the period. Every enumerated choice is a genuine
/// choice sequence, and for both instances an optimal choice can take one
/// fixed weight per periodic index (dropping weights from the set that recurs
/// never lowers the value), so nothing better is missed.
pub fn distributed_rhs(m: Monoid, f: &Family) -> Weight {
    let slots: Vec<&Vec<Weight>> = f
        .stem
        .iter()
        .chain(f.period.iter())
        .chain(f.period.iter())
        .collect();
    let mut total = m.zero();
    let mut idx = vec![0usize; slots.len()];
    loop {
        let pick: Vec<Weight> = idx.iter().zip(&slots).map(|(&i, s)| s[i].clone()).collect();
        let (stem, period) = pick.split_at(f.stem.len());
        total = m.plus(&total, &m.val_omega(&UltPeriodic::new(stem.to_vec(), period.to_vec()).unwrap()));
        let mut k = 0;
        loop {
            if k == idx.len() {
                return total;
            }
            idx[k] += 1;
            if idx[k] < slots[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// The family of the counterexample to full distributivity over liminf:
/// `{∞, 6}` at every index except `{5}` at index 1.
pub fn liminf_counterexample() -> Family {
    let pair = vec![Weight::PosInf, Weight::int(6)];
    Family {
        stem: vec![pair.clone(), vec![Weight::int(5)]],
        period: vec![pair],
    }
}

/// Outcome of one behavior-preservation comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Preservation {
    pub reference: Weight,
    pub degeneralized: Option<Weight>,
    pub product_removal: Option<Weight>,
    pub generalized_removal: Weight,
}

impl Preservation {
    pub fn holds(&self) -> bool {
        let r = Some(&self.reference);
        self.degeneralized.as_ref().is_none_or(|d| Some(d) == r)
            && self.product_removal.as_ref().is_none_or(|d| Some(d) == r)
            && self.generalized_removal == self.reference
    }
}

/// Compares the brute-force behavior of `a` with: brute force after
/// degeneralization (when small enough) and the evaluated behavior after each
/// applicable ε-removal. The product construction only applies to product
/// monoids; the decoy construction applies to both. `None` when `a` itself is
/// too large for the brute force.
pub fn preservation(a: &Automaton, w: &LassoWord) -> Option<Preservation> {
    let reference = eval_behavior_brute_force(a, w).ok()?;
    let d = degeneralize(a).unwrap();
    let degeneralized = eval_behavior_brute_force(&d, w).ok();
    let product_removal = match a.monoid().kind() {
        wltl::MonoidKind::Product => Some(eval_behavior(&remove_epsilon_product(&d).unwrap(), w).unwrap()),
        wltl::MonoidKind::Generalized => None,
    };
    let generalized_removal = eval_behavior(&remove_epsilon_generalized(&d).unwrap(), w).unwrap();
    Some(Preservation {
        reference,
        degeneralized,
        product_removal,
        generalized_removal,
    })
}

/// The decoy construction exactly as first stated: `1`-moves only between
/// decoys, aggregated moves only between the pairs (q, q'), (q, s_q'),
/// (s_q, q'). Kept as a reference to show the gap it leaves.
pub fn decoy_rule_as_stated(a: &Automaton) -> Automaton {
    let m = a.monoid();
    let n = a.num_states();
    let labels = (0..2 * n).map(|q| q.to_string()).collect();
    let mut out = Automaton::new(m, a.ap().to_vec(), labels);
    let double = |s: &BTreeSet<usize>| s.iter().flat_map(|&q| [q, n + q]).collect();
    out.set_initial(double(a.initial()));
    out.set_final_family(vec![double(&a.final_family()[0])]);
    let cl: Vec<BTreeSet<usize>> = (0..n).map(|q| a.epsilon_closure(q)).collect();
    for q in 0..n {
        for &qt in &cl[q] {
            for (p, s, qb, w) in a.transitions() {
                let Symbol::Letter(l) = s else { continue };
                if p != qt {
                    continue;
                }
                for &q2 in &cl[qb] {
                    let sym = Symbol::Letter(l);
                    if m.is_one(w) {
                        out.set_weight(n + q, sym, n + q2, m.one());
                    } else if !m.is_zero(w) {
                        for (x, y) in [(q, q2), (q, n + q2), (n + q, q2)] {
                            out.add_weight(x, sym, y, w);
                        }
                    }
                }
            }
        }
    }
    out
}

/// `p0 –1→ p1 –3→ p2 ⟲1` over liminf, all states final: the run reads
/// `1, 3, 1, 1, …` and weighs 3.
pub fn one_then_weight_then_ones() -> Automaton {
    let m = Monoid::Liminf;
    let mut a = Automaton::new(m, vec!["a".into()], vec!["p0".into(), "p1".into(), "p2".into()]);
    a.set_weight(0, Symbol::Letter(1), 1, m.one());
    a.set_weight(1, Symbol::Letter(1), 2, Weight::int(3));
    a.set_weight(2, Symbol::Letter(1), 2, m.one());
    a.set_initial(BTreeSet::from([0]));
    a.set_final_family(vec![BTreeSet::from([0, 1, 2])]);
    a
}

/// Unrestricted formulas over `ap`, biased towards the shapes the reduction
/// rewrites: `true` conjuncts, repeated boolean conjuncts and nexts.
pub fn random_formula<R: Rng>(rng: &mut R, m: Monoid, ap: &[String], depth: usize) -> wltl::Formula {
    use wltl::Formula as F;
    let leaf = |rng: &mut R| match rng.gen_range(0..5) {
        0 => F::Const(weight(rng, m)),
        1 => F::tt(m),
        2 => F::NegAtom(ap.choose(rng).unwrap().clone()),
        _ => F::Atom(ap.choose(rng).unwrap().clone()),
    };
    if depth <= 1 || rng.gen_bool(0.2) {
        return leaf(rng);
    }
    let d = depth - 1;
    match rng.gen_range(0..8) {
        0 | 1 => F::and(random_formula(rng, m, ap, d), random_formula(rng, m, ap, d)),
        2 => {
            let g = random_formula(rng, m, ap, d);
            F::and(g.clone(), F::and(random_formula(rng, m, ap, d), g))
        }
        3 => F::or(random_formula(rng, m, ap, d), random_formula(rng, m, ap, d)),
        4 | 5 => F::next(random_formula(rng, m, ap, d)),
        6 => F::until(random_formula(rng, m, ap, d), random_formula(rng, m, ap, d)),
        _ => F::always(random_formula(rng, m, ap, d)),
    }
}

/// Members of a printed set label `{f, g, …}`, split at top-level commas.
pub fn label_members(label: &str) -> BTreeSet<String> {
    let inner = label.trim().trim_start_matches('{').trim_end_matches('}');
    let mut out = BTreeSet::new();
    let (mut depth, mut cur) = (0i32, String::new());
    for c in inner.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.insert(cur.trim().to_string());
                cur.clear();
                continue;
            }
            _ => {}
        }
        cur.push(c);
    }
    if !cur.trim().is_empty() {
        out.insert(cur.trim().to_string());
    }
    out
}

/// A state bijection `b → a` under which initial states, final sets, member
/// sets of the labels and every weight agree; `None` when there is none.
pub fn isomorphism(a: &Automaton, b: &Automaton) -> Option<Vec<usize>> {
    let n = a.num_states();
    if n != b.num_states() || a.monoid() != b.monoid() || a.ap() != b.ap() || n > 9 {
        return None;
    }
    let la: Vec<_> = a.labels().iter().map(|l| label_members(l)).collect();
    let lb: Vec<_> = b.labels().iter().map(|l| label_members(l)).collect();
    let mut perm: Vec<usize> = (0..n).collect();
    let fits = |p: &[usize]| {
        let map_set = |s: &BTreeSet<usize>| s.iter().map(|&q| p[q]).collect::<BTreeSet<usize>>();
        (0..n).all(|q| lb[q] == la[p[q]])
            && map_set(b.initial()) == *a.initial()
            && b.final_family().iter().map(map_set).collect::<Vec<_>>() == a.final_family()
            && b.transitions().count() == a.transitions().count()
            && b.transitions().all(|(q, s, q2, w)| a.weight(p[q], s, p[q2]) == *w)
    };
    // Heap's algorithm over all permutations
    let mut c = vec![0usize; n];
    if fits(&perm) {
        return Some(perm);
    }
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            if fits(&perm) {
                return Some(perm);
            }
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    None
}
