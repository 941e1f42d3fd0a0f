//! Reference behavior by enumerating lasso-shaped runs.
//!
//! Works on any valid automaton: ε-transitions are interleaved in the product
//! graph and generalized acceptance is checked by threading the cycle through
//! one node of every final set. A run is a stem from an initial node to the
//! first waypoint `A_1`, then the cycle `A_1 → … → A_l → u –a→ v → A_1` for a
//! designated letter edge `(u, v)`. Each segment is a simple path.
//!
//! Shortcutting a loop out of a stem or segment never makes a run worse
//! (it drops nonnegative summands in the tropical monoid and terms of a
//! minimum in the liminf one), and the designated edge can always be chosen
//! as the period's weakest entry. So the optimum is attained by these shapes.
//! The period value only depends on the *set* of its weights, and the stem
//! value on their multiset; paths are deduplicated accordingly.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use super::LassoWord;
use crate::automata::{Automaton, Symbol};
use crate::eval::lasso::LassoError;
use crate::monoid::{UltPeriodic, Weight};

/// Largest product graph the brute force accepts.
pub const NODE_LIMIT: usize = 40;
/// Search steps before giving up.
pub const STEP_BUDGET: usize = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BruteError {
    #[error("product graph or path space too large for enumeration")]
    TooLarge,
    #[error(transparent)]
    Word(#[from] LassoError),
}

#[derive(Clone, Copy)]
struct Edge {
    to: usize,
    weight: usize,
    letter: bool,
}

struct Graph {
    edges: Vec<Vec<Edge>>,
    weights: Vec<Weight>,
}

type WeightSet = BTreeSet<usize>;
type Multiset = Vec<usize>;

struct Search<'a> {
    g: &'a Graph,
    steps: usize,
}

impl Search<'_> {
    /// For each target, the distinct weight collections of simple paths
    /// from `src` (letter edges only; `multi` keeps multiplicities).
    fn paths(&mut self, src: usize, multi: bool) -> Result<BTreeMap<usize, BTreeSet<Multiset>>, BruteError> {
        let mut out: BTreeMap<usize, BTreeSet<Multiset>> = BTreeMap::new();
        let mut on_path = vec![false; self.g.edges.len()];
        let mut acc = Vec::new();
        self.dfs(src, multi, &mut on_path, &mut acc, &mut out)?;
        Ok(out)
    }

    fn dfs(
        &mut self,
        v: usize,
        multi: bool,
        on_path: &mut [bool],
        acc: &mut Vec<usize>,
        out: &mut BTreeMap<usize, BTreeSet<Multiset>>,
    ) -> Result<(), BruteError> {
        self.steps += 1;
        if self.steps > STEP_BUDGET {
            return Err(BruteError::TooLarge);
        }
        let mut key = acc.clone();
        key.sort_unstable();
        if !multi {
            key.dedup();
        }
        out.entry(v).or_default().insert(key);
        on_path[v] = true;
        for e in &self.g.edges[v] {
            if on_path[e.to] {
                continue;
            }
            if e.letter {
                acc.push(e.weight);
            }
            self.dfs(e.to, multi, on_path, acc, out)?;
            if e.letter {
                acc.pop();
            }
        }
        on_path[v] = false;
        Ok(())
    }
}

/// `(‖A‖, w)` by lasso enumeration; `A` may have ε-transitions and any
/// number of final sets.
pub fn eval_behavior_brute_force(a: &Automaton, w: &LassoWord) -> Result<Weight, BruteError> {
    let m = a.monoid();
    let n = w.len();
    let size = a.num_states() * n;
    if size > NODE_LIMIT {
        return Err(BruteError::TooLarge);
    }
    let masks = w.masks(a.ap())?;
    let mut weights: Vec<Weight> = Vec::new();
    let mut weight_id = |k: &Weight| match weights.iter().position(|x| x == k) {
        Some(i) => i,
        None => {
            weights.push(k.clone());
            weights.len() - 1
        }
    };
    let mut edges = vec![Vec::new(); size];
    let mut letter_edges = Vec::new();
    for (p, s, q, k) in a.transitions() {
        let weight = weight_id(k);
        match s {
            Symbol::Eps => {
                for i in 0..n {
                    if p != q {
                        edges[p * n + i].push(Edge { to: q * n + i, weight, letter: false });
                    }
                }
            }
            Symbol::Letter(l) => {
                for (i, &mask) in masks.iter().enumerate() {
                    if mask == l {
                        let (u, v) = (p * n + i, q * n + w.succ(i));
                        edges[u].push(Edge { to: v, weight, letter: true });
                        letter_edges.push((u, v, weight));
                    }
                }
            }
        }
    }
    let g = Graph { edges, weights };
    let mut search = Search { g: &g, steps: 0 };

    let finals: Vec<BTreeSet<usize>> = if a.final_family().is_empty() {
        vec![(0..a.num_states()).collect()]
    } else {
        a.final_family().to_vec()
    };
    let nodes_of = |f: &BTreeSet<usize>| -> Vec<usize> {
        f.iter().flat_map(|&q| (0..n).map(move |i| q * n + i)).collect()
    };

    let mut stems: BTreeMap<usize, BTreeSet<Multiset>> = BTreeMap::new();
    for &q in a.initial() {
        for (v, ms) in search.paths(q * n, true)? {
            stems.entry(v).or_default().extend(ms);
        }
    }
    let mut seg_cache: BTreeMap<usize, BTreeMap<usize, BTreeSet<Multiset>>> = BTreeMap::new();
    let mut segs = |src: usize, search: &mut Search| -> Result<BTreeMap<usize, BTreeSet<Multiset>>, BruteError> {
        if let Some(s) = seg_cache.get(&src) {
            return Ok(s.clone());
        }
        let s = search.paths(src, false)?;
        seg_cache.insert(src, s.clone());
        Ok(s)
    };

    let mut total = m.zero();
    for a1 in nodes_of(&finals[0]) {
        let Some(stem_sets) = stems.get(&a1) else { continue };
        // period weight sets of partial cycles A_1 → … → A_j, by end node
        let mut frontier: BTreeMap<usize, BTreeSet<WeightSet>> = BTreeMap::new();
        frontier.insert(a1, BTreeSet::from([WeightSet::new()]));
        for f in &finals[1..] {
            let targets: BTreeSet<usize> = nodes_of(f).into_iter().collect();
            let mut next: BTreeMap<usize, BTreeSet<WeightSet>> = BTreeMap::new();
            for (v, sets) in &frontier {
                for (t, ps) in segs(*v, &mut search)? {
                    if !targets.contains(&t) {
                        continue;
                    }
                    for s in sets {
                        for p in &ps {
                            next.entry(t).or_default().insert(s.iter().chain(p).copied().collect());
                        }
                    }
                }
            }
            frontier = next;
        }
        // close the cycle through a designated letter edge
        let mut periods: BTreeSet<WeightSet> = BTreeSet::new();
        for (v, sets) in &frontier {
            let to_u = segs(*v, &mut search)?;
            for &(u, x, k) in &letter_edges {
                let Some(ps1) = to_u.get(&u) else { continue };
                let back = segs(x, &mut search)?;
                let Some(ps2) = back.get(&a1) else { continue };
                for s in sets {
                    for p1 in ps1 {
                        for p2 in ps2 {
                            let mut all: WeightSet = s.iter().chain(p1).chain(p2).copied().collect();
                            all.insert(k);
                            periods.insert(all);
                        }
                    }
                    search.steps += ps1.len() * ps2.len();
                    if search.steps > STEP_BUDGET {
                        return Err(BruteError::TooLarge);
                    }
                }
            }
        }
        for stem in stem_sets {
            for period in &periods {
                let seq = UltPeriodic::new(
                    stem.iter().map(|&i| g.weights[i].clone()).collect(),
                    period.iter().map(|&i| g.weights[i].clone()).collect(),
                )
                .expect("period holds the designated edge");
                total = m.plus(&total, &m.val_omega(&seq));
            }
        }
    }
    Ok(total)
}
