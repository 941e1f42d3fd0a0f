//! `(‖A‖, w)` for an ε-free automaton with at most one final set.
//!
//! Runs of `A` on `w` are the infinite paths of the product graph over
//! `(state, position)` nodes. Both monoids' `Val^ω` depend only on coarse
//! summaries of a path, so the sum over all accepting paths reduces to graph
//! searches.

use std::collections::BinaryHeap;
use std::cmp::Reverse;

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use thiserror::Error;

use super::LassoWord;
use crate::automata::{Automaton, Symbol};
use crate::eval::lasso::LassoError;
use crate::monoid::{Monoid, Weight};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BehaviorError {
    #[error("automaton has non-zero ε-transitions")]
    HasEpsilon,
    #[error("expected at most one final set, found {0}")]
    WrongKind(usize),
    #[error(transparent)]
    Word(#[from] LassoError),
}

/// The product graph: node `q * n + i` is state `q` reading position `i`.
pub(crate) struct Product {
    pub edges: Vec<Vec<(usize, Weight)>>,
    pub initial: Vec<usize>,
    pub accepting: Vec<bool>,
}

impl Product {
    pub(crate) fn build(a: &Automaton, w: &LassoWord) -> Result<Product, BehaviorError> {
        if a.has_epsilon() {
            return Err(BehaviorError::HasEpsilon);
        }
        if a.final_family().len() > 1 {
            return Err(BehaviorError::WrongKind(a.final_family().len()));
        }
        let masks = w.masks(a.ap())?;
        let n = w.len();
        let mut edges = vec![Vec::new(); a.num_states() * n];
        for (p, s, q, wt) in a.transitions() {
            let Symbol::Letter(l) = s else { continue };
            for (i, &mask) in masks.iter().enumerate() {
                if mask == l {
                    edges[p * n + i].push((q * n + w.succ(i), wt.clone()));
                }
            }
        }
        let accepting = (0..a.num_states() * n)
            .map(|v| match a.final_family().first() {
                Some(f) => f.contains(&(v / n)),
                None => true,
            })
            .collect();
        Ok(Product {
            initial: a.initial().iter().map(|&q| q * n).collect(),
            edges,
            accepting,
        })
    }

    fn len(&self) -> usize {
        self.edges.len()
    }

    fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.len()];
        let mut stack = self.initial.clone();
        for &v in &stack {
            seen[v] = true;
        }
        while let Some(v) = stack.pop() {
            for (u, _) in &self.edges[v] {
                if !seen[*u] {
                    seen[*u] = true;
                    stack.push(*u);
                }
            }
        }
        seen
    }

    /// Nodes lying on a cycle, using only edges accepted by `keep` between
    /// nodes accepted by `alive`, whose strongly connected component holds an
    /// accepting node and satisfies `extra` on its internal edges.
    fn good_sccs<K, E>(&self, alive: &[bool], keep: K, extra: E) -> Vec<bool>
    where
        K: Fn(&Weight) -> bool,
        E: Fn(&[&Weight]) -> bool,
    {
        let mut g = DiGraph::<(), ()>::with_capacity(self.len(), 0);
        let ids: Vec<_> = (0..self.len()).map(|_| g.add_node(())).collect();
        for (v, out) in self.edges.iter().enumerate() {
            for (u, w) in out {
                if alive[v] && alive[*u] && keep(w) {
                    g.add_edge(ids[v], ids[*u], ());
                }
            }
        }
        let mut good = vec![false; self.len()];
        let mut comp = vec![usize::MAX; self.len()];
        for (c, scc) in tarjan_scc(&g).into_iter().enumerate() {
            for v in &scc {
                comp[v.index()] = c;
            }
            let nodes: Vec<usize> = scc.iter().map(|v| v.index()).collect();
            let mut internal: Vec<&Weight> = Vec::new();
            for &v in &nodes {
                for (u, w) in &self.edges[v] {
                    if comp[*u] == c && alive[v] && keep(w) {
                        internal.push(w);
                    }
                }
            }
            let cyclic = !internal.is_empty();
            if cyclic && nodes.iter().any(|&v| self.accepting[v]) && extra(&internal) {
                for v in nodes {
                    good[v] = true;
                }
            }
        }
        good
    }
}

/// `(‖A‖, w)`. `A` must be free of ε-transitions and have at most one final
/// set; no final set at all means every state is final.
pub fn eval_behavior(a: &Automaton, w: &LassoWord) -> Result<Weight, BehaviorError> {
    let g = Product::build(a, w)?;
    Ok(match a.monoid() {
        Monoid::Tropical => tropical(&g),
        Monoid::Liminf => liminf(&g),
    })
}

fn finite(w: &Weight) -> num_rational::BigRational {
    match w {
        Weight::Finite(r) => r.clone(),
        _ => unreachable!("tropical edges carry finite weights"),
    }
}

/// Cheapest stem into a zero-cost cycle through an accepting node.
fn tropical(g: &Product) -> Weight {
    let all = vec![true; g.len()];
    let target = g.good_sccs(&all, |w| *w == Weight::int(0), |_| true);
    let mut dist: Vec<Option<num_rational::BigRational>> = vec![None; g.len()];
    let mut heap = BinaryHeap::new();
    for &v in &g.initial {
        dist[v] = Some(num_rational::BigRational::from_integer(0.into()));
        heap.push(Reverse((dist[v].clone().unwrap(), v)));
    }
    while let Some(Reverse((d, v))) = heap.pop() {
        if dist[v].as_ref() != Some(&d) {
            continue;
        }
        if target[v] {
            return Weight::Finite(d);
        }
        for (u, w) in &g.edges[v] {
            let nd = &d + finite(w);
            if dist[*u].as_ref().is_none_or(|old| nd < *old) {
                dist[*u] = Some(nd.clone());
                heap.push(Reverse((nd, *u)));
            }
        }
    }
    Weight::PosInf
}

/// Best of: a cycle through an accepting node whose least finite weight is
/// as large as possible, or an all-`∞` cycle behind the widest stem.
fn liminf(g: &Product) -> Weight {
    let reach = g.reachable();
    let mut thresholds: Vec<&Weight> = g
        .edges
        .iter()
        .enumerate()
        .filter(|(v, _)| reach[*v])
        .flat_map(|(_, out)| out.iter().map(|(_, w)| w))
        .filter(|w| w.is_finite())
        .collect();
    thresholds.sort();
    thresholds.dedup();
    let mut best = Weight::NegInf;
    for t in thresholds.into_iter().rev() {
        let good = g.good_sccs(&reach, |w| w >= t, |ws| ws.iter().any(|w| w.is_finite()));
        if good.iter().any(|&b| b) {
            best = t.clone();
            break;
        }
    }

    let target = g.good_sccs(&reach, |w| *w == Weight::PosInf, |_| true);
    // widest path: maximize the least weight along the stem
    let mut width: Vec<Option<Weight>> = vec![None; g.len()];
    let mut heap = BinaryHeap::new();
    for &v in &g.initial {
        width[v] = Some(Weight::PosInf);
        heap.push((Weight::PosInf, v));
    }
    while let Some((d, v)) = heap.pop() {
        if width[v].as_ref() != Some(&d) {
            continue;
        }
        if target[v] {
            return best.max(d);
        }
        for (u, w) in &g.edges[v] {
            let nd = d.clone().min(w.clone());
            if width[*u].as_ref().is_none_or(|old| nd > *old) {
                width[*u] = Some(nd.clone());
                heap.push((nd, *u));
            }
        }
    }
    best
}
