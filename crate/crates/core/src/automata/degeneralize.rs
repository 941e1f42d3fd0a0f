//! Generalized Büchi acceptance to a single final set.

use std::collections::BTreeSet;

use super::{Automaton, AutomatonError, Symbol};

/// Layers the state space `Q × {1, …, l}`: a letter read in layer `i` from a
/// state of `F_i` moves to layer `i + 1` (wrapping from `l` to `1`), every
/// other transition stays in its layer. The result has the single final set
/// `F_1 × {1}`; with no final sets at all, every state becomes final.
pub fn degeneralize(a: &Automaton) -> Result<Automaton, AutomatonError> {
    a.ensure_valid()?;
    let l = a.final_family.len();
    if l == 0 {
        let mut out = a.clone();
        out.final_family = vec![(0..a.num_states()).collect()];
        return Ok(out);
    }
    let n = a.num_states();
    let id = |q: usize, layer: usize| q * l + layer;
    let labels = (0..n)
        .flat_map(|q| (0..l).map(move |i| (q, i)))
        .map(|(q, i)| format!("({}, {})", a.labels[q], i + 1))
        .collect();
    let mut out = Automaton::new(a.monoid, a.ap.clone(), labels);
    out.initial = a.initial.iter().map(|&q| id(q, 0)).collect();
    out.final_family = vec![a.final_family[0].iter().map(|&q| id(q, 0)).collect::<BTreeSet<_>>()];
    for (p, s, q, w) in a.transitions() {
        for i in 0..l {
            let j = match s {
                Symbol::Letter(_) if a.final_family[i].contains(&p) => (i + 1) % l,
                _ => i,
            };
            out.weights.insert((id(p, i), s, id(q, j)), w.clone());
        }
    }
    Ok(out)
}
