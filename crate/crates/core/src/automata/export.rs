//! JSON and Graphviz output.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{letter_mask, Automaton, Symbol};
use crate::monoid::{Monoid, UnknownMonoid, WeightError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct JsonAutomaton {
    pub monoid: String,
    pub ap: Vec<String>,
    pub states: Vec<JsonState>,
    pub initial: Vec<String>,
    pub final_family: Vec<Vec<String>>,
    pub transitions: Vec<JsonTransition>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonState {
    pub id: String,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonTransition {
    pub from: String,
    pub letter: JsonLetter,
    pub to: String,
    pub weight: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum JsonLetter {
    Props(Vec<String>),
    Eps(EpsTag),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EpsTag {
    #[serde(rename = "eps")]
    Eps,
}

#[derive(Debug, Error)]
pub enum JsonError {
    #[error(transparent)]
    Syntax(#[from] serde_json::Error),
    #[error(transparent)]
    Monoid(#[from] UnknownMonoid),
    #[error("unknown state id `{0}`")]
    UnknownState(String),
    #[error("duplicate state id `{0}`")]
    DuplicateState(String),
    #[error("unknown proposition `{0}`")]
    UnknownProp(String),
    #[error("bad weight: {0}")]
    Weight(#[from] WeightError),
}

fn state_id(q: usize) -> String {
    format!("q{q}")
}

pub fn to_json_value(a: &Automaton) -> JsonAutomaton {
    let ids = |s: &BTreeSet<usize>| s.iter().map(|&q| state_id(q)).collect();
    JsonAutomaton {
        monoid: a.monoid.to_string(),
        ap: a.ap.clone(),
        states: a
            .labels
            .iter()
            .enumerate()
            .map(|(q, l)| JsonState {
                id: state_id(q),
                label: l.clone(),
            })
            .collect(),
        initial: ids(&a.initial),
        final_family: a.final_family.iter().map(ids).collect(),
        transitions: a
            .transitions()
            .map(|(p, s, q, w)| JsonTransition {
                from: state_id(p),
                letter: match s {
                    Symbol::Eps => JsonLetter::Eps(EpsTag::Eps),
                    Symbol::Letter(l) => JsonLetter::Props(
                        a.letter_props(l).into_iter().map(String::from).collect(),
                    ),
                },
                to: state_id(q),
                weight: w.to_string(),
            })
            .collect(),
    }
}

/// Pretty-printed JSON; deterministic for a given automaton.
pub fn to_json(a: &Automaton) -> String {
    serde_json::to_string_pretty(&to_json_value(a)).expect("automaton serializes")
}

pub fn from_json(text: &str) -> Result<Automaton, JsonError> {
    let j: JsonAutomaton = serde_json::from_str(text)?;
    let monoid: Monoid = j.monoid.parse()?;
    let mut index = BTreeMap::new();
    for (i, s) in j.states.iter().enumerate() {
        if index.insert(s.id.clone(), i).is_some() {
            return Err(JsonError::DuplicateState(s.id.clone()));
        }
    }
    let lookup = |id: &String| {
        index
            .get(id)
            .copied()
            .ok_or_else(|| JsonError::UnknownState(id.clone()))
    };
    let set = |ids: &[String]| ids.iter().map(lookup).collect::<Result<BTreeSet<_>, _>>();
    let mut a = Automaton::new(
        monoid,
        j.ap.clone(),
        j.states.iter().map(|s| s.label.clone()).collect(),
    );
    a.initial = set(&j.initial)?;
    a.final_family = j
        .final_family
        .iter()
        .map(|f| set(f))
        .collect::<Result<_, _>>()?;
    for t in &j.transitions {
        let sym = match &t.letter {
            JsonLetter::Eps(_) => Symbol::Eps,
            JsonLetter::Props(ps) => {
                let mask = letter_mask(&j.ap, ps.iter().map(String::as_str));
                match mask {
                    Some(m) => Symbol::Letter(m),
                    None => {
                        let bad = ps.iter().find(|p| !j.ap.contains(p)).cloned();
                        return Err(JsonError::UnknownProp(bad.unwrap_or_default()));
                    }
                }
            }
        };
        let w = monoid.parse_weight(&t.weight)?;
        a.add_weight(lookup(&t.from)?, sym, lookup(&t.to)?, &w);
    }
    Ok(a)
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Graphviz source. Edge labels are `letter / weight`; a state drawn with
/// `k + 1` rings lies in `k` final sets.
pub fn to_dot(a: &Automaton) -> String {
    let mut out = String::from("digraph automaton {\n  rankdir=LR;\n  node [shape=ellipse];\n");
    for (q, label) in a.labels.iter().enumerate() {
        let rings = 1 + a.final_family.iter().filter(|f| f.contains(&q)).count();
        let sets: Vec<String> = a
            .final_family
            .iter()
            .enumerate()
            .filter(|(_, f)| f.contains(&q))
            .map(|(i, _)| format!("F{}", i + 1))
            .collect();
        let _ = writeln!(
            out,
            "  {} [label=\"{}\", peripheries={rings}, tooltip=\"{}\"];",
            state_id(q),
            escape(label),
            sets.join(" ")
        );
    }
    for &q in &a.initial {
        let _ = writeln!(out, "  start_{q} [shape=point, style=invis];");
        let _ = writeln!(out, "  start_{q} -> {};", state_id(q));
    }
    for (p, s, q, w) in a.transitions() {
        let letter = match s {
            Symbol::Eps => "ε".to_string(),
            Symbol::Letter(l) => format!("{{{}}}", a.letter_props(l).join(",")),
        };
        let _ = writeln!(
            out,
            "  {} -> {} [label=\"{} / {}\"];",
            state_id(p),
            state_id(q),
            escape(&letter),
            w
        );
    }
    out.push_str("}\n");
    out
}
