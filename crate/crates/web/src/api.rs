use serde::Serialize;
use thiserror::Error;

use wltl::automata::to_json_value;
use wltl::eval::{eval_behavior, eval_semantics, normalize, LassoWord};
use wltl::formula::{is_rultl, is_trultl, reduce};
use wltl::{parse, Formula, FragmentReport, Monoid, MonoidKind};

/// Smaller than the CLI default: the page should answer quickly.
pub const CAP: usize = 2_000;

#[derive(Debug, Error)]
pub enum DemoError {
    #[error("unknown monoid `{0}`")]
    Monoid(String),
    #[error("no atomic propositions given")]
    NoAtoms,
    #[error(transparent)]
    Parse(#[from] wltl::formula::ParseError),
    #[error("bad word: {0}")]
    Word(String),
    #[error(transparent)]
    Translate(#[from] wltl::TranslateError),
    #[error("{0}")]
    Internal(String),
}

fn monoid(s: &str) -> Result<Monoid, DemoError> {
    s.trim().parse().map_err(|_| DemoError::Monoid(s.to_string()))
}

fn atoms(s: &str) -> Result<Vec<String>, DemoError> {
    let ap: Vec<String> = s
        .split(',')
        .map(str::trim)
        .filter(|a| !a.is_empty())
        .map(String::from)
        .collect();
    if ap.is_empty() {
        return Err(DemoError::NoAtoms);
    }
    Ok(ap)
}

fn input(formula: &str, m: &str, ap: &str) -> Result<(Formula, Monoid, Vec<String>), DemoError> {
    let m = monoid(m)?;
    let ap = atoms(ap)?;
    let f = reduce(&parse(formula, &ap, m)?, m);
    Ok((f, m, ap))
}

fn to_string<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable")
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct Check {
    reduced: String,
    fragment: &'static str,
    in_fragment: bool,
    report: FragmentReport,
}

pub fn check(formula: &str, m: &str, ap: &str) -> Result<String, DemoError> {
    let (f, m, _) = input(formula, m, ap)?;
    let (fragment, in_fragment) = match m.kind() {
        MonoidKind::Product => ("RULTL", is_rultl(&f, m)),
        MonoidKind::Generalized => ("t-RULTL", is_trultl(&f, m)),
    };
    Ok(to_string(&Check {
        reduced: f.pretty(m).to_string(),
        fragment,
        in_fragment,
        report: FragmentReport::classify(&f, m),
    }))
}

pub fn translate(formula: &str, m: &str, ap: &str, normalized: bool) -> Result<String, DemoError> {
    let (f, m, ap) = input(formula, m, ap)?;
    let mut a = wltl::translate(&f, m, &ap, CAP)?.automaton;
    if normalized {
        a = normalize(&a).map_err(|e| DemoError::Internal(e.to_string()))?;
    }
    Ok(to_string(&to_json_value(&a)))
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct Evaluation {
    word: String,
    semantics: String,
    behavior: String,
    agree: bool,
}

pub fn evaluate(formula: &str, m: &str, ap: &str, word: &str) -> Result<String, DemoError> {
    let (f, m, ap) = input(formula, m, ap)?;
    let w: LassoWord = word.trim().parse().map_err(|e| DemoError::Word(format!("{e}")))?;
    w.masks(&ap).map_err(|e| DemoError::Word(e.to_string()))?;
    let a = normalize(&wltl::translate(&f, m, &ap, CAP)?.automaton).map_err(|e| DemoError::Internal(e.to_string()))?;
    let semantics = eval_semantics(&f, &w, m);
    let behavior = eval_behavior(&a, &w).map_err(|e| DemoError::Internal(e.to_string()))?;
    Ok(to_string(&Evaluation {
        word: w.to_string(),
        agree: semantics == behavior,
        semantics: semantics.to_string(),
        behavior: behavior.to_string(),
    }))
}
