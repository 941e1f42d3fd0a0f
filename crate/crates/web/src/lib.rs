//! Browser bindings: classify, translate and evaluate a formula.
//!
//! Every export takes plain strings and returns a JSON string, so the page
//! needs no generated types. The work happens in [`api`], which is ordinary
//! Rust and tested natively.

pub mod api;

use wasm_bindgen::prelude::*;

fn js(r: Result<String, api::DemoError>) -> Result<String, JsError> {
    r.map_err(|e| JsError::new(&e.to_string()))
}

/// Fragment report and reduced form of `formula`.
#[wasm_bindgen]
pub fn check(formula: &str, monoid: &str, ap: &str) -> Result<String, JsError> {
    js(api::check(formula, monoid, ap))
}

/// The automaton of `formula` in the exchange JSON format.
#[wasm_bindgen]
pub fn translate(formula: &str, monoid: &str, ap: &str, normalize: bool) -> Result<String, JsError> {
    js(api::translate(formula, monoid, ap, normalize))
}

/// Semantics and automaton behavior on a lasso word such as `{a}({b})^w`.
#[wasm_bindgen]
pub fn evaluate(formula: &str, monoid: &str, ap: &str, word: &str) -> Result<String, JsError> {
    js(api::evaluate(formula, monoid, ap, word))
}
