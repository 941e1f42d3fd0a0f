//! Does the translated automaton compute the formula? Compared word by word.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use super::{eval_behavior, eval_behavior_brute_force, eval_semantics_with, BehaviorError, LassoWord};
use crate::automata::{degeneralize, remove_epsilon, Automaton, AutomatonError};
use crate::formula::{reduce, Formula};
use crate::monoid::{Monoid, Weight};
use crate::sample::random_lasso;
use crate::translate::{translate, TranslateError};

#[derive(Debug, Error)]
pub enum EquivError {
    #[error(transparent)]
    Translate(#[from] TranslateError),
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
    #[error(transparent)]
    Behavior(#[from] BehaviorError),
}

/// Degeneralizes, then removes ε-transitions.
pub fn normalize(a: &Automaton) -> Result<Automaton, AutomatonError> {
    remove_epsilon(&degeneralize(a)?)
}

#[derive(Debug, Clone)]
pub struct EquivConfig {
    pub samples: usize,
    pub seed: u64,
    pub max_stem: usize,
    pub max_period: usize,
    pub cap: usize,
    /// Also compare against the brute-force behavior where it is feasible.
    pub brute: bool,
}

impl Default for EquivConfig {
    fn default() -> Self {
        EquivConfig {
            samples: 20,
            seed: 0,
            max_stem: 3,
            max_period: 3,
            cap: 10_000,
            brute: true,
        }
    }
}

/// Everything computed for one word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordCheck {
    pub semantics: Weight,
    pub behavior: Weight,
    /// `None` when the product graph was too large to enumerate.
    pub brute: Option<Weight>,
    /// Whether quadrupling the until horizon left the semantics unchanged.
    pub horizon_stable: bool,
}

impl WordCheck {
    pub fn agrees(&self) -> bool {
        self.semantics == self.behavior
    }

    pub fn brute_agrees(&self) -> bool {
        self.brute.as_ref().is_none_or(|b| *b == self.behavior)
    }
}

/// Evaluates `f` and the normalized automaton `a` on `w`.
pub fn check_word(
    f: &Formula,
    m: Monoid,
    a: &Automaton,
    w: &LassoWord,
    brute: bool,
) -> Result<WordCheck, BehaviorError> {
    let semantics = eval_semantics_with(f, w, m, 1);
    let wide = eval_semantics_with(f, w, m, 4);
    let behavior = eval_behavior(a, w)?;
    let brute = if brute {
        eval_behavior_brute_force(a, w).ok()
    } else {
        None
    };
    Ok(WordCheck {
        horizon_stable: semantics == wide,
        semantics,
        behavior,
        brute,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub formula: String,
    pub word: String,
    pub semantics: String,
    pub behavior: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BruteMismatch {
    pub word: String,
    pub behavior: String,
    pub brute_force: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct EquivReport {
    pub formula: String,
    pub monoid: String,
    pub samples: usize,
    pub mismatches: Vec<Mismatch>,
    pub brute_checked: usize,
    pub brute_mismatches: Vec<BruteMismatch>,
    pub horizon_unstable: Vec<String>,
}

impl EquivReport {
    pub fn is_ok(&self) -> bool {
        self.mismatches.is_empty() && self.brute_mismatches.is_empty() && self.horizon_unstable.is_empty()
    }
}

/// Reduces `f`, runs it through translate → degeneralize → ε-removal and
/// compares semantics with behavior on `cfg.samples` random lasso words.
pub fn check_equivalence(
    f: &Formula,
    m: Monoid,
    ap: &[String],
    cfg: &EquivConfig,
) -> Result<EquivReport, EquivError> {
    let f = reduce(f, m);
    let t = translate(&f, m, ap, cfg.cap)?;
    let a = normalize(&t.automaton)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let name = f.pretty(m).to_string();
    let mut report = EquivReport {
        formula: name.clone(),
        monoid: m.to_string(),
        samples: cfg.samples,
        mismatches: Vec::new(),
        brute_checked: 0,
        brute_mismatches: Vec::new(),
        horizon_unstable: Vec::new(),
    };
    for _ in 0..cfg.samples {
        let w = random_lasso(&mut rng, ap, cfg.max_stem, cfg.max_period);
        let c = check_word(&f, m, &a, &w, cfg.brute)?;
        if !c.agrees() {
            report.mismatches.push(Mismatch {
                formula: name.clone(),
                word: w.to_string(),
                semantics: c.semantics.to_string(),
                behavior: c.behavior.to_string(),
            });
        }
        if let Some(b) = &c.brute {
            report.brute_checked += 1;
            if *b != c.behavior {
                report.brute_mismatches.push(BruteMismatch {
                    word: w.to_string(),
                    behavior: c.behavior.to_string(),
                    brute_force: b.to_string(),
                });
            }
        }
        if !c.horizon_stable {
            report.horizon_unstable.push(w.to_string());
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;

    fn ap() -> Vec<String> {
        vec!["a".into(), "b".into()]
    }

    fn run(s: &str, m: Monoid) -> EquivReport {
        let f = parse(s, &ap(), m).unwrap();
        check_equivalence(&f, m, &ap(), &EquivConfig::default()).unwrap()
    }

    #[test]
    fn always_liminf() {
        let r = run("G (a & 2)", Monoid::Liminf);
        assert!(r.is_ok(), "{r:?}");
        assert!(r.brute_checked > 0);
    }

    #[test]
    fn boolean_tropical() {
        let m = Monoid::Tropical;
        let f = parse("a | b", &ap(), m).unwrap();
        let t = translate(&f, m, &ap(), 100).unwrap();
        let a = normalize(&t.automaton).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let w = random_lasso(&mut rng, &ap(), 3, 3);
            let c = check_word(&f, m, &a, &w, false).unwrap();
            assert!(c.agrees(), "{w}");
            assert!(c.semantics == m.one() || c.semantics == m.zero());
        }
    }

    #[test]
    fn constant_tropical() {
        let m = Monoid::Tropical;
        let f = parse("3", &ap(), m).unwrap();
        let t = translate(&f, m, &ap(), 100).unwrap();
        let a = normalize(&t.automaton).unwrap();
        let w: LassoWord = "{a}({b}{})^w".parse().unwrap();
        let c = check_word(&f, m, &a, &w, true).unwrap();
        assert_eq!((c.semantics, c.behavior), (Weight::int(3), Weight::int(3)));
    }

    #[test]
    fn until_tropical() {
        let r = run("(2 & a) U (3 & b)", Monoid::Tropical);
        assert!(r.is_ok(), "{r:?}");
    }

    #[test]
    fn always_pipeline_values() {
        let m = Monoid::Liminf;
        let f = parse("G (a & 2)", &ap(), m).unwrap();
        let a = normalize(&translate(&f, m, &ap(), 100).unwrap().automaton).unwrap();
        let val = |w: &str| eval_behavior(&a, &w.parse().unwrap()).unwrap();
        assert_eq!(val("({a})^w"), Weight::int(2));
        assert_eq!(val("{b}({a})^w"), Weight::NegInf);
    }
}
