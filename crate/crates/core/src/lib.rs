//! Weighted LTL over idempotent ω-valuation monoids.
//!
//! Formulas of the restricted U-nesting fragments are translated into weighted
//! generalized Büchi automata with ε-transitions, which can then be
//! degeneralized, freed of ε-transitions and evaluated on lasso words.

pub mod automata;
pub mod consistency;
pub mod eval;
pub mod formula;
pub mod monoid;
pub mod sample;
pub mod translate;

pub use formula::{parse, Formula, FragmentReport};
pub use monoid::{Monoid, MonoidKind, UltPeriodic, Weight};
pub use automata::{Automaton, Symbol};
pub use translate::{translate, Translation, TranslateError};
