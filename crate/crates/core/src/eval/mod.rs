//! Evaluation on lasso words: the formula semantics, automaton behavior, a
//! brute-force reference for the latter, and the end-to-end comparison.

mod behavior;
mod brute;
mod equiv;
mod lasso;
mod semantics;

pub use behavior::{eval_behavior, BehaviorError};
pub use brute::{eval_behavior_brute_force, BruteError, NODE_LIMIT, STEP_BUDGET};
pub use equiv::{check_equivalence, check_word, normalize, EquivConfig, EquivError, EquivReport, Mismatch, WordCheck};
pub use lasso::{LassoError, LassoWord, Letter};
pub use semantics::{eval_semantics, eval_semantics_with, HORIZON_FACTOR};
