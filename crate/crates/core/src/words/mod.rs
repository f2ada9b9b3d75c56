//! Group laws: the word grammar, printing, evaluation and satisfaction.

mod law;
mod satisfy;
pub mod syntax;

use thiserror::Error;

pub use law::{burnside_word, engel_word, metabelian_word, nilpotency_word, parse_law, Law};
pub use satisfy::{
    satisfies, SatisfactionResult, Strategy, StrategyUsed, Verdict, Witness, DEFAULT_BUDGET,
};
pub use syntax::{Expr, SyntaxError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordsError {
    #[error(transparent)]
    Syntax(SyntaxError),
    #[error("law has no variables")]
    NoVariables,
    #[error("law needs {expected} values, got {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("unknown strategy '{0}' (expected auto, structural or exhaustive:<budget>)")]
    BadStrategy(String),
}
