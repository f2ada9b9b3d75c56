//! Group constructions: cyclic groups, direct and semidirect products,
//! holomorphs of cyclic groups, the mod-3 Heisenberg group, matrix groups,
//! the group `W` of order 4374 and the order-1458 search.

mod basic;
mod matrix;
mod perm;
mod search;
mod semidirect;
mod spec;
mod w;

use thiserror::Error;

pub use basic::{cyclic, direct_product, heisenberg3};
pub use matrix::{gl2, matrix_group, units, Mat2};
pub use perm::{perm_group, Perm};
pub use search::{
    aut_z3_z9, search_counterexample_1458, search_restricted_to_w, Aut, Candidate1458,
    SearchOutcome,
};
pub use semidirect::{
    holomorph_cyclic, holomorph_parts, semidirect, validate_action, ActionSpec, AutSpec,
    Semidirect, Violation,
};
pub use spec::{parse_group_spec, SpecError};
pub use w::{build_w, w_matrices, WGroup, W_SPEC};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("invalid action: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    InvalidAction(Vec<Violation>),
    #[error("{0}")]
    Spec(#[from] SpecError),
    #[error("no group found in the search space")]
    NotFound,
}
