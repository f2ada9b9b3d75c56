//! Finite group kernel: carriers, subgroup closure, power subgroups,
//! commutator subgroups, derived and lower central series, quotients.
//!
//! Every group is an id space `0..order` with a multiplication oracle. Ids
//! are ordered like the canonical encodings, so sorted member lists are
//! also sorted by encoding.

mod handle;
mod quotient;
mod series;
mod subgroup;

use thiserror::Error;

pub use handle::{ElemId, Element, GroupHandle, GroupOps, TABLE_LIMIT};
pub use quotient::{quotient, Projection};
pub use series::{
    derived_length, derived_series, exponent, lower_central_series, nilpotency_class,
    NilpotencyClass,
};
pub use subgroup::{
    closure, commutator_subgroup, is_normal, is_normal_in, join, normal_closure, normal_closure_in,
    order_of, power_subgroup, Subgroup,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FinGroupError {
    #[error("subgroup is not normal")]
    NotNormal,
}
