//! Detectability of laws through power subgroups: per-group reports,
//! property suites over a fixed corpus, the truncation witness search and
//! the named check table.

mod checks;
mod corpus;
mod properties;
mod report;
mod witness;

use thiserror::Error;

pub use checks::{check_names, verify_paper, CheckRow, Status};
pub use corpus::{corpus, CorpusEntry, CORPUS_VERSION};
pub use properties::{
    basic_quotient_suite, burnside_detectability_suite, class_detectability_suite, coprime_pairs,
    engel_detectability_suite, fitting_suite, lagrange_suite, law_monotonicity_suite,
    normal_candidates, super_basic_suite, PropertyReport,
};
pub use report::{class_detectability_check, detect_report, fitting_check, DetectReport};
pub use witness::{truncation_witness, TruncationWitness};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum DetectError {
    #[error("group is not nilpotent")]
    NotNilpotent,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("no witness for m = {m}, n = {n} up to degree {degree_bound}")]
    SearchExhausted { m: u64, n: u64, degree_bound: usize },
    #[error("unknown check `{0}`")]
    UnknownCheck(String),
}
