//! Free words, presentations, conjugate-product certificates, derivation
//! traces and the class-2 nilpotent quotient on two generators.

mod gamma;
mod nq2;
mod presentation;
mod word;

use thiserror::Error;

use crate::words::SyntaxError;

pub use gamma::{
    check_bundled_traces, gamma_alphabet, gamma_presentation, its_abelian_pipeline,
    its_abelian_relators, phi, verify_extension_map, CommutatorForm, ExtensionImage,
    ExtensionReport, PipelineReport, StageReport, SuiteReport, TraceEntry, BUNDLED_TRACES,
};
pub use nq2::{nq2_eval, nq2_quotient_c_order, MalcevTriple};
pub use presentation::{
    check_certificate, check_trace, parse_certificate, parse_presentation, parse_trace,
    render_certificate, render_presentation, render_trace, CertStep, Certificate, DerivationTrace,
    Presentation, TraceStep, Validity,
};
pub use word::{apply_substitution, free_reduce, Alphabet, FreeWord, Letter};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FreeGrpError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error("{0}")]
    BadAlphabet(String),
    #[error("no image or name for generator {0}")]
    UnmappedLetter(u32),
    #[error("relator {0} reduces to the empty word")]
    EmptyRelator(usize),
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
    #[error("word uses generators other than a and b")]
    UnsupportedAlphabet,
    #[error("relator {0} has nonzero exponent sum, so its image is not central")]
    NotCentral(usize),
    #[error("{m} and {n} are not coprime positive integers")]
    NotCoprime { m: u64, n: u64 },
}
