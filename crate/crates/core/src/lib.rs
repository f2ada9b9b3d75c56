//! Finite group computations around power subgroups and group laws.
//!
//! * [`fingroup`]: carriers, subgroups, series and quotients.
//! * [`constructions`]: the concrete groups and the group-spec language.
//! * [`words`]: laws, their grammar, evaluation and satisfaction.
//! * [`freegrp`]: free words, presentations, certificates and traces.
//! * [`detect`]: experiment drivers and the named check suite.

pub mod constructions;
pub mod detect;
pub mod fingroup;
pub mod freegrp;
pub mod words;
