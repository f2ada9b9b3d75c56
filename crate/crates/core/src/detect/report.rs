use num_integer::Integer;
use serde::Serialize;

use crate::fingroup::{
    is_normal_in, join, nilpotency_class, power_subgroup, GroupHandle, NilpotencyClass, Subgroup,
};
use crate::words::{satisfies, Law, SatisfactionResult, Strategy};

use super::DetectError;

/// Verdicts of one law on `G` and on its power subgroups for `m` and `n`.
#[derive(Clone, Debug, Serialize)]
pub struct DetectReport {
    pub group: String,
    pub law: String,
    pub m: u64,
    pub n: u64,
    pub order_g: usize,
    pub order_m: usize,
    pub order_n: usize,
    pub in_m: SatisfactionResult,
    pub in_n: SatisfactionResult,
    #[serde(rename = "in_G")]
    pub in_g: SatisfactionResult,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
}

impl DetectReport {
    /// The law holds in both power subgroups but not in `G`.
    pub fn is_counterexample(&self) -> bool {
        self.in_m.verdict.holds() && self.in_n.verdict.holds() && self.in_g.verdict.fails()
    }
}

/// Computes `G^{*m}`, `G^{*n}` and the three verdicts with [`Strategy::Auto`].
/// Non-coprime `m, n` only add a warning.
pub fn detect_report(g: &GroupHandle, law: &Law, m: u64, n: u64) -> DetectReport {
    let full = Subgroup::full(g);
    let pm = power_subgroup(&full, m);
    let pn = power_subgroup(&full, n);
    let warning = (m.gcd(&n) != 1)
        .then(|| format!("m = {m} and n = {n} are not coprime; verdicts are computed anyway"));
    DetectReport {
        group: g.descriptor().to_string(),
        law: law.to_string(),
        m,
        n,
        order_g: g.order(),
        order_m: pm.order(),
        order_n: pn.order(),
        in_m: satisfies(&pm, law, Strategy::Auto),
        in_n: satisfies(&pn, law, Strategy::Auto),
        in_g: satisfies(&full, law, Strategy::Auto),
        warning,
    }
}

fn class_of(h: &Subgroup) -> Option<usize> {
    match nilpotency_class(h) {
        NilpotencyClass::Class(c) => Some(c),
        NilpotencyClass::NotNilpotent => None,
    }
}

/// Whether the class of `G` is the larger of the classes of `G^{*m}` and `G^{*n}`.
pub fn class_detectability_check(g: &GroupHandle, m: u64, n: u64) -> Result<bool, DetectError> {
    let full = Subgroup::full(g);
    let c = class_of(&full).ok_or(DetectError::NotNilpotent)?;
    let cm =
        class_of(&power_subgroup(&full, m)).expect("subgroups of nilpotent groups are nilpotent");
    let cn =
        class_of(&power_subgroup(&full, n)).expect("subgroups of nilpotent groups are nilpotent");
    Ok(c == cm.max(cn))
}

/// Whether `class(MN) <= class(M) + class(N)` for normal nilpotent `M`, `N`.
pub fn fitting_check(g: &GroupHandle, m: &Subgroup, n: &Subgroup) -> Result<bool, DetectError> {
    let full = Subgroup::full(g);
    for (label, s) in [("M", m), ("N", n)] {
        if !s.ambient().ptr_eq(g) {
            return Err(DetectError::PreconditionViolated(format!(
                "{label} is not a subgroup of G"
            )));
        }
        if !is_normal_in(&full, s) {
            return Err(DetectError::PreconditionViolated(format!(
                "{label} is not normal"
            )));
        }
    }
    let cm = class_of(m)
        .ok_or_else(|| DetectError::PreconditionViolated("M is not nilpotent".into()))?;
    let cn = class_of(n)
        .ok_or_else(|| DetectError::PreconditionViolated("N is not nilpotent".into()))?;
    let prod = class_of(&join(m, n)).expect("Fitting's theorem: MN is nilpotent");
    Ok(prod <= cm + cn)
}
