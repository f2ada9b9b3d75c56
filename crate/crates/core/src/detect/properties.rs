//! Property suites over the corpus. Each returns the number of instances
//! checked and a description of every violation.

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::fingroup::{
    closure, derived_series, exponent, lower_central_series, nilpotency_class, power_subgroup,
    quotient, GroupHandle, NilpotencyClass, Subgroup,
};
use crate::words::{
    burnside_word, engel_word, metabelian_word, nilpotency_word, parse_law, satisfies, Law,
    Strategy,
};

use super::corpus::{corpus, CorpusEntry};
use super::report::{class_detectability_check, fitting_check};

#[derive(Clone, Debug, Default, Serialize)]
pub struct PropertyReport {
    pub checked: usize,
    pub violations: Vec<String>,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    fn merge(mut self, other: PropertyReport) -> PropertyReport {
        self.checked += other.checked;
        self.violations.extend(other.violations);
        self
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violations.push(what());
        }
    }
}

fn over_corpus(
    filter: impl Fn(&CorpusEntry) -> bool + Sync + Send,
    f: impl Fn(&CorpusEntry) -> PropertyReport + Sync + Send,
) -> PropertyReport {
    corpus()
        .par_iter()
        .filter(|e| filter(e))
        .map(f)
        .collect::<Vec<_>>()
        .into_iter()
        .fold(PropertyReport::default(), PropertyReport::merge)
}

/// Coprime pairs `2 <= m < n <= max`.
pub fn coprime_pairs(max: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for m in 2..=max {
        for n in m + 1..=max {
            if m.gcd(&n) == 1 {
                out.push((m, n));
            }
        }
    }
    out
}

fn push_distinct(out: &mut Vec<(String, Subgroup)>, label: String, s: Subgroup) {
    if !out.iter().any(|(_, t)| *t == s) {
        out.push((label, s));
    }
}

/// Normal subgroups found without search: power subgroups for `m <= 12`
/// and the terms of the derived and lower central series.
pub fn normal_candidates(g: &GroupHandle) -> Vec<(String, Subgroup)> {
    let full = Subgroup::full(g);
    let mut out = Vec::new();
    for m in 1..=12 {
        push_distinct(&mut out, format!("G*{m}"), power_subgroup(&full, m));
    }
    for (i, s) in derived_series(&full).into_iter().enumerate() {
        push_distinct(&mut out, format!("G^({i})"), s);
    }
    for (i, s) in lower_central_series(&full).into_iter().enumerate() {
        push_distinct(&mut out, format!("gamma_{}", i + 1), s);
    }
    push_distinct(&mut out, "1".into(), Subgroup::trivial(g));
    out
}

/// A surjection maps power subgroups onto power subgroups: for each
/// candidate normal `K` and `m <= max_m`, `q(G*m) = (G/K)*m`.
pub fn basic_quotient_suite(max_m: u64) -> PropertyReport {
    over_corpus(
        |_| true,
        |e| {
            let g = &e.group;
            let full = Subgroup::full(g);
            let powers: Vec<Subgroup> = (1..=max_m).map(|m| power_subgroup(&full, m)).collect();
            let mut r = PropertyReport::default();
            for (label, k) in normal_candidates(g) {
                let (q, proj) = quotient(g, &k).expect("candidates are normal");
                let qfull = Subgroup::full(&q);
                for (m, pm) in (1..=max_m).zip(&powers) {
                    let ok = proj.image(&q, pm) == power_subgroup(&qfull, m);
                    r.check(ok, || format!("{}: image of G*{m} in G/{label}", e.name));
                }
            }
            r
        },
    )
}

/// `g` lies in `<g^m>` whenever `m` is coprime to the order of `g`.
pub fn super_basic_suite(max_m: u64) -> PropertyReport {
    over_corpus(
        |_| true,
        |e| {
            let g = &e.group;
            let mut r = PropertyReport::default();
            for x in g.elements() {
                let ord = g.order_of(x) as u64;
                for m in (1..=max_m).filter(|m| m.gcd(&ord) == 1) {
                    let h = g.pow(x, m as i64);
                    let mut p = h;
                    let mut found = p == x;
                    while !found && !g.is_identity(p) {
                        p = g.mul(p, h);
                        found = p == x;
                    }
                    r.check(found, || {
                        format!("{}: {:?} not in <g^{m}>", e.name, g.encode(x))
                    });
                }
            }
            r
        },
    )
}

fn class_of(h: &Subgroup) -> Option<usize> {
    match nilpotency_class(h) {
        NilpotencyClass::Class(c) => Some(c),
        NilpotencyClass::NotNilpotent => None,
    }
}

/// `class(MN) <= class(M) + class(N)` over pairs of nilpotent candidates.
pub fn fitting_suite() -> PropertyReport {
    over_corpus(
        |_| true,
        |e| {
            let g = &e.group;
            let nilpotent: Vec<(String, Subgroup)> = normal_candidates(g)
                .into_iter()
                .filter(|(_, s)| class_of(s).is_some())
                .collect();
            let mut r = PropertyReport::default();
            for (i, (lm, m)) in nilpotent.iter().enumerate() {
                for (ln, n) in &nilpotent[i..] {
                    let ok = fitting_check(g, m, n).unwrap_or(false);
                    r.check(ok, || format!("{}: {lm} and {ln}", e.name));
                }
            }
            r
        },
    )
}

/// Orders of candidate and cyclic subgroups divide `|G|`, and every such
/// subgroup is closed.
pub fn lagrange_suite() -> PropertyReport {
    over_corpus(
        |_| true,
        |e| {
            let g = &e.group;
            let mut r = PropertyReport::default();
            let mut subs: Vec<(String, Subgroup)> = normal_candidates(g);
            for x in g.elements().step_by((g.order() / 64).max(1)) {
                subs.push((format!("<{:?}>", g.encode(x)), closure(g, &[x])));
            }
            for (label, s) in subs {
                let ok = g.order() % s.order() == 0 && s.contains(g.identity()) && s.is_closed();
                r.check(ok, || format!("{}: {label} of order {}", e.name, s.order()));
            }
            r
        },
    )
}

fn monotone_laws() -> Vec<Law> {
    vec![
        parse_law("[x,y]").expect("fixed law"),
        nilpotency_word(2),
        metabelian_word(),
        burnside_word(2),
        burnside_word(3),
        burnside_word(6),
    ]
}

/// A law that holds in `G` holds in every candidate and cyclic subgroup.
pub fn law_monotonicity_suite() -> PropertyReport {
    let laws = monotone_laws();
    over_corpus(
        |_| true,
        |e| {
            let g = &e.group;
            let full = Subgroup::full(g);
            let mut subs: Vec<(String, Subgroup)> = normal_candidates(g);
            for x in g.elements().step_by((g.order() / 16).max(1)) {
                subs.push((format!("<{:?}>", g.encode(x)), closure(g, &[x])));
            }
            let mut r = PropertyReport::default();
            for law in &laws {
                if !satisfies(&full, law, Strategy::Auto).verdict.holds() {
                    continue;
                }
                for (label, s) in &subs {
                    let ok = satisfies(s, law, Strategy::Auto).verdict.holds();
                    r.check(ok, || format!("{}: {law} fails in {label}", e.name));
                }
            }
            r
        },
    )
}

/// The class of a nilpotent `G` is the larger class of `G*m`, `G*n`.
pub fn class_detectability_suite(max: u64) -> PropertyReport {
    let pairs = coprime_pairs(max);
    over_corpus(
        |e| class_of(&Subgroup::full(&e.group)).is_some(),
        |e| {
            let mut r = PropertyReport::default();
            for &(m, n) in &pairs {
                let ok = class_detectability_check(&e.group, m, n).unwrap_or(false);
                r.check(ok, || format!("{}: m = {m}, n = {n}", e.name));
            }
            r
        },
    )
}

/// Power subgroups for `2..=max`, deduplicated, with the index of each `m`.
fn power_table(g: &GroupHandle, max: u64) -> (Vec<Subgroup>, Vec<usize>) {
    let full = Subgroup::full(g);
    let mut distinct: Vec<Subgroup> = Vec::new();
    let mut index = vec![usize::MAX; max as usize + 1];
    for m in 2..=max {
        let p = power_subgroup(&full, m);
        index[m as usize] = match distinct.iter().position(|s| *s == p) {
            Some(i) => i,
            None => {
                distinct.push(p);
                distinct.len() - 1
            }
        };
    }
    (distinct, index)
}

/// `G` is `k`-Engel iff `G*m` and `G*n` are, for `k <= max_k`, on corpus
/// groups of order at most `max_order`.
pub fn engel_detectability_suite(max_k: usize, max_order: usize, max: u64) -> PropertyReport {
    let pairs = coprime_pairs(max);
    over_corpus(
        |e| e.group.order() <= max_order,
        |e| {
            let g = &e.group;
            let (distinct, index) = power_table(g, max);
            let mut r = PropertyReport::default();
            for k in 1..=max_k {
                let law = engel_word(k);
                let in_g = satisfies(&Subgroup::full(g), &law, Strategy::Auto)
                    .verdict
                    .holds();
                let holds: Vec<bool> = distinct
                    .iter()
                    .map(|s| satisfies(s, &law, Strategy::Auto).verdict.holds())
                    .collect();
                for &(m, n) in &pairs {
                    let ok = in_g == (holds[index[m as usize]] && holds[index[n as usize]]);
                    r.check(ok, || {
                        format!("{}: {k}-Engel with m = {m}, n = {n}", e.name)
                    });
                }
            }
            r
        },
    )
}

/// `exp(G) | r` iff `exp(G*m) | r` and `exp(G*n) | r`, for `r <= max_r`.
pub fn burnside_detectability_suite(max_r: u64, max: u64) -> PropertyReport {
    let pairs = coprime_pairs(max);
    over_corpus(
        |_| true,
        |e| {
            let g = &e.group;
            let (distinct, index) = power_table(g, max);
            let exps: Vec<u64> = distinct.iter().map(exponent).collect();
            let eg = exponent(&Subgroup::full(g));
            let mut r = PropertyReport::default();
            for rr in 1..=max_r {
                for &(m, n) in &pairs {
                    let ok = (rr % eg == 0)
                        == (rr % exps[index[m as usize]] == 0 && rr % exps[index[n as usize]] == 0);
                    r.check(ok, || format!("{}: x^{rr} with m = {m}, n = {n}", e.name));
                }
            }
            r
        },
    )
}
