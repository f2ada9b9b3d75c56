use std::sync::OnceLock;

use proptest::prelude::*;

use powgrp::constructions::{
    build_w, cyclic, direct_product, heisenberg3, holomorph_cyclic, holomorph_parts,
    parse_group_spec,
};
use powgrp::detect::{corpus, detect_report, normal_candidates};
use powgrp::fingroup::{
    closure, derived_series, is_normal, lower_central_series, nilpotency_class, power_subgroup,
    quotient, ElemId, GroupHandle, Subgroup,
};
use powgrp::words::{
    burnside_word, engel_word, metabelian_word, nilpotency_word, parse_law, satisfies, Law,
    Strategy as Search,
};

fn sample() -> &'static [GroupHandle] {
    static GROUPS: OnceLock<Vec<GroupHandle>> = OnceLock::new();
    GROUPS.get_or_init(|| {
        vec![
            cyclic(12),
            heisenberg3(),
            holomorph_cyclic(7),
            holomorph_cyclic(9),
            direct_product(&[cyclic(2), cyclic(4), cyclic(3)]),
            parse_group_spec("sd(Z(10),Z(2); t=<(9)>)").unwrap(),
            parse_group_spec("prod(heis3,Z(2))").unwrap(),
            build_w().group().clone(),
        ]
    })
}

fn group_and_elems(k: usize) -> impl Strategy<Value = (GroupHandle, Vec<ElemId>)> {
    (0..sample().len()).prop_flat_map(move |i| {
        let g = sample()[i].clone();
        let n = g.order() as u32;
        prop::collection::vec(0..n, k)
            .prop_map(move |v| (g.clone(), v.into_iter().map(ElemId).collect()))
    })
}

fn law_text() -> impl Strategy<Value = String> {
    let leaf = prop_oneof![
        Just("x".to_string()),
        Just("y".to_string()),
        Just("x3".to_string())
    ];
    leaf.prop_recursive(4, 24, 3, |inner| {
        prop_oneof![
            (inner.clone(), -3i64..4).prop_map(|(u, e)| format!("({u})^{e}")),
            (inner.clone(), inner.clone()).prop_map(|(u, v)| format!("[{u},{v}]")),
            (inner.clone(), inner.clone()).prop_map(|(u, v)| format!("({u})^({v})")),
            (inner.clone(), inner).prop_map(|(u, v)| format!("{u} {v}")),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn group_axioms((g, e) in group_and_elems(3)) {
        let (a, b, c) = (e[0], e[1], e[2]);
        prop_assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
        prop_assert_eq!(g.mul(a, g.identity()), a);
        prop_assert_eq!(g.mul(g.inv(a), a), g.identity());
        prop_assert_eq!(g.lookup(&g.encode(a)), Some(a));
        prop_assert_eq!(g.order() % g.order_of(a), 0);
    }

    #[test]
    fn generated_subgroups_obey_lagrange((g, e) in group_and_elems(2)) {
        let h = closure(&g, &e);
        prop_assert!(h.contains(g.identity()) && h.is_closed());
        prop_assert_eq!(g.order() % h.order(), 0);
        prop_assert!(h.members().iter().all(|&x| h.contains(g.inv(x))));
    }

    #[test]
    fn power_subgroups_are_normal_and_nested((g, _) in group_and_elems(0), d in 1u64..7, k in 1u64..4) {
        let full = Subgroup::full(&g);
        let pd = power_subgroup(&full, d);
        let pm = power_subgroup(&full, d * k);
        prop_assert!(is_normal(&g, &pd));
        prop_assert!(pm.is_subset_of(&pd));
    }

    #[test]
    fn super_basic((g, e) in group_and_elems(1), m in 1u64..25) {
        let x = e[0];
        let ord = g.order_of(x) as u64;
        if num_integer::gcd(ord, m) == 1 {
            prop_assert!(closure(&g, &[g.pow(x, m as i64)]).contains(x));
        }
    }

    #[test]
    fn law_evaluation_is_homomorphic(u in law_text(), v in law_text(), (g, t) in group_and_elems(3)) {
        let l = |s: &str| parse_law(s).unwrap();
        let (lu, lv) = (l(&u), l(&v));
        let eu = lu.evaluate(&g, &t).unwrap();
        let ev = lv.evaluate(&g, &t).unwrap();
        prop_assert_eq!(l(&format!("({u})({v})")).evaluate(&g, &t).unwrap(), g.mul(eu, ev));
        prop_assert_eq!(l(&format!("({u})^-1")).evaluate(&g, &t).unwrap(), g.inv(eu));
        prop_assert_eq!(l(&format!("({u})^({v})")).evaluate(&g, &t).unwrap(), g.conj(eu, ev));
        prop_assert_eq!(l(&format!("[{u},{v}]")).evaluate(&g, &t).unwrap(), g.comm(eu, ev));
    }

    #[test]
    fn law_print_parse_round_trip(u in law_text()) {
        let law = parse_law(&u).unwrap();
        let again = parse_law(&law.to_string()).unwrap();
        prop_assert_eq!(again.to_string(), law.to_string());
        prop_assert_eq!(again.expr(), law.expr());
    }
}

#[test]
fn series_decrease_strictly_until_stable() {
    for e in corpus() {
        let full = Subgroup::full(&e.group);
        for series in [derived_series(&full), lower_central_series(&full)] {
            for w in series.windows(2) {
                assert!(
                    w[1].is_subset_of(&w[0]) && w[1].order() < w[0].order(),
                    "{}",
                    e.name
                );
            }
        }
    }
}

#[test]
fn projections_are_homomorphisms() {
    for e in corpus().iter().filter(|e| e.group.order() <= 200) {
        let g = &e.group;
        for (_, n) in normal_candidates(g) {
            let (q, proj) = quotient(g, &n).unwrap();
            assert_eq!(q.order() * n.order(), g.order());
            for a in g.elements() {
                for b in g.elements() {
                    assert_eq!(
                        proj.apply(g.mul(a, b)),
                        q.mul(proj.apply(a), proj.apply(b)),
                        "{}",
                        e.name
                    );
                }
            }
        }
    }
}

#[test]
fn semidirect_parts() {
    for n in [5, 7, 8, 9] {
        let s = holomorph_parts(n);
        let normal = s.normal_subgroup();
        assert_eq!(s.group.order(), normal.order() * s.complement().order());
        assert!(is_normal(&s.group, &normal));
        assert_eq!(
            quotient(&s.group, &normal).unwrap().0.order(),
            s.complement().order()
        );
    }
}

fn agree(h: &Subgroup, law: &Law) {
    let s = satisfies(h, law, Search::Structural);
    let x = satisfies(h, law, Search::Exhaustive(u64::MAX));
    if s.verdict.name() != "unknown" {
        assert_eq!(
            s.verdict.holds(),
            x.verdict.holds(),
            "{law} on {}",
            h.ambient().descriptor()
        );
    }
    if let powgrp::words::Verdict::Fails(w) = &x.verdict {
        assert_ne!(
            law.evaluate(h.ambient(), &w.ids).unwrap(),
            h.ambient().identity()
        );
    }
}

#[test]
fn structural_and_exhaustive_agree() {
    let commutator = parse_law("[x,y]").unwrap();
    for e in corpus() {
        let full = Subgroup::full(&e.group);
        let order = e.group.order();
        if order <= 200 {
            agree(&full, &commutator);
            agree(&full, &nilpotency_word(2));
            for k in 1..=3 {
                agree(&full, &engel_word(k));
            }
        }
        if order <= 24 {
            agree(&full, &metabelian_word());
        }
        for m in [2, 3, 4, 6] {
            agree(&full, &burnside_word(m));
        }
    }
}

#[test]
fn class_c_groups_satisfy_short_commutator_laws() {
    for e in corpus().iter().filter(|e| e.group.order() <= 200) {
        let full = Subgroup::full(&e.group);
        if let Some(c) = nilpotency_class(&full).class() {
            let c = c.max(1);
            assert!(
                satisfies(&full, &nilpotency_word(c), Search::Auto)
                    .verdict
                    .holds(),
                "{}",
                e.name
            );
            for k in c..=4 {
                assert!(
                    satisfies(&full, &engel_word(k), Search::Auto)
                        .verdict
                        .holds(),
                    "{} {k}",
                    e.name
                );
            }
        }
    }
}

#[test]
fn detect_reports_are_consistent() {
    let laws = [
        parse_law("[x,y]").unwrap(),
        metabelian_word(),
        burnside_word(3),
        engel_word(2),
    ];
    for e in corpus().iter().filter(|e| e.group.order() <= 200) {
        for law in &laws {
            for (m, n) in [(2, 3), (3, 4), (2, 5), (4, 6)] {
                let r = detect_report(&e.group, law, m, n);
                if r.in_g.verdict.holds() {
                    assert!(
                        r.in_m.verdict.holds() && r.in_n.verdict.holds(),
                        "{} {law}",
                        e.name
                    );
                }
                assert_eq!(r.warning.is_some(), num_integer::gcd(m, n) != 1);
            }
        }
    }
}
