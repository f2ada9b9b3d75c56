use num_integer::Integer;
use serde::Serialize;

use super::subgroup::{commutator_subgroup, Subgroup};

/// Nilpotency class, or the fact that the lower central series stalls.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub enum NilpotencyClass {
    Class(usize),
    NotNilpotent,
}

impl NilpotencyClass {
    pub fn class(self) -> Option<usize> {
        match self {
            NilpotencyClass::Class(c) => Some(c),
            NilpotencyClass::NotNilpotent => None,
        }
    }
}

/// `H = H^(0) >= H' >= H'' >= ...`, ending at the first repeated term.
pub fn derived_series(h: &Subgroup) -> Vec<Subgroup> {
    let mut series = vec![h.clone()];
    loop {
        let last = series.last().unwrap();
        if last.is_trivial() {
            return series;
        }
        let next = commutator_subgroup(last, last);
        if next.order() == last.order() {
            return series;
        }
        series.push(next);
    }
}

/// Number of steps for the derived series to reach the trivial group;
/// `None` when the group is not solvable.
pub fn derived_length(h: &Subgroup) -> Option<usize> {
    let series = derived_series(h);
    series
        .last()
        .unwrap()
        .is_trivial()
        .then(|| series.len() - 1)
}

/// `gamma_1 = H, gamma_{i+1} = [gamma_i, H]`, ending at the first repeated term.
pub fn lower_central_series(h: &Subgroup) -> Vec<Subgroup> {
    let mut series = vec![h.clone()];
    loop {
        let last = series.last().unwrap();
        if last.is_trivial() {
            return series;
        }
        let next = commutator_subgroup(last, h);
        if next.order() == last.order() {
            return series;
        }
        series.push(next);
    }
}

pub fn nilpotency_class(h: &Subgroup) -> NilpotencyClass {
    let series = lower_central_series(h);
    if series.last().unwrap().is_trivial() {
        NilpotencyClass::Class(series.len() - 1)
    } else {
        NilpotencyClass::NotNilpotent
    }
}

/// Least common multiple of the element orders.
pub fn exponent(h: &Subgroup) -> u64 {
    let g = h.ambient();
    h.members()
        .iter()
        .fold(1u64, |acc, &x| acc.lcm(&(g.order_of(x) as u64)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{cyclic, heisenberg3, holomorph_cyclic};

    #[test]
    fn trivial_group_corner_cases() {
        let g = cyclic(1);
        let full = Subgroup::full(&g);
        assert_eq!(derived_length(&full), Some(0));
        assert_eq!(nilpotency_class(&full), NilpotencyClass::Class(0));
        assert_eq!(exponent(&full), 1);
    }

    #[test]
    fn abelian_groups_have_length_and_class_one() {
        let g = cyclic(12);
        let full = Subgroup::full(&g);
        assert_eq!(derived_length(&full), Some(1));
        assert_eq!(nilpotency_class(&full), NilpotencyClass::Class(1));
        assert_eq!(exponent(&full), 12);
    }

    #[test]
    fn heisenberg_series() {
        let h = Subgroup::full(&heisenberg3());
        assert_eq!(nilpotency_class(&h), NilpotencyClass::Class(2));
        assert_eq!(derived_length(&h), Some(2));
        assert_eq!(exponent(&h), 3);
        let lcs = lower_central_series(&h);
        assert_eq!(
            lcs.iter().map(Subgroup::order).collect::<Vec<_>>(),
            vec![27, 3, 1]
        );
    }

    #[test]
    fn hol7_is_not_nilpotent() {
        let h = Subgroup::full(&holomorph_cyclic(7));
        assert_eq!(nilpotency_class(&h), NilpotencyClass::NotNilpotent);
        let lcs = lower_central_series(&h);
        assert_eq!(lcs.last().unwrap().order(), 7);
        assert_eq!(derived_length(&h), Some(2));
    }

    #[test]
    fn series_strictly_decrease() {
        for g in [heisenberg3(), holomorph_cyclic(9), holomorph_cyclic(7)] {
            let h = Subgroup::full(&g);
            for s in [derived_series(&h), lower_central_series(&h)] {
                for w in s.windows(2) {
                    assert!(w[1].order() < w[0].order());
                    assert!(w[1].is_subset_of(&w[0]));
                }
            }
        }
    }
}
