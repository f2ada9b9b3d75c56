use crate::constructions::{perm_group, Perm};
use crate::fingroup::GroupHandle;

use super::DetectError;

/// Permutations `a`, `b` of orders `n` and `m` with `ab` of order `m` that
/// do not commute. Their group satisfies the six relators of `G_{m,n}`
/// except `[b^n, (ab)^n]`, so that truncated presentation is not `Z x Z`.
#[derive(Clone, Debug)]
pub struct TruncationWitness {
    pub group: GroupHandle,
    pub a: Perm,
    pub b: Perm,
    pub degree: usize,
}

/// Partitions of `d` into parts `>= 1`, largest part first.
fn partitions(d: usize, max: usize) -> Vec<Vec<usize>> {
    if d == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in (1..=d.min(max)).rev() {
        for mut rest in partitions(d - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// One permutation per cycle type of degree `d` and order `n`.
fn representatives(d: usize, n: u64) -> Vec<Perm> {
    partitions(d, d)
        .into_iter()
        .filter(|p| p.iter().fold(1u64, |l, &x| num_integer::lcm(l, x as u64)) == n)
        .map(|p| {
            let mut next = 0u32;
            let cycles: Vec<Vec<u32>> = p
                .iter()
                .map(|&len| {
                    let c = (next..next + len as u32).collect();
                    next += len as u32;
                    c
                })
                .collect();
            Perm::from_cycles(d, &cycles)
        })
        .collect()
}

/// Lexicographic successor; false after the last permutation.
fn next_permutation(v: &mut [u32]) -> bool {
    let Some(i) = v.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = v.iter().rposition(|&x| x > v[i]).expect("v[i + 1] > v[i]");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

/// Searches degrees `1..=degree_bound` in increasing order. Up to
/// conjugacy `a` is a cycle-type representative; `b` runs over all
/// permutations in lexicographic order.
pub fn truncation_witness(
    m: u64,
    n: u64,
    degree_bound: usize,
) -> Result<TruncationWitness, DetectError> {
    if m < 2 || n < 2 {
        return Err(DetectError::PreconditionViolated(format!(
            "m and n must be at least 2, got {m} and {n}"
        )));
    }
    for d in 1..=degree_bound {
        for a in representatives(d, n) {
            let mut img: Vec<u32> = (0..d as u32).collect();
            loop {
                let b = Perm(img.clone());
                let ab = a.then(&b);
                if b.order() == m && ab.order() == m && ab != b.then(&a) {
                    let group = perm_group(d, &[a.clone(), b.clone()], format!("<{a}, {b}>"));
                    debug_assert!(!group.is_abelian());
                    return Ok(TruncationWitness {
                        group,
                        a,
                        b,
                        degree: d,
                    });
                }
                if !next_permutation(&mut img) {
                    break;
                }
            }
        }
    }
    Err(DetectError::SearchExhausted { m, n, degree_bound })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_for_2_3() {
        let w = truncation_witness(2, 3, 5).unwrap();
        assert_eq!(w.degree, 3);
        assert_eq!(w.group.order(), 6);
        assert!(!w.group.is_abelian());
        assert_eq!(w.a.order(), 3);
        assert_eq!(w.b.order(), 2);
        assert_eq!(w.a.then(&w.b).order(), 2);
    }

    #[test]
    fn exhausted_and_bad_input() {
        assert_eq!(
            truncation_witness(2, 3, 1).unwrap_err(),
            DetectError::SearchExhausted {
                m: 2,
                n: 3,
                degree_bound: 1
            }
        );
        assert!(matches!(
            truncation_witness(1, 3, 5),
            Err(DetectError::PreconditionViolated(_))
        ));
    }

    #[test]
    fn permutation_enumeration() {
        let mut v = vec![0, 1, 2, 3];
        let mut count = 1;
        while next_permutation(&mut v) {
            count += 1;
        }
        assert_eq!(count, 24);
        assert_eq!(partitions(5, 5).len(), 7);
    }
}
