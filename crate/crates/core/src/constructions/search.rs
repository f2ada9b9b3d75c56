use rayon::prelude::*;

use crate::fingroup::{
    closure, derived_length, exponent, power_subgroup, quotient, ElemId, Element, GroupHandle,
    Subgroup,
};

use super::basic::{cyclic, direct_product, heisenberg3};
use super::semidirect::{action_table, format_action, semidirect_from_table, ActionSpec};
use super::w::build_w;
use super::ConstructionError;

/// Automorphisms of `Z/3 x Z/9` as integer matrices acting on columns
/// `(u, v)`, row 0 read mod 3 and row 1 mod 9, in lexicographic order of
/// `(a, b, c, d)` with `a, b < 3`, `c in {0, 3, 6}`, `d < 9`.
pub fn aut_z3_z9() -> Vec<Aut> {
    let n = direct_product(&[cyclic(3), cyclic(9)]);
    let mut out = Vec::new();
    for a in 0..3 {
        for b in 0..3 {
            for c in [0, 3, 6] {
                for d in 0..9 {
                    let m = [[a, b], [c, d]];
                    if is_bijective(&n, &m) {
                        out.push(m);
                    }
                }
            }
        }
    }
    out
}

fn is_bijective(n: &GroupHandle, m: &Aut) -> bool {
    let mut seen = vec![false; n.order()];
    for g in n.elements() {
        let v = n.encode(g).0;
        let u0 = (m[0][0] * v[0] as i64 + m[0][1] * v[1] as i64).rem_euclid(3) as u32;
        let u1 = (m[1][0] * v[0] as i64 + m[1][1] * v[1] as i64).rem_euclid(9) as u32;
        let img = n.lookup(&Element(vec![u0, u1])).expect("residues");
        if std::mem::replace(&mut seen[img.index()], true) {
            return false;
        }
    }
    true
}

pub type Aut = [[i64; 2]; 2];

fn compose(p: &Aut, q: &Aut) -> Aut {
    let mut r = [[0i64; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            let modulus = if i == 0 { 3 } else { 9 };
            r[i][j] = (p[i][0] * q[0][j] + p[i][1] * q[1][j]).rem_euclid(modulus);
        }
    }
    r
}

const IDENTITY: Aut = [[1, 0], [0, 1]];

fn power(p: &Aut, e: u32) -> Aut {
    (0..e).fold(IDENTITY, |acc, _| compose(&acc, p))
}

fn commutes(p: &Aut, q: &Aut) -> bool {
    compose(p, q) == compose(q, p)
}

fn inverse(p: &Aut) -> Aut {
    let mut prev = IDENTITY;
    let mut cur = *p;
    while cur != IDENTITY {
        prev = cur;
        cur = compose(&cur, p);
    }
    prev
}

/// `[p, q] = p^-1 q^-1 p q`.
fn commutator(p: &Aut, q: &Aut) -> Aut {
    compose(&compose(&compose(&inverse(p), &inverse(q)), p), q)
}

fn rows(m: &Aut) -> Vec<Vec<i64>> {
    vec![m[0].to_vec(), m[1].to_vec()]
}

/// A group of order 1458 with derived length 3 whose power subgroups for 2
/// and 3 are metabelian.
#[derive(Clone, Debug)]
pub struct Candidate1458 {
    pub group: GroupHandle,
    /// Human-readable origin: the action matrices or the restricted construction.
    pub description: String,
    pub derived_length: usize,
    pub derived_length_2: usize,
    pub derived_length_3: usize,
    pub power_2_order: usize,
    pub power_3_order: usize,
}

#[derive(Clone, Debug)]
pub enum SearchOutcome {
    Found(Candidate1458),
    NotFound { examined: usize },
}

fn qualifies(h: &Subgroup, description: String) -> Option<Candidate1458> {
    let dl = derived_length(h)?;
    if dl != 3 {
        return None;
    }
    let p2 = power_subgroup(h, 2);
    let dl2 = derived_length(&p2)?;
    if dl2 > 2 {
        return None;
    }
    let p3 = power_subgroup(h, 3);
    let dl3 = derived_length(&p3)?;
    if dl3 > 2 {
        return None;
    }
    Some(Candidate1458 {
        group: h.ambient().clone(),
        description,
        derived_length: dl,
        derived_length_2: dl2,
        derived_length_3: dl3,
        power_2_order: p2.order(),
        power_3_order: p3.order(),
    })
}

/// Runs through homomorphisms `H3 x Z/2 -> Aut(Z/3 x Z/9)`, given by images
/// `(X, Y, T)` of the generators in lexicographic order, and returns the
/// first semidirect product with derived length 3 and metabelian power
/// subgroups for 2 and 3.
pub fn search_counterexample_1458() -> Result<Candidate1458, ConstructionError> {
    let auts = aut_z3_z9();
    let order3: Vec<Aut> = auts
        .iter()
        .copied()
        .filter(|m| power(m, 3) == IDENTITY)
        .collect();
    let order2: Vec<Aut> = auts
        .iter()
        .copied()
        .filter(|m| power(m, 2) == IDENTITY)
        .collect();
    let mut triples = Vec::new();
    for x in &order3 {
        for y in &order3 {
            let z = commutator(x, y);
            if !commutes(x, &z) || !commutes(y, &z) {
                continue;
            }
            for t in &order2 {
                if commutes(t, x) && commutes(t, y) {
                    triples.push((*x, *y, *t));
                }
            }
        }
    }
    let n = direct_product(&[cyclic(3), cyclic(9)]);
    let k = direct_product(&[heisenberg3(), cyclic(2)]);
    triples
        .par_iter()
        .find_map_first(|(x, y, t)| {
            let spec = ActionSpec::matrices([("x", rows(x)), ("y", rows(y)), ("t", rows(t))]);
            let description = format_action(&spec);
            let table = action_table(&n, &k, &spec).ok()?;
            let semi = semidirect_from_table(
                &n,
                &k,
                table,
                format!("sd(prod(Z(3),Z(9)),prod(heis3,Z(2));{description})"),
            );
            qualifies(&Subgroup::full(&semi.group), description)
        })
        .ok_or(ConstructionError::NotFound)
}

/// Subgroups of `N = Z/9 x Z/9` of the given order (and exponent) that are
/// invariant under the action, as subgroups of `W`.
fn invariant_sections(order: usize, exp: Option<u64>) -> Vec<Subgroup> {
    let w = build_w();
    let g = w.group();
    let n = w.n();
    let mut found: Vec<Subgroup> = Vec::new();
    let members = n.members().to_vec();
    for (i, &a) in members.iter().enumerate() {
        for &b in &members[i..] {
            let s = closure(g, &[a, b]);
            if s.order() != order || exp.is_some_and(|e| exponent(&s) != e) {
                continue;
            }
            if found.contains(&s) {
                continue;
            }
            let invariant = w
                .k_generators()
                .iter()
                .all(|&k| s.members().iter().all(|&m| s.contains(g.conj(m, k))));
            if invariant {
                found.push(s);
            }
        }
    }
    found
}

/// The candidates of order 1458 obtained from `W` itself: `S x| K` for
/// invariant `S <= N` of order 27 and exponent 9, and `W/Q` for invariant
/// `Q <= N` of order 3 with `N/Q` of exponent 9.
pub fn search_restricted_to_w() -> SearchOutcome {
    let w = build_w();
    let g = w.group();
    let k = w.k();
    let mut examined = 0;
    for s in invariant_sections(27, Some(9)) {
        examined += 1;
        let mut gens: Vec<ElemId> = s.generators().to_vec();
        gens.extend_from_slice(k.generators());
        let h = closure(g, &gens);
        if let Some(c) = qualifies(&h, format!("S x| K with |S| = {}", s.order())) {
            return SearchOutcome::Found(c);
        }
    }
    for q in invariant_sections(3, None) {
        let (quot, proj) = quotient(g, &q).expect("invariant subgroups of N are normal");
        let nq = proj.image(&quot, &w.n());
        if exponent(&nq) != 9 {
            continue;
        }
        examined += 1;
        if let Some(c) = qualifies(&Subgroup::full(&quot), "W/Q with |Q| = 3".to_string()) {
            return SearchOutcome::Found(c);
        }
    }
    SearchOutcome::NotFound { examined }
}
