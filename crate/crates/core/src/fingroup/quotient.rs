use std::sync::Arc;

use super::handle::{ElemId, Element, GroupHandle, GroupOps};
use super::subgroup::{closure, is_normal, Subgroup};
use super::FinGroupError;

/// Coset group `G/N`; every coset is labeled by its least member.
struct QuotientOps {
    parent: GroupHandle,
    reps: Vec<ElemId>,
    coset_of: Vec<ElemId>,
}

impl GroupOps for QuotientOps {
    fn order(&self) -> usize {
        self.reps.len()
    }

    fn identity(&self) -> ElemId {
        self.coset_of[self.parent.identity().index()]
    }

    fn mul(&self, a: ElemId, b: ElemId) -> ElemId {
        let p = self.parent.mul(self.reps[a.index()], self.reps[b.index()]);
        self.coset_of[p.index()]
    }

    fn inv(&self, a: ElemId) -> ElemId {
        self.coset_of[self.parent.inv(self.reps[a.index()]).index()]
    }

    fn encode(&self, a: ElemId) -> Element {
        self.parent.encode(self.reps[a.index()])
    }

    fn lookup(&self, e: &Element) -> Option<ElemId> {
        let p = self.parent.lookup(e)?;
        let c = self.coset_of[p.index()];
        (self.reps[c.index()] == p).then_some(c)
    }

    fn width(&self) -> usize {
        self.parent.width()
    }
}

/// The canonical projection `G -> G/N`, as an id map.
#[derive(Clone, Debug)]
pub struct Projection {
    map: Vec<ElemId>,
}

impl Projection {
    pub fn apply(&self, g: ElemId) -> ElemId {
        self.map[g.index()]
    }

    /// Image of a subgroup of the source group inside the quotient `target`.
    pub fn image(&self, target: &GroupHandle, h: &Subgroup) -> Subgroup {
        let seeds: Vec<ElemId> = h.generators().iter().map(|&g| self.apply(g)).collect();
        closure(target, &seeds)
    }
}

/// Builds `G/N` together with the projection map.
pub fn quotient(g: &GroupHandle, n: &Subgroup) -> Result<(GroupHandle, Projection), FinGroupError> {
    if !is_normal(g, n) {
        return Err(FinGroupError::NotNormal);
    }
    const UNSET: ElemId = ElemId(u32::MAX);
    let mut coset_of = vec![UNSET; g.order()];
    let mut reps = Vec::with_capacity(g.order() / n.order());
    for x in g.elements() {
        if coset_of[x.index()] != UNSET {
            continue;
        }
        let label = ElemId(reps.len() as u32);
        reps.push(x);
        for &m in n.members() {
            coset_of[g.mul(x, m).index()] = label;
        }
    }
    let mut gens: Vec<ElemId> = Vec::new();
    let identity = coset_of[g.identity().index()];
    for &s in g.generators() {
        let c = coset_of[s.index()];
        if c != identity && !gens.contains(&c) {
            gens.push(c);
        }
    }
    let ops = QuotientOps {
        parent: g.clone(),
        reps,
        coset_of: coset_of.clone(),
    };
    let descriptor = format!("{}/[{}]", g.descriptor(), n.order());
    let q = GroupHandle::new(descriptor, Arc::new(ops), gens);
    Ok((q, Projection { map: coset_of }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{cyclic, holomorph_cyclic};
    use crate::fingroup::power_subgroup;

    #[test]
    fn quotient_of_z6_by_squares() {
        let g = cyclic(6);
        let p2 = power_subgroup(&Subgroup::full(&g), 2);
        let (q, proj) = quotient(&g, &p2).unwrap();
        assert_eq!(q.order(), 2);
        for a in g.elements() {
            for b in g.elements() {
                assert_eq!(proj.apply(g.mul(a, b)), q.mul(proj.apply(a), proj.apply(b)));
            }
        }
    }

    #[test]
    fn quotient_by_trivial_keeps_the_table() {
        let g = holomorph_cyclic(7);
        let (q, proj) = quotient(&g, &Subgroup::trivial(&g)).unwrap();
        assert_eq!(q.order(), g.order());
        for a in g.elements() {
            assert_eq!(proj.apply(a), a);
            for b in g.elements() {
                assert_eq!(q.mul(a, b), g.mul(a, b));
            }
        }
    }

    #[test]
    fn non_normal_subgroup_is_rejected() {
        let g = holomorph_cyclic(7);
        let comp: Vec<ElemId> = g.elements().filter(|&x| g.encode(x).0[0] == 0).collect();
        let k = closure(&g, &comp);
        assert!(matches!(quotient(&g, &k), Err(FinGroupError::NotNormal)));
    }
}
