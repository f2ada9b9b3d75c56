use std::fmt;

use super::handle::{ElemId, GroupHandle};

/// A subgroup of an ambient [`GroupHandle`], stored as a fully materialized
/// member set together with a (pruned) generating set.
#[derive(Clone)]
pub struct Subgroup {
    ambient: GroupHandle,
    members: Vec<ElemId>,
    mask: Vec<bool>,
    generators: Vec<ElemId>,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subgroup")
            .field("ambient", &self.ambient.descriptor())
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for Subgroup {}

impl From<&GroupHandle> for Subgroup {
    fn from(g: &GroupHandle) -> Self {
        Subgroup::full(g)
    }
}

impl Subgroup {
    /// The whole ambient group, generated by the ambient generators.
    pub fn full(g: &GroupHandle) -> Self {
        Subgroup {
            ambient: g.clone(),
            members: g.elements().collect(),
            mask: vec![true; g.order()],
            generators: g.generators().to_vec(),
        }
    }

    pub fn trivial(g: &GroupHandle) -> Self {
        let mut mask = vec![false; g.order()];
        mask[g.identity().index()] = true;
        Subgroup {
            ambient: g.clone(),
            members: vec![g.identity()],
            mask,
            generators: Vec::new(),
        }
    }

    pub fn ambient(&self) -> &GroupHandle {
        &self.ambient
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    /// Members in increasing id (= encoding) order.
    pub fn members(&self) -> &[ElemId] {
        &self.members
    }

    pub fn generators(&self) -> &[ElemId] {
        &self.generators
    }

    #[inline]
    pub fn contains(&self, g: ElemId) -> bool {
        self.mask[g.index()]
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_full(&self) -> bool {
        self.members.len() == self.ambient.order()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.order() <= other.order() && self.members.iter().all(|&g| other.contains(g))
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.ambient;
        let gens = &self.generators;
        gens.iter()
            .enumerate()
            .all(|(i, &a)| gens[i + 1..].iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
    }

    /// Checks closure, identity and inverses against the member set.
    pub fn is_closed(&self) -> bool {
        let g = &self.ambient;
        self.contains(g.identity())
            && self.members.iter().all(|&a| {
                self.contains(g.inv(a))
                    && self.generators.iter().all(|&s| self.contains(g.mul(a, s)))
            })
            && self
                .members
                .iter()
                .all(|&a| self.members.iter().all(|&b| self.contains(g.mul(a, b))))
    }
}

fn bfs(ambient: &GroupHandle, gens: &[ElemId]) -> (Vec<ElemId>, Vec<bool>) {
    let mut mask = vec![false; ambient.order()];
    let e = ambient.identity();
    mask[e.index()] = true;
    let mut queue = vec![e];
    let mut i = 0;
    while i < queue.len() {
        let h = queue[i];
        i += 1;
        for &s in gens {
            let p = ambient.mul(h, s);
            if !mask[p.index()] {
                mask[p.index()] = true;
                queue.push(p);
            }
        }
    }
    queue.sort_unstable();
    (queue, mask)
}

/// Smallest subgroup of `ambient` containing `seed`.
///
/// Seeds already inside the running closure are dropped from the generating
/// set, so the stored generators are irredundant in seed order.
pub fn closure(ambient: &GroupHandle, seed: &[ElemId]) -> Subgroup {
    let mut current = Subgroup::trivial(ambient);
    for &s in seed {
        if !current.contains(s) {
            current.generators.push(s);
            let (members, mask) = bfs(ambient, &current.generators);
            current.members = members;
            current.mask = mask;
            if current.is_full() {
                break;
            }
        }
    }
    current
}

/// Closure of the union of two subgroups of the same ambient group.
pub fn join(a: &Subgroup, b: &Subgroup) -> Subgroup {
    let seeds: Vec<ElemId> = a
        .generators()
        .iter()
        .chain(b.generators())
        .copied()
        .collect();
    closure(a.ambient(), &seeds)
}

/// Smallest subgroup of `within` containing `seed` and normalized by `within`.
pub fn normal_closure_in(within: &Subgroup, seed: &[ElemId]) -> Subgroup {
    let g = within.ambient();
    let mut current = closure(g, seed);
    loop {
        let mut extra = None;
        'scan: for &s in current.generators() {
            for &h in within.generators() {
                let c = g.conj(s, h);
                if !current.contains(c) {
                    extra = Some(c);
                    break 'scan;
                }
            }
        }
        match extra {
            Some(c) => {
                let mut seeds = current.generators().to_vec();
                seeds.push(c);
                current = closure(g, &seeds);
            }
            None => return current,
        }
    }
}

/// Smallest normal subgroup of `g` containing `seed`.
pub fn normal_closure(g: &GroupHandle, seed: &[ElemId]) -> Subgroup {
    normal_closure_in(&Subgroup::full(g), seed)
}

/// `true` iff `h^g` lies in `sub` for all `h` in `sub`, `g` in `within`.
pub fn is_normal_in(within: &Subgroup, sub: &Subgroup) -> bool {
    let g = within.ambient();
    sub.generators().iter().all(|&s| {
        within
            .generators()
            .iter()
            .all(|&h| sub.contains(g.conj(s, h)))
    })
}

pub fn is_normal(g: &GroupHandle, sub: &Subgroup) -> bool {
    is_normal_in(&Subgroup::full(g), sub)
}

/// `G^{*m}`: the subgroup generated by all `m`-th powers of members of `h`.
pub fn power_subgroup(h: &Subgroup, m: u64) -> Subgroup {
    let g = h.ambient();
    let seeds: Vec<ElemId> = h.members().iter().map(|&x| g.pow(x, m as i64)).collect();
    closure(g, &seeds)
}

/// `[A, B]`, computed as the normal closure in `<A, B>` of the commutators of
/// the two generating sets.
pub fn commutator_subgroup(a: &Subgroup, b: &Subgroup) -> Subgroup {
    let g = a.ambient();
    let joined = join(a, b);
    let seeds: Vec<ElemId> = a
        .generators()
        .iter()
        .flat_map(|&x| b.generators().iter().map(move |&y| g.comm(x, y)))
        .collect();
    normal_closure_in(&joined, &seeds)
}

pub fn order_of(g: &GroupHandle, x: ElemId) -> usize {
    g.order_of(x)
}
