use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::fingroup::{ElemId, Element, GroupHandle, GroupOps};

/// A permutation of `0..degree`, stored as its image list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(pub Vec<u32>);

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm((0..degree as u32).collect())
    }

    /// Built from disjoint cycles on `0..degree`.
    pub fn from_cycles(degree: usize, cycles: &[Vec<u32>]) -> Self {
        let mut img: Vec<u32> = (0..degree as u32).collect();
        for c in cycles {
            for (i, &p) in c.iter().enumerate() {
                img[p as usize] = c[(i + 1) % c.len()];
            }
        }
        Perm(img)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    /// Left to right: apply `self` first, then `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        Perm(self.0.iter().map(|&i| other.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut out = vec![0u32; self.0.len()];
        for (i, &v) in self.0.iter().enumerate() {
            out[v as usize] = i as u32;
        }
        Perm(out)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| i as u32 == v)
    }

    /// Lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        let mut seen = vec![false; self.0.len()];
        let mut l = 1u64;
        for s in 0..self.0.len() {
            if seen[s] {
                continue;
            }
            let mut len = 0u64;
            let mut p = s;
            while !seen[p] {
                seen[p] = true;
                p = self.0[p] as usize;
                len += 1;
            }
            l = num_integer::lcm(l, len);
        }
        l
    }

    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for s in 0..self.0.len() {
            if seen[s] || self.0[s] as usize == s {
                continue;
            }
            let mut c = Vec::new();
            let mut p = s;
            while !seen[p] {
                seen[p] = true;
                c.push(p as u32);
                p = self.0[p] as usize;
            }
            out.push(c);
        }
        out
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let body: Vec<String> = c.iter().map(|p| (p + 1).to_string()).collect();
            write!(f, "({})", body.join(" "))?;
        }
        Ok(())
    }
}

struct PermGroupOps {
    elems: Vec<Perm>,
    index: HashMap<Perm, u32>,
    identity: ElemId,
}

impl GroupOps for PermGroupOps {
    fn order(&self) -> usize {
        self.elems.len()
    }
    fn identity(&self) -> ElemId {
        self.identity
    }
    fn mul(&self, a: ElemId, b: ElemId) -> ElemId {
        ElemId(self.index[&self.elems[a.index()].then(&self.elems[b.index()])])
    }
    fn inv(&self, a: ElemId) -> ElemId {
        ElemId(self.index[&self.elems[a.index()].inverse()])
    }
    fn encode(&self, a: ElemId) -> Element {
        Element(self.elems[a.index()].0.clone())
    }
    fn lookup(&self, e: &Element) -> Option<ElemId> {
        self.index.get(&Perm(e.0.clone())).map(|&i| ElemId(i))
    }
    fn width(&self) -> usize {
        self.elems[0].degree()
    }
}

/// The group generated by permutations of a common degree.
pub fn perm_group(degree: usize, gens: &[Perm], descriptor: impl Into<String>) -> GroupHandle {
    assert!(gens.iter().all(|g| g.degree() == degree), "mixed degrees");
    let id = Perm::identity(degree);
    let mut seen: HashMap<Perm, ()> = HashMap::new();
    seen.insert(id.clone(), ());
    let mut elems = vec![id.clone()];
    let mut i = 0;
    while i < elems.len() {
        let h = elems[i].clone();
        i += 1;
        for g in gens {
            let p = h.then(g);
            if seen.insert(p.clone(), ()).is_none() {
                elems.push(p);
            }
        }
    }
    elems.sort();
    let index: HashMap<Perm, u32> = elems
        .iter()
        .enumerate()
        .map(|(i, p)| (p.clone(), i as u32))
        .collect();
    let gen_ids = gens
        .iter()
        .filter(|g| !g.is_identity())
        .map(|g| ElemId(index[g]))
        .collect();
    let identity = ElemId(index[&id]);
    GroupHandle::new(
        descriptor,
        Arc::new(PermGroupOps {
            elems,
            index,
            identity,
        }),
        gen_ids,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_from_cycle_and_transposition() {
        let a = Perm::from_cycles(3, &[vec![0, 1, 2]]);
        let b = Perm::from_cycles(3, &[vec![0, 1]]);
        assert_eq!(a.order(), 3);
        assert_eq!(b.order(), 2);
        assert_eq!(a.then(&b).order(), 2);
        let g = perm_group(3, &[a, b], "S3");
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
    }

    #[test]
    fn display_is_one_based() {
        assert_eq!(
            Perm::from_cycles(4, &[vec![0, 2], vec![1, 3]]).to_string(),
            "(1 3)(2 4)"
        );
        assert_eq!(Perm::identity(2).to_string(), "()");
    }
}
