use std::sync::Arc;

use crate::fingroup::{ElemId, Element, GroupHandle, GroupOps};

struct CyclicOps {
    n: u32,
}

impl GroupOps for CyclicOps {
    fn order(&self) -> usize {
        self.n as usize
    }
    fn identity(&self) -> ElemId {
        ElemId(0)
    }
    fn mul(&self, a: ElemId, b: ElemId) -> ElemId {
        ElemId((a.0 + b.0) % self.n)
    }
    fn inv(&self, a: ElemId) -> ElemId {
        ElemId((self.n - a.0) % self.n)
    }
    fn encode(&self, a: ElemId) -> Element {
        Element(vec![a.0])
    }
    fn lookup(&self, e: &Element) -> Option<ElemId> {
        match e.0.as_slice() {
            [v] if *v < self.n => Some(ElemId(*v)),
            _ => None,
        }
    }
    fn width(&self) -> usize {
        1
    }
    fn cyclic_moduli(&self) -> Option<Vec<u32>> {
        Some(vec![self.n])
    }
}

/// `Z/n`, written additively on residues `0..n`.
pub fn cyclic(n: u32) -> GroupHandle {
    assert!(n >= 1, "cyclic group needs n >= 1");
    let gens = if n > 1 { vec![ElemId(1)] } else { vec![] };
    GroupHandle::new(format!("Z({n})"), Arc::new(CyclicOps { n }), gens)
}

struct ProductOps {
    parts: Vec<GroupHandle>,
    strides: Vec<u32>,
    order: usize,
}

impl ProductOps {
    #[inline]
    fn split(&self, a: ElemId) -> impl Iterator<Item = ElemId> + '_ {
        self.parts
            .iter()
            .zip(&self.strides)
            .map(move |(p, &s)| ElemId((a.0 / s) % p.order() as u32))
    }
}

impl GroupOps for ProductOps {
    fn order(&self) -> usize {
        self.order
    }
    fn identity(&self) -> ElemId {
        let id = self
            .parts
            .iter()
            .zip(&self.strides)
            .map(|(p, &s)| p.identity().0 * s)
            .sum();
        ElemId(id)
    }
    fn mul(&self, a: ElemId, b: ElemId) -> ElemId {
        let id = self
            .split(a)
            .zip(self.split(b))
            .zip(self.parts.iter().zip(&self.strides))
            .map(|((x, y), (p, &s))| p.mul(x, y).0 * s)
            .sum();
        ElemId(id)
    }
    fn inv(&self, a: ElemId) -> ElemId {
        let id = self
            .split(a)
            .zip(self.parts.iter().zip(&self.strides))
            .map(|(x, (p, &s))| p.inv(x).0 * s)
            .sum();
        ElemId(id)
    }
    fn encode(&self, a: ElemId) -> Element {
        let mut out = Vec::with_capacity(self.width());
        for (x, p) in self.split(a).zip(&self.parts) {
            out.extend(p.encode(x).0);
        }
        Element(out)
    }
    fn lookup(&self, e: &Element) -> Option<ElemId> {
        if e.0.len() != self.width() {
            return None;
        }
        let mut offset = 0;
        let mut id = 0;
        for (p, &s) in self.parts.iter().zip(&self.strides) {
            let w = p.width();
            let x = p.lookup(&Element(e.0[offset..offset + w].to_vec()))?;
            id += x.0 * s;
            offset += w;
        }
        Some(ElemId(id))
    }
    fn width(&self) -> usize {
        self.parts.iter().map(GroupHandle::width).sum()
    }
    fn cyclic_moduli(&self) -> Option<Vec<u32>> {
        let mut out = Vec::new();
        for p in &self.parts {
            out.extend(p.cyclic_moduli()?);
        }
        Some(out)
    }
}

/// Direct product; the encoding is the concatenation of the factor encodings.
pub fn direct_product(parts: &[GroupHandle]) -> GroupHandle {
    let mut strides = vec![1u32; parts.len()];
    for i in (0..parts.len().saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * parts[i + 1].order() as u32;
    }
    let order = parts.iter().map(GroupHandle::order).product();
    let ops = ProductOps {
        parts: parts.to_vec(),
        strides,
        order,
    };
    let identity_parts: Vec<ElemId> = parts.iter().map(GroupHandle::identity).collect();
    let mut gens = Vec::new();
    for (i, p) in parts.iter().enumerate() {
        for &g in p.generators() {
            let id = identity_parts
                .iter()
                .enumerate()
                .map(|(j, &e)| if i == j { g.0 } else { e.0 } * ops.strides[j])
                .sum();
            gens.push(ElemId(id));
        }
    }
    let descriptor = format!(
        "prod({})",
        parts
            .iter()
            .map(GroupHandle::descriptor)
            .collect::<Vec<_>>()
            .join(",")
    );
    GroupHandle::new(descriptor, Arc::new(ops), gens)
}

/// Upper unitriangular matrices `[[1,a,c],[0,1,b],[0,0,1]]` over `Z/3`,
/// encoded `(a, b, c)`.
struct HeisenbergOps;

impl HeisenbergOps {
    fn parts(a: ElemId) -> (u32, u32, u32) {
        (a.0 / 9, (a.0 / 3) % 3, a.0 % 3)
    }
    fn id(a: u32, b: u32, c: u32) -> ElemId {
        ElemId(9 * (a % 3) + 3 * (b % 3) + c % 3)
    }
}

impl GroupOps for HeisenbergOps {
    fn order(&self) -> usize {
        27
    }
    fn identity(&self) -> ElemId {
        ElemId(0)
    }
    fn mul(&self, x: ElemId, y: ElemId) -> ElemId {
        let (a, b, c) = Self::parts(x);
        let (a2, b2, c2) = Self::parts(y);
        Self::id(a + a2, b + b2, c + c2 + a * b2)
    }
    fn inv(&self, x: ElemId) -> ElemId {
        let (a, b, c) = Self::parts(x);
        // (-a, -b, -c + ab)
        Self::id(3 - a, 3 - b, 3 - c + a * b)
    }
    fn encode(&self, x: ElemId) -> Element {
        let (a, b, c) = Self::parts(x);
        Element(vec![a, b, c])
    }
    fn lookup(&self, e: &Element) -> Option<ElemId> {
        match e.0.as_slice() {
            [a, b, c] if *a < 3 && *b < 3 && *c < 3 => Some(Self::id(*a, *b, *c)),
            _ => None,
        }
    }
    fn width(&self) -> usize {
        3
    }
}

/// The mod-3 Heisenberg group, generated by `x = (1,0,0)` and `y = (0,1,0)`;
/// `z = [x, y] = (0,0,1)` is central.
pub fn heisenberg3() -> GroupHandle {
    GroupHandle::new("heis3", Arc::new(HeisenbergOps), vec![ElemId(9), ElemId(3)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fingroup::{closure, Subgroup};

    #[test]
    fn product_orders() {
        assert_eq!(direct_product(&[cyclic(9), cyclic(9)]).order(), 81);
        assert_eq!(direct_product(&[heisenberg3(), cyclic(2)]).order(), 54);
        assert_eq!(cyclic(1).order(), 1);
        assert!(cyclic(1).generators().is_empty());
    }

    #[test]
    fn heisenberg_presentation_relations() {
        let h = heisenberg3();
        let (x, y) = (h.generators()[0], h.generators()[1]);
        let z = h.comm(x, y);
        assert_eq!(h.encode(z), Element(vec![0, 0, 1]));
        assert_eq!(h.pow(x, 3), h.identity());
        assert_eq!(h.pow(y, 3), h.identity());
        assert_eq!(h.comm(x, z), h.identity());
        assert_eq!(h.comm(y, z), h.identity());
        assert!(closure(&h, h.generators()).is_full());
    }

    #[test]
    fn encodings_are_sorted_by_id() {
        for g in [direct_product(&[cyclic(3), heisenberg3()]), heisenberg3()] {
            let enc: Vec<Element> = g.elements().map(|x| g.encode(x)).collect();
            assert!(enc.windows(2).all(|w| w[0] < w[1]));
            for x in g.elements() {
                assert_eq!(g.lookup(&g.encode(x)), Some(x));
            }
        }
    }

    #[test]
    fn group_axioms_on_small_products() {
        let g = direct_product(&[heisenberg3(), cyclic(2)]);
        let e = g.identity();
        for a in g.elements() {
            assert_eq!(g.mul(a, e), a);
            assert_eq!(g.mul(g.inv(a), a), e);
            for b in g.elements() {
                for c in g.elements().step_by(5) {
                    assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
                }
            }
        }
        assert!(Subgroup::full(&g).is_closed());
    }
}
