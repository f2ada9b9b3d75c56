use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_integer::Integer;

use crate::fingroup::{closure, ElemId, Element, GroupHandle, GroupOps};

/// A 2x2 matrix over `Z/n` with entries normalized to `[0, n)`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat2 {
    pub n: u32,
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub d: u32,
}

fn norm(v: i64, n: u32) -> u32 {
    v.rem_euclid(n as i64) as u32
}

impl Mat2 {
    /// `rows = [[a, b], [c, d]]`; negative entries are reduced mod `n`.
    pub fn new(n: u32, rows: [[i64; 2]; 2]) -> Self {
        Mat2 {
            n,
            a: norm(rows[0][0], n),
            b: norm(rows[0][1], n),
            c: norm(rows[1][0], n),
            d: norm(rows[1][1], n),
        }
    }

    pub fn identity(n: u32) -> Self {
        Mat2::new(n, [[1, 0], [0, 1]])
    }

    pub fn entries(&self) -> [u32; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        let n = self.n as u64;
        let f = |x: u32, y: u32, z: u32, w: u32| {
            ((x as u64 * y as u64 + z as u64 * w as u64) % n) as u32
        };
        Mat2 {
            n: self.n,
            a: f(self.a, o.a, self.b, o.c),
            b: f(self.a, o.b, self.b, o.d),
            c: f(self.c, o.a, self.d, o.c),
            d: f(self.c, o.b, self.d, o.d),
        }
    }

    pub fn det(&self) -> u32 {
        let n = self.n as i64;
        norm(
            self.a as i64 * self.d as i64 - self.b as i64 * self.c as i64,
            n as u32,
        )
    }

    pub fn is_invertible(&self) -> bool {
        (self.det() as u64).gcd(&(self.n as u64)) == 1
    }

    pub fn inverse(&self) -> Option<Mat2> {
        let det_inv = mod_inverse(self.det() as i64, self.n as i64)?;
        let n = self.n;
        let s = |v: i64| norm(v * det_inv, n);
        Some(Mat2 {
            n,
            a: s(self.d as i64),
            b: s(-(self.b as i64)),
            c: s(-(self.c as i64)),
            d: s(self.a as i64),
        })
    }

    pub fn pow(&self, e: u64) -> Mat2 {
        let mut acc = Mat2::identity(self.n);
        let mut base = *self;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// `[P, Q] = P^-1 Q^-1 P Q`, for invertible matrices.
    pub fn commutator(&self, o: &Mat2) -> Option<Mat2> {
        Some(self.inverse()?.mul(&o.inverse()?).mul(self).mul(o))
    }

    /// Least `r >= 1` with `M^r = I`, for invertible matrices.
    pub fn order(&self) -> Option<u64> {
        if !self.is_invertible() {
            return None;
        }
        let id = Mat2::identity(self.n);
        let mut acc = *self;
        let mut r = 1;
        while acc != id {
            acc = acc.mul(self);
            r += 1;
        }
        Some(r)
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        vec![
            vec![self.a as i64, self.b as i64],
            vec![self.c as i64, self.d as i64],
        ]
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

pub(crate) fn mod_inverse(a: i64, n: i64) -> Option<i64> {
    let e = a.rem_euclid(n).extended_gcd(&n);
    (e.gcd == 1).then(|| e.x.rem_euclid(n))
}

/// A group of `d x d` matrices over `Z/n`, stored as a sorted element list.
struct MatrixGroupOps {
    n: u32,
    dim: usize,
    elems: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, u32>,
    identity: ElemId,
}

fn mat_mul(n: u32, dim: usize, x: &[u32], y: &[u32]) -> Vec<u32> {
    let mut out = vec![0u32; dim * dim];
    for i in 0..dim {
        for j in 0..dim {
            let mut s = 0u64;
            for k in 0..dim {
                s += x[i * dim + k] as u64 * y[k * dim + j] as u64;
            }
            out[i * dim + j] = (s % n as u64) as u32;
        }
    }
    out
}

fn mat_identity(dim: usize) -> Vec<u32> {
    let mut m = vec![0u32; dim * dim];
    for i in 0..dim {
        m[i * dim + i] = 1;
    }
    m
}

impl MatrixGroupOps {
    fn from_elements(n: u32, dim: usize, mut elems: Vec<Vec<u32>>) -> Self {
        elems.sort();
        elems.dedup();
        let index: HashMap<Vec<u32>, u32> = elems
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i as u32))
            .collect();
        let identity = ElemId(index[&mat_identity(dim)]);
        MatrixGroupOps {
            n,
            dim,
            elems,
            index,
            identity,
        }
    }
}

impl GroupOps for MatrixGroupOps {
    fn order(&self) -> usize {
        self.elems.len()
    }
    fn identity(&self) -> ElemId {
        self.identity
    }
    fn mul(&self, a: ElemId, b: ElemId) -> ElemId {
        let p = mat_mul(
            self.n,
            self.dim,
            &self.elems[a.index()],
            &self.elems[b.index()],
        );
        ElemId(self.index[&p])
    }
    fn inv(&self, a: ElemId) -> ElemId {
        // walk powers until the identity comes back
        let mut prev = self.identity;
        let mut cur = a;
        while cur != self.identity {
            prev = cur;
            cur = self.mul(cur, a);
        }
        prev
    }
    fn encode(&self, a: ElemId) -> Element {
        Element(self.elems[a.index()].clone())
    }
    fn lookup(&self, e: &Element) -> Option<ElemId> {
        self.index.get(&e.0).map(|&i| ElemId(i))
    }
    fn width(&self) -> usize {
        self.dim * self.dim
    }
}

fn matrix_closure(n: u32, dim: usize, gens: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let id = mat_identity(dim);
    let mut seen: HashMap<Vec<u32>, ()> = HashMap::new();
    seen.insert(id.clone(), ());
    let mut queue = vec![id];
    let mut i = 0;
    while i < queue.len() {
        let h = queue[i].clone();
        i += 1;
        for g in gens {
            let p = mat_mul(n, dim, &h, g);
            if seen.insert(p.clone(), ()).is_none() {
                queue.push(p);
            }
        }
    }
    queue
}

/// Subgroup of `GL_d(Z/n)` generated by invertible matrices (row-major entries).
///
/// Returns `None` if some generator is not invertible.
pub fn matrix_group(
    n: u32,
    dim: usize,
    gens: &[Vec<u32>],
    descriptor: impl Into<String>,
) -> Option<GroupHandle> {
    if gens.iter().any(|g| g.len() != dim * dim) {
        return None;
    }
    let gens: Vec<Vec<u32>> = gens
        .iter()
        .map(|g| g.iter().map(|v| v % n).collect())
        .collect();
    // non-invertible matrices have powers that never return to I; detect via det for 1x1 and 2x2
    for g in &gens {
        let unit = match dim {
            1 => (g[0] as u64).gcd(&(n as u64)) == 1,
            2 => Mat2::new(n, [[g[0] as i64, g[1] as i64], [g[2] as i64, g[3] as i64]])
                .is_invertible(),
            _ => return None,
        };
        if !unit {
            return None;
        }
    }
    let elems = matrix_closure(n, dim, &gens);
    let ops = MatrixGroupOps::from_elements(n, dim, elems);
    let gen_ids: Vec<ElemId> = gens.iter().map(|g| ElemId(ops.index[g])).collect();
    Some(GroupHandle::new(descriptor, Arc::new(ops), gen_ids))
}

/// Wraps an explicit element list and picks greedy generators in id order.
fn with_greedy_generators(ops: MatrixGroupOps, descriptor: String) -> GroupHandle {
    let ops: Arc<dyn GroupOps> = Arc::new(ops);
    let tmp = GroupHandle::new(descriptor.clone(), ops.clone(), Vec::new());
    let all: Vec<ElemId> = tmp.elements().collect();
    let gens = closure(&tmp, &all).generators().to_vec();
    GroupHandle::new(descriptor, ops, gens)
}

/// `GL_2(Z/n)`.
pub fn gl2(n: u32) -> GroupHandle {
    let mut elems = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let m = Mat2 { n, a, b, c, d };
                    if m.is_invertible() {
                        elems.push(vec![a, b, c, d]);
                    }
                }
            }
        }
    }
    with_greedy_generators(
        MatrixGroupOps::from_elements(n, 2, elems),
        format!("gl2({n})"),
    )
}

/// The unit group `U(n)` as `1x1` matrices, `n >= 2`.
pub fn units(n: u32) -> GroupHandle {
    assert!(n >= 2, "U(n) needs n >= 2");
    let elems: Vec<Vec<u32>> = (1..n)
        .filter(|&u| (u as u64).gcd(&(n as u64)) == 1)
        .map(|u| vec![u])
        .collect();
    with_greedy_generators(
        MatrixGroupOps::from_elements(n, 1, elems),
        format!("U({n})"),
    )
}
