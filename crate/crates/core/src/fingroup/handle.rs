use std::fmt;
use std::sync::Arc;

/// Index of an element inside a finite carrier.
///
/// Ids are assigned so that their numeric order agrees with the
/// lexicographic order of the canonical [`Element`] encodings.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElemId(pub u32);

impl ElemId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Canonical encoding of a group element: a fixed-width residue tuple.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Element(pub Vec<u32>);

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// Multiplication oracle of a concrete finite group.
pub trait GroupOps: Send + Sync {
    fn order(&self) -> usize;
    fn identity(&self) -> ElemId;
    fn mul(&self, a: ElemId, b: ElemId) -> ElemId;
    fn inv(&self, a: ElemId) -> ElemId;
    fn encode(&self, a: ElemId) -> Element;
    fn lookup(&self, e: &Element) -> Option<ElemId>;
    /// Number of residues in every encoding.
    fn width(&self) -> usize;
    /// `Some(moduli)` when the group is literally `Z/r1 x ... x Z/rd` with
    /// the standard basis as generators.
    fn cyclic_moduli(&self) -> Option<Vec<u32>> {
        None
    }
}

/// Groups up to this order get a cached multiplication table.
pub const TABLE_LIMIT: usize = 512;

struct Inner {
    descriptor: String,
    ops: Arc<dyn GroupOps>,
    generators: Vec<ElemId>,
    identity: ElemId,
    inverses: Vec<ElemId>,
    table: Option<Vec<ElemId>>,
}

/// A finite group: enumerable carrier `0..order` plus a multiplication oracle.
///
/// Cloning is cheap; the handle is immutable and shareable across threads.
#[derive(Clone)]
pub struct GroupHandle {
    inner: Arc<Inner>,
}

impl fmt::Debug for GroupHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupHandle")
            .field("descriptor", &self.inner.descriptor)
            .field("order", &self.order())
            .finish()
    }
}

impl GroupHandle {
    pub fn new(
        descriptor: impl Into<String>,
        ops: Arc<dyn GroupOps>,
        generators: Vec<ElemId>,
    ) -> Self {
        let n = ops.order();
        let identity = ops.identity();
        let inverses = (0..n as u32).map(|i| ops.inv(ElemId(i))).collect();
        let table = (n <= TABLE_LIMIT).then(|| {
            let mut t = Vec::with_capacity(n * n);
            for a in 0..n as u32 {
                for b in 0..n as u32 {
                    t.push(ops.mul(ElemId(a), ElemId(b)));
                }
            }
            t
        });
        GroupHandle {
            inner: Arc::new(Inner {
                descriptor: descriptor.into(),
                ops,
                generators,
                identity,
                inverses,
                table,
            }),
        }
    }

    /// Same group under a different descriptor.
    pub fn renamed(&self, descriptor: impl Into<String>) -> Self {
        GroupHandle {
            inner: Arc::new(Inner {
                descriptor: descriptor.into(),
                ops: self.inner.ops.clone(),
                generators: self.inner.generators.clone(),
                identity: self.inner.identity,
                inverses: self.inner.inverses.clone(),
                table: self.inner.table.clone(),
            }),
        }
    }

    pub fn descriptor(&self) -> &str {
        &self.inner.descriptor
    }

    pub fn order(&self) -> usize {
        self.inner.inverses.len()
    }

    pub fn identity(&self) -> ElemId {
        self.inner.identity
    }

    pub fn generators(&self) -> &[ElemId] {
        &self.inner.generators
    }

    pub fn ops(&self) -> &Arc<dyn GroupOps> {
        &self.inner.ops
    }

    pub fn elements(&self) -> impl Iterator<Item = ElemId> + '_ {
        (0..self.order() as u32).map(ElemId)
    }

    #[inline]
    pub fn mul(&self, a: ElemId, b: ElemId) -> ElemId {
        match &self.inner.table {
            Some(t) => t[a.index() * self.order() + b.index()],
            None => self.inner.ops.mul(a, b),
        }
    }

    #[inline]
    pub fn inv(&self, a: ElemId) -> ElemId {
        self.inner.inverses[a.index()]
    }

    pub fn pow(&self, g: ElemId, exp: i64) -> ElemId {
        let mut base = if exp < 0 { self.inv(g) } else { g };
        let mut e = exp.unsigned_abs();
        let mut acc = self.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `g^h = h^-1 g h`.
    #[inline]
    pub fn conj(&self, g: ElemId, h: ElemId) -> ElemId {
        self.mul(self.mul(self.inv(h), g), h)
    }

    /// `[g, h] = g^-1 h^-1 g h`.
    #[inline]
    pub fn comm(&self, g: ElemId, h: ElemId) -> ElemId {
        let gh = self.mul(g, h);
        let hg = self.mul(h, g);
        self.mul(self.inv(hg), gh)
    }

    pub fn encode(&self, a: ElemId) -> Element {
        self.inner.ops.encode(a)
    }

    pub fn lookup(&self, e: &Element) -> Option<ElemId> {
        self.inner.ops.lookup(e)
    }

    pub fn width(&self) -> usize {
        self.inner.ops.width()
    }

    pub fn cyclic_moduli(&self) -> Option<Vec<u32>> {
        self.inner.ops.cyclic_moduli()
    }

    pub fn is_identity(&self, g: ElemId) -> bool {
        g == self.identity()
    }

    /// Least `r >= 1` with `g^r = e`.
    pub fn order_of(&self, g: ElemId) -> usize {
        let e = self.identity();
        let mut r = 1;
        let mut acc = g;
        while acc != e {
            acc = self.mul(acc, g);
            r += 1;
        }
        r
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generators();
        gens.iter().enumerate().all(|(i, &a)| {
            gens[i + 1..]
                .iter()
                .all(|&b| self.mul(a, b) == self.mul(b, a))
        })
    }

    pub fn ptr_eq(&self, other: &GroupHandle) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
    }
}
