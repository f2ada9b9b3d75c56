use std::fmt;
use std::sync::Arc;

use crate::fingroup::{closure, ElemId, Element, GroupHandle, GroupOps, Subgroup};

use super::matrix::units;
use super::ConstructionError;

/// How one generator of the acting group moves the normal factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AutSpec {
    /// Integer matrix acting on column vectors of `Z/r1 x ... x Z/rd`;
    /// row `i` is read mod `r_i`.
    Matrix(Vec<Vec<i64>>),
    /// Images of the generators of the normal factor, in order.
    Images(Vec<Element>),
}

/// One automorphism per generator of the acting group, matched by position;
/// the names are labels only.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ActionSpec {
    pub entries: Vec<(String, AutSpec)>,
}

impl ActionSpec {
    pub fn matrices<S: Into<String>>(
        entries: impl IntoIterator<Item = (S, Vec<Vec<i64>>)>,
    ) -> Self {
        ActionSpec {
            entries: entries
                .into_iter()
                .map(|(name, m)| (name.into(), AutSpec::Matrix(m)))
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    GeneratorCount {
        expected: usize,
        found: usize,
    },
    /// Matrix form used on a group that is not a product of cyclic groups.
    NotCyclicProduct,
    MatrixShape {
        generator: String,
    },
    /// A matrix entry does not respect the moduli of the factors.
    NotWellDefined {
        generator: String,
    },
    UnknownImage {
        generator: String,
    },
    NotHomomorphism {
        generator: String,
    },
    NotBijective {
        generator: String,
    },
    /// `alpha(k g) != alpha(k) o alpha(g)` at this element of the acting group.
    ActionMismatch {
        element: Element,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::GeneratorCount { expected, found } => {
                write!(f, "expected {expected} automorphisms, found {found}")
            }
            Violation::NotCyclicProduct => {
                write!(f, "matrix action needs a product of cyclic groups")
            }
            Violation::MatrixShape { generator } => {
                write!(f, "{generator}: matrix has the wrong shape")
            }
            Violation::NotWellDefined { generator } => {
                write!(f, "{generator}: matrix is not well defined on the moduli")
            }
            Violation::UnknownImage { generator } => {
                write!(f, "{generator}: image is not an element")
            }
            Violation::NotHomomorphism { generator } => {
                write!(f, "{generator}: images do not define a homomorphism")
            }
            Violation::NotBijective { generator } => write!(f, "{generator}: map is not bijective"),
            Violation::ActionMismatch { element } => {
                write!(f, "action is not a homomorphism at {element}")
            }
        }
    }
}

/// Permutation of the normal factor's ids, one per id of the acting group.
pub(crate) type ActionTable = Vec<Vec<u32>>;

fn matrix_map(n: &GroupHandle, name: &str, m: &[Vec<i64>]) -> Result<Vec<u32>, Violation> {
    let moduli = n.cyclic_moduli().ok_or(Violation::NotCyclicProduct)?;
    let d = moduli.len();
    if m.len() != d || m.iter().any(|row| row.len() != d) {
        return Err(Violation::MatrixShape {
            generator: name.to_string(),
        });
    }
    for (i, row) in m.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            if (v * moduli[j] as i64).rem_euclid(moduli[i] as i64) != 0 {
                return Err(Violation::NotWellDefined {
                    generator: name.to_string(),
                });
            }
        }
    }
    let map = n
        .elements()
        .map(|x| {
            let v = n.encode(x).0;
            let w: Vec<u32> = (0..d)
                .map(|i| {
                    let s: i64 = (0..d).map(|j| m[i][j] * v[j] as i64).sum();
                    s.rem_euclid(moduli[i] as i64) as u32
                })
                .collect();
            n.lookup(&Element(w)).expect("residue vector").0
        })
        .collect();
    Ok(map)
}

fn images_map(n: &GroupHandle, name: &str, images: &[Element]) -> Result<Vec<u32>, Violation> {
    if images.len() != n.generators().len() {
        return Err(Violation::MatrixShape {
            generator: name.to_string(),
        });
    }
    let img: Vec<ElemId> = images
        .iter()
        .map(|e| {
            n.lookup(e).ok_or_else(|| Violation::UnknownImage {
                generator: name.to_string(),
            })
        })
        .collect::<Result<_, _>>()?;
    const UNSET: u32 = u32::MAX;
    let mut map = vec![UNSET; n.order()];
    map[n.identity().index()] = n.identity().0;
    let mut queue = vec![n.identity()];
    let mut i = 0;
    while i < queue.len() {
        let h = queue[i];
        i += 1;
        for (&g, &gi) in n.generators().iter().zip(&img) {
            let hg = n.mul(h, g);
            let target = n.mul(ElemId(map[h.index()]), gi).0;
            if map[hg.index()] == UNSET {
                map[hg.index()] = target;
                queue.push(hg);
            } else if map[hg.index()] != target {
                return Err(Violation::NotHomomorphism {
                    generator: name.to_string(),
                });
            }
        }
    }
    Ok(map)
}

fn is_permutation(map: &[u32]) -> bool {
    let mut seen = vec![false; map.len()];
    for &v in map {
        if v as usize >= map.len() || seen[v as usize] {
            return false;
        }
        seen[v as usize] = true;
    }
    true
}

pub(crate) fn action_table(
    n: &GroupHandle,
    k: &GroupHandle,
    action: &ActionSpec,
) -> Result<ActionTable, Vec<Violation>> {
    if action.entries.len() != k.generators().len() {
        return Err(vec![Violation::GeneratorCount {
            expected: k.generators().len(),
            found: action.entries.len(),
        }]);
    }
    let mut violations = Vec::new();
    let mut gen_maps = Vec::new();
    for (name, spec) in &action.entries {
        let map = match spec {
            AutSpec::Matrix(m) => matrix_map(n, name, m),
            AutSpec::Images(imgs) => images_map(n, name, imgs),
        };
        match map {
            Ok(map) if is_permutation(&map) => gen_maps.push(map),
            Ok(_) => violations.push(Violation::NotBijective {
                generator: name.clone(),
            }),
            Err(v) => violations.push(v),
        }
    }
    if !violations.is_empty() {
        return Err(violations);
    }
    // extend along the Cayley graph of K: alpha(k g) = alpha(k) o alpha(g)
    let identity_map: Vec<u32> = (0..n.order() as u32).collect();
    let mut table: Vec<Option<Vec<u32>>> = vec![None; k.order()];
    table[k.identity().index()] = Some(identity_map);
    let mut queue = vec![k.identity()];
    let mut i = 0;
    while i < queue.len() {
        let h = queue[i];
        i += 1;
        for (&g, gmap) in k.generators().iter().zip(&gen_maps) {
            let hg = k.mul(h, g);
            let hmap = table[h.index()].as_ref().unwrap();
            let composed: Vec<u32> = gmap.iter().map(|&v| hmap[v as usize]).collect();
            match &table[hg.index()] {
                None => {
                    table[hg.index()] = Some(composed);
                    queue.push(hg);
                }
                Some(existing) if *existing != composed => {
                    violations.push(Violation::ActionMismatch {
                        element: k.encode(hg),
                    });
                    return Err(violations);
                }
                Some(_) => {}
            }
        }
    }
    Ok(table
        .into_iter()
        .map(|m| m.expect("generators generate K"))
        .collect())
}

/// Checks that every generator acts by an automorphism of `n` and that the
/// induced map `k -> Aut(n)` is a homomorphism.
pub fn validate_action(
    n: &GroupHandle,
    k: &GroupHandle,
    action: &ActionSpec,
) -> Result<(), Vec<Violation>> {
    action_table(n, k, action).map(|_| ())
}

struct SemidirectOps {
    n: GroupHandle,
    k: GroupHandle,
    table: ActionTable,
    k_order: u32,
}

impl SemidirectOps {
    #[inline]
    fn split(&self, a: ElemId) -> (ElemId, ElemId) {
        (ElemId(a.0 / self.k_order), ElemId(a.0 % self.k_order))
    }
    #[inline]
    fn join(&self, n: ElemId, k: ElemId) -> ElemId {
        ElemId(n.0 * self.k_order + k.0)
    }
}

impl GroupOps for SemidirectOps {
    fn order(&self) -> usize {
        self.n.order() * self.k.order()
    }
    fn identity(&self) -> ElemId {
        self.join(self.n.identity(), self.k.identity())
    }
    fn mul(&self, a: ElemId, b: ElemId) -> ElemId {
        let (n1, k1) = self.split(a);
        let (n2, k2) = self.split(b);
        let moved = ElemId(self.table[k1.index()][n2.index()]);
        self.join(self.n.mul(n1, moved), self.k.mul(k1, k2))
    }
    fn inv(&self, a: ElemId) -> ElemId {
        let (n, k) = self.split(a);
        let ki = self.k.inv(k);
        let moved = ElemId(self.table[ki.index()][self.n.inv(n).index()]);
        self.join(moved, ki)
    }
    fn encode(&self, a: ElemId) -> Element {
        let (n, k) = self.split(a);
        let mut v = self.n.encode(n).0;
        v.extend(self.k.encode(k).0);
        Element(v)
    }
    fn lookup(&self, e: &Element) -> Option<ElemId> {
        let w = self.n.width();
        if e.0.len() != w + self.k.width() {
            return None;
        }
        let n = self.n.lookup(&Element(e.0[..w].to_vec()))?;
        let k = self.k.lookup(&Element(e.0[w..].to_vec()))?;
        Some(self.join(n, k))
    }
    fn width(&self) -> usize {
        self.n.width() + self.k.width()
    }
}

/// `N x| K` with `(n1, k1)(n2, k2) = (n1 * alpha_{k1}(n2), k1 k2)`, together
/// with the embeddings of both factors.
#[derive(Clone, Debug)]
pub struct Semidirect {
    pub group: GroupHandle,
    pub normal: GroupHandle,
    pub acting: GroupHandle,
}

impl Semidirect {
    pub fn embed_normal(&self, n: ElemId) -> ElemId {
        ElemId(n.0 * self.acting.order() as u32 + self.acting.identity().0)
    }

    pub fn embed_acting(&self, k: ElemId) -> ElemId {
        ElemId(self.normal.identity().0 * self.acting.order() as u32 + k.0)
    }

    pub fn split(&self, g: ElemId) -> (ElemId, ElemId) {
        let ko = self.acting.order() as u32;
        (ElemId(g.0 / ko), ElemId(g.0 % ko))
    }

    /// The normal factor `N x {e}`.
    pub fn normal_subgroup(&self) -> Subgroup {
        let gens: Vec<ElemId> = self
            .normal
            .generators()
            .iter()
            .map(|&n| self.embed_normal(n))
            .collect();
        closure(&self.group, &gens)
    }

    /// The complement `{e} x K`.
    pub fn complement(&self) -> Subgroup {
        let gens: Vec<ElemId> = self
            .acting
            .generators()
            .iter()
            .map(|&k| self.embed_acting(k))
            .collect();
        closure(&self.group, &gens)
    }

    /// Image in the complement of a list of elements of `K`.
    pub fn acting_subgroup(&self, ks: &[ElemId]) -> Subgroup {
        let gens: Vec<ElemId> = ks.iter().map(|&k| self.embed_acting(k)).collect();
        closure(&self.group, &gens)
    }
}

pub fn semidirect(
    n: &GroupHandle,
    k: &GroupHandle,
    action: &ActionSpec,
) -> Result<Semidirect, ConstructionError> {
    let descriptor = format!(
        "sd({},{};{})",
        n.descriptor(),
        k.descriptor(),
        format_action(action)
    );
    semidirect_named(n, k, action, descriptor)
}

pub(crate) fn semidirect_named(
    n: &GroupHandle,
    k: &GroupHandle,
    action: &ActionSpec,
    descriptor: String,
) -> Result<Semidirect, ConstructionError> {
    let table = action_table(n, k, action).map_err(ConstructionError::InvalidAction)?;
    Ok(semidirect_from_table(n, k, table, descriptor))
}

pub(crate) fn semidirect_from_table(
    n: &GroupHandle,
    k: &GroupHandle,
    table: ActionTable,
    descriptor: String,
) -> Semidirect {
    let ops = SemidirectOps {
        n: n.clone(),
        k: k.clone(),
        table,
        k_order: k.order() as u32,
    };
    let mut gens: Vec<ElemId> = n
        .generators()
        .iter()
        .map(|&x| ops.join(x, k.identity()))
        .collect();
    gens.extend(k.generators().iter().map(|&y| ops.join(n.identity(), y)));
    let group = GroupHandle::new(descriptor, Arc::new(ops), gens);
    Semidirect {
        group,
        normal: n.clone(),
        acting: k.clone(),
    }
}

pub(crate) fn format_action(action: &ActionSpec) -> String {
    action
        .entries
        .iter()
        .map(|(name, spec)| match spec {
            AutSpec::Matrix(m) => format!(
                "{name}=[{}]",
                m.iter()
                    .map(|r| format!(
                        "[{}]",
                        r.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
                    ))
                    .collect::<Vec<_>>()
                    .join(",")
            ),
            AutSpec::Images(imgs) => format!(
                "{name}=<{}>",
                imgs.iter()
                    .map(Element::to_string)
                    .collect::<Vec<_>>()
                    .join(",")
            ),
        })
        .collect::<Vec<_>>()
        .join(",")
}

/// `Z/n x| U(n)` with units acting by multiplication; `n >= 2`.
pub fn holomorph_cyclic(n: u32) -> GroupHandle {
    let semi = holomorph_parts(n);
    semi.group
}

pub fn holomorph_parts(n: u32) -> Semidirect {
    let base = super::cyclic(n);
    let u = units(n);
    let action = ActionSpec::matrices(
        u.generators()
            .iter()
            .enumerate()
            .map(|(i, &g)| (format!("u{}", i + 1), vec![vec![u.encode(g).0[0] as i64]])),
    );
    semidirect_named(&base, &u, &action, format!("hol({n})"))
        .expect("multiplication by units is an action")
}
