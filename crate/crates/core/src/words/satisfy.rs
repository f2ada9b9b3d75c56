use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::fingroup::{derived_length, exponent, nilpotency_class, ElemId, Element, Subgroup};

use super::law::Law;
use super::syntax::Expr;
use super::WordsError;

pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Scan every tuple if there are at most this many.
    Exhaustive(u64),
    Structural,
    Auto,
}

impl FromStr for Strategy {
    type Err = WordsError;
    fn from_str(s: &str) -> Result<Self, WordsError> {
        match s {
            "auto" => Ok(Strategy::Auto),
            "structural" => Ok(Strategy::Structural),
            "exhaustive" => Ok(Strategy::Exhaustive(DEFAULT_BUDGET)),
            _ => s
                .strip_prefix("exhaustive:")
                .and_then(|b| b.replace('_', "").parse().ok())
                .map(Strategy::Exhaustive)
                .ok_or_else(|| WordsError::BadStrategy(s.to_string())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StrategyUsed {
    Exhaustive,
    Structural,
}

impl fmt::Display for StrategyUsed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StrategyUsed::Exhaustive => "exhaustive",
            StrategyUsed::Structural => "structural",
        })
    }
}

/// A failing tuple, as ids and as encodings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub ids: Vec<ElemId>,
    pub elements: Vec<Element>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails(Witness),
    Unknown,
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Fails(_) => "fails",
            Verdict::Unknown => "unknown",
        }
    }

    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn fails(&self) -> bool {
        matches!(self, Verdict::Fails(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SatisfactionResult {
    pub verdict: Verdict,
    pub strategy: StrategyUsed,
    pub tuples_examined: u64,
}

impl Serialize for SatisfactionResult {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            verdict: &'a str,
            witness: Option<Vec<String>>,
            strategy: StrategyUsed,
            tuples_examined: u64,
        }
        let witness = match &self.verdict {
            Verdict::Fails(w) => Some(w.elements.iter().map(ToString::to_string).collect()),
            _ => None,
        };
        Repr {
            verdict: self.verdict.name(),
            witness,
            strategy: self.strategy,
            tuples_examined: self.tuples_examined,
        }
        .serialize(s)
    }
}

impl fmt::Display for SatisfactionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.verdict.name())?;
        if let Verdict::Fails(w) = &self.verdict {
            let parts: Vec<String> = w.elements.iter().map(ToString::to_string).collect();
            write!(f, " at ({})", parts.join(", "))?;
        }
        write!(f, " [{}, {} tuples]", self.strategy, self.tuples_examined)
    }
}

/// Law shapes decided from group structure.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Shape {
    /// `[..[xa, xb], .., xz]` on distinct variables: class at most `len - 1`.
    LeftNormed(Vec<usize>),
    /// `[[xa, xb], [xc, xd]]` on distinct variables.
    Metabelian([usize; 4]),
    /// `xa^m`.
    Burnside(usize, u64),
    /// `[..[[x, y], y], .., y]` with `x = x1`, `y = x2`.
    Engel,
}

fn atom(e: &Expr<usize>) -> Option<usize> {
    match e {
        Expr::Atom(i) => Some(*i),
        _ => None,
    }
}

fn left_normed(e: &Expr<usize>) -> Option<Vec<usize>> {
    match e {
        Expr::Atom(i) => Some(vec![*i]),
        Expr::Comm(u, v) => {
            let mut vars = left_normed(u)?;
            vars.push(atom(v)?);
            Some(vars)
        }
        _ => None,
    }
}

fn distinct(v: &[usize]) -> bool {
    let mut s = v.to_vec();
    s.sort_unstable();
    s.dedup();
    s.len() == v.len()
}

fn shape(law: &Law) -> Option<Shape> {
    let e = law.expr();
    if let Expr::Power(u, m) = e {
        return atom(u).map(|v| Shape::Burnside(v, m.unsigned_abs()));
    }
    if let Expr::Comm(u, v) = e {
        if let (Expr::Comm(a, b), Expr::Comm(c, d)) = (&**u, &**v) {
            let vars = [atom(a)?, atom(b)?, atom(c)?, atom(d)?];
            return distinct(&vars).then_some(Shape::Metabelian(vars));
        }
    }
    let vars = left_normed(e)?;
    if vars.len() < 2 {
        return None;
    }
    if distinct(&vars) {
        return Some(Shape::LeftNormed(vars));
    }
    (vars[0] == 1 && vars[1..].iter().all(|&v| v == 2)).then_some(Shape::Engel)
}

fn witness(h: &Subgroup, arity: usize, assign: &[(usize, ElemId)]) -> Witness {
    let g = h.ambient();
    let mut ids = vec![g.identity(); arity];
    for &(var, val) in assign {
        ids[var - 1] = val;
    }
    let elements = ids.iter().map(|&x| g.encode(x)).collect();
    Witness { ids, elements }
}

fn structural_result(verdict: Verdict) -> SatisfactionResult {
    SatisfactionResult {
        verdict,
        strategy: StrategyUsed::Structural,
        tuples_examined: 0,
    }
}

/// Generators of `h` together with their inverses.
fn symmetric_generators(h: &Subgroup) -> Vec<ElemId> {
    let g = h.ambient();
    let mut s: Vec<ElemId> = h.generators().to_vec();
    for &x in h.generators() {
        let xi = g.inv(x);
        if !s.contains(&xi) {
            s.push(xi);
        }
    }
    s
}

/// A nontrivial value of the left-normed commutator of weight `weight`,
/// with its arguments, drawn from `pool` at every position.
fn left_normed_witness(h: &Subgroup, weight: usize, pool: &[ElemId]) -> Option<Vec<ElemId>> {
    let g = h.ambient();
    let mut level: Vec<(ElemId, Vec<ElemId>)> = pool.iter().map(|&s| (s, vec![s])).collect();
    for _ in 1..weight {
        let mut seen = HashMap::new();
        let mut next = Vec::new();
        for (v, args) in &level {
            for &s in pool {
                let c = g.comm(*v, s);
                if g.is_identity(c) || seen.contains_key(&c) {
                    continue;
                }
                seen.insert(c, ());
                let mut a = args.clone();
                a.push(s);
                next.push((c, a));
            }
        }
        level = next;
    }
    level.into_iter().next().map(|(_, args)| args)
}

/// Commutators `[a, b]` whose values generate the derived subgroup of `h`,
/// closed under conjugation by the generators.
fn witnessed_derived_generators(h: &Subgroup) -> Vec<(ElemId, ElemId, ElemId)> {
    let g = h.ambient();
    let s = symmetric_generators(h);
    let mut seen = HashMap::new();
    let mut out = Vec::new();
    for &a in &s {
        for &b in &s {
            let c = g.comm(a, b);
            if !g.is_identity(c) && seen.insert(c, ()).is_none() {
                out.push((c, a, b));
            }
        }
    }
    let mut i = 0;
    while i < out.len() {
        let (c, a, b) = out[i];
        i += 1;
        for &t in h.generators() {
            let ct = g.conj(c, t);
            if seen.insert(ct, ()).is_none() {
                out.push((ct, g.conj(a, t), g.conj(b, t)));
            }
        }
    }
    out
}

fn structural(h: &Subgroup, law: &Law, shape: &Shape) -> SatisfactionResult {
    let g = h.ambient();
    let k = law.arity();
    match shape {
        Shape::LeftNormed(vars) => {
            let c = vars.len() - 1;
            if nilpotency_class(h).class().is_some_and(|cl| cl <= c) {
                return structural_result(Verdict::Holds);
            }
            let args = left_normed_witness(h, vars.len(), &symmetric_generators(h))
                .or_else(|| left_normed_witness(h, vars.len(), h.members()))
                .expect("a nontrivial term of the lower central series has a witness");
            let assign: Vec<(usize, ElemId)> = vars.iter().copied().zip(args).collect();
            structural_result(Verdict::Fails(witness(h, k, &assign)))
        }
        Shape::Metabelian(vars) => {
            if derived_length(h).is_some_and(|d| d <= 2) {
                return structural_result(Verdict::Holds);
            }
            let gens = witnessed_derived_generators(h);
            for (i, &(u, a, b)) in gens.iter().enumerate() {
                for &(v, c, d) in &gens[i + 1..] {
                    if g.comm(u, v) != g.identity() {
                        let assign = [(vars[0], a), (vars[1], b), (vars[2], c), (vars[3], d)];
                        return structural_result(Verdict::Fails(witness(h, k, &assign)));
                    }
                }
            }
            unreachable!("a non-abelian derived subgroup has non-commuting generators")
        }
        Shape::Burnside(var, m) => {
            if *m == 0 || m % exponent(h) == 0 {
                return structural_result(Verdict::Holds);
            }
            let x = h
                .members()
                .iter()
                .copied()
                .find(|&x| !g.is_identity(g.pow(x, *m as i64)))
                .expect("exponent does not divide m");
            structural_result(Verdict::Fails(witness(h, k, &[(*var, x)])))
        }
        Shape::Engel => {
            let mut r = exhaustive(h, law, u64::MAX);
            r.strategy = StrategyUsed::Structural;
            r
        }
    }
}

fn tuple_count(n: usize, k: usize) -> Option<u64> {
    (n as u64).checked_pow(k as u32)
}

/// Scans all tuples in lexicographic order of the member list; the witness
/// is the least failing tuple.
fn exhaustive(h: &Subgroup, law: &Law, budget: u64) -> SatisfactionResult {
    let g = h.ambient();
    let k = law.arity();
    let members = h.members();
    let n = members.len();
    let total = match tuple_count(n, k) {
        Some(t) if t <= budget => t,
        _ => {
            return SatisfactionResult {
                verdict: Verdict::Unknown,
                strategy: StrategyUsed::Exhaustive,
                tuples_examined: 0,
            }
        }
    };
    let inner = total / n as u64;
    let found = (0..n).into_par_iter().find_map_first(|first| {
        let mut digits = vec![0usize; k];
        digits[0] = first;
        let mut tuple: Vec<ElemId> = digits.iter().map(|&d| members[d]).collect();
        for idx in 0..inner {
            if !g.is_identity(law.evaluate_unchecked(g, &tuple)) {
                return Some((first as u64 * inner + idx, tuple));
            }
            // odometer on positions 1..k
            for p in (1..k).rev() {
                digits[p] += 1;
                if digits[p] < n {
                    tuple[p] = members[digits[p]];
                    break;
                }
                digits[p] = 0;
                tuple[p] = members[0];
            }
        }
        None
    });
    match found {
        Some((idx, ids)) => {
            let elements = ids.iter().map(|&x| g.encode(x)).collect();
            SatisfactionResult {
                verdict: Verdict::Fails(Witness { ids, elements }),
                strategy: StrategyUsed::Exhaustive,
                tuples_examined: idx + 1,
            }
        }
        None => SatisfactionResult {
            verdict: Verdict::Holds,
            strategy: StrategyUsed::Exhaustive,
            tuples_examined: total,
        },
    }
}

/// Decides whether every tuple of elements of `target` satisfies `law`.
pub fn satisfies(target: &Subgroup, law: &Law, strategy: Strategy) -> SatisfactionResult {
    match strategy {
        Strategy::Exhaustive(budget) => exhaustive(target, law, budget),
        Strategy::Structural => match shape(law) {
            Some(s) => structural(target, law, &s),
            None => structural_result(Verdict::Unknown),
        },
        Strategy::Auto => match shape(law) {
            Some(s) => structural(target, law, &s),
            None => exhaustive(target, law, DEFAULT_BUDGET),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{cyclic, heisenberg3, holomorph_cyclic};
    use crate::words::{engel_word, metabelian_word, parse_law};

    #[test]
    fn shapes() {
        assert_eq!(
            shape(&parse_law("[x,y]").unwrap()),
            Some(Shape::LeftNormed(vec![1, 2]))
        );
        assert_eq!(
            shape(&parse_law("[[x1,x2],[x3,x4]]").unwrap()),
            Some(Shape::Metabelian([1, 2, 3, 4]))
        );
        assert_eq!(
            shape(&parse_law("x^6").unwrap()),
            Some(Shape::Burnside(1, 6))
        );
        assert_eq!(shape(&engel_word(3)), Some(Shape::Engel));
        assert_eq!(shape(&parse_law("[x^2,x^y]").unwrap()), None);
        assert_eq!(shape(&parse_law("[x,x]").unwrap()), None);
    }

    #[test]
    fn strategy_parsing() {
        assert_eq!("auto".parse::<Strategy>().unwrap(), Strategy::Auto);
        assert_eq!(
            "exhaustive:1000".parse::<Strategy>().unwrap(),
            Strategy::Exhaustive(1000)
        );
        assert!("exhaustive:lots".parse::<Strategy>().is_err());
    }

    #[test]
    fn exhaustive_witness_is_least() {
        let g = holomorph_cyclic(7);
        let h = Subgroup::full(&g);
        let law = parse_law("[x,y]").unwrap();
        let r = satisfies(&h, &law, Strategy::Exhaustive(DEFAULT_BUDGET));
        let Verdict::Fails(w) = &r.verdict else {
            panic!()
        };
        // sequential oracle
        let mut first = None;
        'outer: for a in g.elements() {
            for b in g.elements() {
                if g.comm(a, b) != g.identity() {
                    first = Some((a, b));
                    break 'outer;
                }
            }
        }
        let (a, b) = first.unwrap();
        assert_eq!(w.ids, vec![a, b]);
        assert_eq!(r.tuples_examined, a.0 as u64 * 42 + b.0 as u64 + 1);
    }

    #[test]
    fn budget_exhaustion_is_unknown() {
        let g = holomorph_cyclic(7);
        let r = satisfies(
            &Subgroup::full(&g),
            &metabelian_word(),
            Strategy::Exhaustive(1000),
        );
        assert_eq!(r.verdict, Verdict::Unknown);
        let r = satisfies(
            &Subgroup::full(&g),
            &parse_law("[x^2,x^y]").unwrap(),
            Strategy::Structural,
        );
        assert_eq!(r.verdict, Verdict::Unknown);
    }

    #[test]
    fn structural_witnesses_evaluate_nontrivially() {
        let g = holomorph_cyclic(7);
        let h = Subgroup::full(&g);
        for text in ["[x,y]", "[[x1,x2],x3]", "x^3", "[[[x,y],y],y]"] {
            let law = parse_law(text).unwrap();
            let r = satisfies(&h, &law, Strategy::Structural);
            let Verdict::Fails(w) = &r.verdict else {
                panic!("{text}")
            };
            assert_ne!(law.evaluate(&g, &w.ids).unwrap(), g.identity(), "{text}");
        }
        let heis = heisenberg3();
        let r = satisfies(&Subgroup::full(&heis), &engel_word(3), Strategy::Auto);
        assert!(r.verdict.holds());
        assert_eq!(r.tuples_examined, 27 * 27);
    }

    #[test]
    fn cyclic_groups_are_abelian() {
        let g = cyclic(5);
        let r = satisfies(
            &Subgroup::full(&g),
            &parse_law("[x,y]").unwrap(),
            Strategy::Auto,
        );
        assert!(r.verdict.holds());
        assert_eq!(r.strategy, StrategyUsed::Structural);
    }
}
