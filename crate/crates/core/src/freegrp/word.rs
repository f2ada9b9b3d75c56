use std::fmt::Write as _;

use crate::words::syntax::{parse_expr, AtomLexer, WordTarget};

use super::FreeGrpError;

/// A generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: u32,
    pub sign: i8,
}

impl Letter {
    pub fn new(gen: u32, sign: i8) -> Self {
        debug_assert!(sign == 1 || sign == -1);
        Letter { gen, sign }
    }

    pub fn inverse(self) -> Self {
        Letter {
            gen: self.gen,
            sign: -self.sign,
        }
    }
}

/// A word in the free group; generators are indices into an [`Alphabet`].
/// Not necessarily reduced.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeWord(pub Vec<Letter>);

impl FreeWord {
    pub fn empty() -> Self {
        FreeWord(Vec::new())
    }

    pub fn gen(g: u32) -> Self {
        FreeWord(vec![Letter::new(g, 1)])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|w| w[0] != w[1].inverse())
    }

    pub fn inverse(&self) -> Self {
        FreeWord(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    /// Reduced product.
    pub fn mul(&self, other: &FreeWord) -> Self {
        let mut out = free_reduce(self).0;
        for &l in &other.0 {
            push_reduced(&mut out, l);
        }
        FreeWord(out)
    }

    /// Reduced `self^k`.
    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let base = free_reduce(&base).0;
        let mut out = Vec::with_capacity(base.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            for &l in &base {
                push_reduced(&mut out, l);
            }
        }
        FreeWord(out)
    }

    /// Reduced `c^-1 self c`.
    pub fn conj(&self, c: &FreeWord) -> Self {
        c.inverse().mul(self).mul(c)
    }

    /// Reduced `[u, v] = u^-1 v^-1 u v`.
    pub fn comm(u: &FreeWord, v: &FreeWord) -> Self {
        u.inverse().mul(&v.inverse()).mul(u).mul(v)
    }

    /// Sum of the signs of the occurrences of `gen`.
    pub fn exponent_sum(&self, gen: u32) -> i64 {
        self.0
            .iter()
            .filter(|l| l.gen == gen)
            .map(|l| l.sign as i64)
            .sum()
    }

    /// Largest generator index used, plus one.
    pub fn rank_needed(&self) -> u32 {
        self.0.iter().map(|l| l.gen + 1).max().unwrap_or(0)
    }
}

fn push_reduced(out: &mut Vec<Letter>, l: Letter) {
    if out.last() == Some(&l.inverse()) {
        out.pop();
    } else {
        out.push(l);
    }
}

pub fn free_reduce(w: &FreeWord) -> FreeWord {
    let mut out = Vec::with_capacity(w.len());
    for &l in &w.0 {
        push_reduced(&mut out, l);
    }
    FreeWord(out)
}

/// Homomorphic substitution `gen i -> images[i]`, then free reduction.
pub fn apply_substitution(w: &FreeWord, images: &[FreeWord]) -> Result<FreeWord, FreeGrpError> {
    let mut out = Vec::new();
    for l in &w.0 {
        let img = images
            .get(l.gen as usize)
            .ok_or(FreeGrpError::UnmappedLetter(l.gen))?;
        let piece = if l.sign < 0 {
            img.inverse()
        } else {
            img.clone()
        };
        for &m in &piece.0 {
            push_reduced(&mut out, m);
        }
    }
    Ok(FreeWord(out))
}

/// Named generators. Names start with an ASCII letter and continue with
/// letters, digits or `_`; parsing takes the longest matching name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self, FreeGrpError> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, n) in names.iter().enumerate() {
            let ok = n.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok {
                return Err(FreeGrpError::BadAlphabet(format!(
                    "invalid generator name '{n}'"
                )));
            }
            if names[..i].contains(n) {
                return Err(FreeGrpError::BadAlphabet(format!(
                    "generator '{n}' listed twice"
                )));
            }
        }
        if names.is_empty() {
            return Err(FreeGrpError::BadAlphabet("empty alphabet".into()));
        }
        Ok(Alphabet { names })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<u32> {
        self.names.iter().position(|n| n == name).map(|i| i as u32)
    }

    /// Parses a word in the law grammar over these generator names and
    /// reduces it.
    pub fn parse(&self, text: &str) -> Result<FreeWord, FreeGrpError> {
        let expr = parse_expr(text, self)?;
        Ok(expr.evaluate(&Reducer))
    }

    /// Prints `w` with runs collapsed to powers, `1` for the empty word.
    pub fn format(&self, w: &FreeWord) -> String {
        if w.is_empty() {
            return "1".into();
        }
        let spaced = self.names.iter().any(|n| n.len() > 1);
        let mut s = String::new();
        let mut i = 0;
        while i < w.len() {
            let l = w.0[i];
            let run = w.0[i..].iter().take_while(|&&m| m == l).count();
            if spaced && i > 0 {
                s.push(' ');
            }
            s.push_str(&self.names[l.gen as usize]);
            let e = run as i64 * l.sign as i64;
            if e != 1 {
                let _ = write!(s, "^{e}");
            }
            i += run;
        }
        s
    }
}

impl AtomLexer for Alphabet {
    type Atom = u32;

    fn lex(&self, rest: &str) -> Option<(u32, usize)> {
        self.names
            .iter()
            .enumerate()
            .filter(|(_, n)| rest.starts_with(n.as_str()))
            .max_by_key(|(_, n)| n.len())
            .map(|(i, n)| (i as u32, n.len()))
    }

    fn describe(&self) -> String {
        format!("a generator ({})", self.names.join(", "))
    }
}

struct Reducer;

impl WordTarget<u32> for Reducer {
    type Value = FreeWord;
    fn one(&self) -> FreeWord {
        FreeWord::empty()
    }
    fn atom(&self, a: &u32) -> FreeWord {
        FreeWord::gen(*a)
    }
    fn mul(&self, a: &FreeWord, b: &FreeWord) -> FreeWord {
        a.mul(b)
    }
    fn inv(&self, a: &FreeWord) -> FreeWord {
        a.inverse()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::new(["a", "b"]).unwrap()
    }

    #[test]
    fn reduce_examples() {
        let al = ab();
        let w = FreeWord(vec![
            Letter::new(0, 1),
            Letter::new(1, 1),
            Letter::new(1, -1),
            Letter::new(0, -1),
        ]);
        assert!(free_reduce(&w).is_empty());
        let c = al.parse("[a,b]").unwrap();
        assert_eq!(free_reduce(&c), c);
        assert_eq!(al.format(&c), "a^-1b^-1ab");
    }

    #[test]
    fn parse_and_format_round_trip() {
        let al = Alphabet::new(["a", "b", "x", "y", "z"]).unwrap();
        for text in ["1", "a^-2z^-1ab^-1", "x^3y", "zaz^-1"] {
            let w = al.parse(text).unwrap();
            assert_eq!(al.parse(&al.format(&w)).unwrap(), w);
        }
        assert_eq!(
            al.format(&al.parse("[ba, z^a]").unwrap()),
            "a^-1b^-1a^-1z^-1abza"
        );
    }

    #[test]
    fn longest_match_names() {
        let al = Alphabet::new(["x", "x1", "y"]).unwrap();
        let w = al.parse("x1x").unwrap();
        assert_eq!(w.0, vec![Letter::new(1, 1), Letter::new(0, 1)]);
        assert_eq!(al.format(&w), "x1 x");
        assert_eq!(al.parse(&al.format(&w)).unwrap(), w);
        assert!(Alphabet::new(["1a"]).is_err());
        assert!(Alphabet::new(["a", "a"]).is_err());
    }

    #[test]
    fn substitution_examples() {
        let al = Alphabet::new(["a", "b", "x", "y", "z"]).unwrap();
        let p = |s: &str| al.parse(s).unwrap();
        let swap_xy = [p("a"), p("b"), p("y"), p("x"), p("z")];
        assert_eq!(
            apply_substitution(&p("[x,y]"), &swap_xy).unwrap(),
            p("[y,x]")
        );
        // x -> a^3, y -> b^3 in [ax, by] gives [a^4, b^4]
        let ext = [p("a"), p("b"), p("a^3"), p("b^3"), p("(ab)^3")];
        assert_eq!(
            apply_substitution(&p("[ax,by]"), &ext).unwrap(),
            p("[a^4,b^4]")
        );
        assert!(matches!(
            apply_substitution(&p("z"), &ext[..2]),
            Err(FreeGrpError::UnmappedLetter(4))
        ));
    }
}
