use std::fmt::Write as _;

use super::word::{free_reduce, Alphabet, FreeWord};
use super::FreeGrpError;

/// Generators and reduced, nonempty relators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    alphabet: Alphabet,
    relators: Vec<FreeWord>,
}

impl Presentation {
    pub fn new(alphabet: Alphabet, relators: Vec<FreeWord>) -> Result<Self, FreeGrpError> {
        let mut out = Vec::with_capacity(relators.len());
        for (i, r) in relators.iter().enumerate() {
            let r = free_reduce(r);
            if r.is_empty() {
                return Err(FreeGrpError::EmptyRelator(i));
            }
            if r.rank_needed() as usize > alphabet.len() {
                return Err(FreeGrpError::UnmappedLetter(r.rank_needed() - 1));
            }
            out.push(r);
        }
        Ok(Presentation {
            alphabet,
            relators: out,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn relators(&self) -> &[FreeWord] {
        &self.relators
    }

    /// `(r_rel^sign)^conj`, or `None` for an index out of range.
    fn conjugate(&self, rel: usize, sign: i8, conj: &FreeWord) -> Option<FreeWord> {
        let r = self.relators.get(rel)?;
        let r = if sign < 0 { r.inverse() } else { r.clone() };
        Some(r.conj(conj))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Validity {
    Valid,
    /// Index of the first bad step; the step count for a final mismatch.
    Invalid(usize),
}

impl Validity {
    pub fn is_valid(self) -> bool {
        self == Validity::Valid
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertStep {
    pub rel: usize,
    pub sign: i8,
    pub conj: FreeWord,
}

/// A product of conjugates of relators, read left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Certificate {
    pub steps: Vec<CertStep>,
}

impl Certificate {
    /// Multiplies out the steps, or reports the first index out of range.
    pub fn product(&self, pres: &Presentation) -> Result<FreeWord, usize> {
        let mut acc = FreeWord::empty();
        for (i, s) in self.steps.iter().enumerate() {
            let piece = pres.conjugate(s.rel, s.sign, &s.conj).ok_or(i)?;
            acc = acc.mul(&piece);
        }
        Ok(acc)
    }

    /// Replaces each relator index `j >= base` by `expansions[j - base]`, a
    /// certificate over the first `base` relators for relator `j`.
    pub fn flatten(&self, base: usize, expansions: &[Certificate]) -> Certificate {
        let mut steps = Vec::new();
        for s in &self.steps {
            if s.rel < base {
                steps.push(s.clone());
                continue;
            }
            let inner = &expansions[s.rel - base].steps;
            // (prod c_k^-1 r_k c_k)^-1 reverses the factors and flips signs
            let ordered: Box<dyn Iterator<Item = &CertStep>> = if s.sign > 0 {
                Box::new(inner.iter())
            } else {
                Box::new(inner.iter().rev())
            };
            for t in ordered {
                steps.push(CertStep {
                    rel: t.rel,
                    sign: t.sign * s.sign,
                    conj: t.conj.mul(&s.conj),
                });
            }
        }
        Certificate { steps }
    }
}

/// Valid iff the relators are in range and the product reduces to `target`,
/// which certifies that `target` lies in the normal closure of the relators.
pub fn check_certificate(pres: &Presentation, target: &FreeWord, cert: &Certificate) -> Validity {
    match cert.product(pres) {
        Err(i) => Validity::Invalid(i),
        Ok(w) if w == free_reduce(target) => Validity::Valid,
        Ok(_) => Validity::Invalid(cert.steps.len()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    /// Insertion point, `0..=len` of the current word.
    pub pos: usize,
    pub rel: usize,
    pub sign: i8,
    pub conj: FreeWord,
    /// Declared reduced result.
    pub result: FreeWord,
}

/// A chain of words, each obtained from the previous one by inserting a
/// conjugate of a relator and reducing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationTrace {
    pub start: FreeWord,
    pub steps: Vec<TraceStep>,
    pub end: FreeWord,
}

impl DerivationTrace {
    /// A certificate for `start * end^-1`. Step `i` inserts `d^-1 r d` with
    /// `d = conj * prefix^-1`, so undoing it contributes
    /// `(r^-sign)^(conj * prefix^-1)`.
    pub fn to_certificate(&self) -> (FreeWord, Certificate) {
        let mut cur = free_reduce(&self.start);
        let mut steps = Vec::with_capacity(self.steps.len());
        for s in &self.steps {
            let prefix = FreeWord(cur.0[..s.pos.min(cur.len())].to_vec());
            steps.push(CertStep {
                rel: s.rel,
                sign: -s.sign,
                conj: s.conj.mul(&prefix.inverse()),
            });
            cur = s.result.clone();
        }
        let target = self.start.mul(&self.end.inverse());
        (target, Certificate { steps })
    }
}

/// Replays every step. Valid implies `start = end` in the presented group.
pub fn check_trace(pres: &Presentation, trace: &DerivationTrace) -> Validity {
    let mut cur = free_reduce(&trace.start);
    for (i, s) in trace.steps.iter().enumerate() {
        if s.pos > cur.len() || !s.result.is_reduced() {
            return Validity::Invalid(i);
        }
        let Some(piece) = pres.conjugate(s.rel, s.sign, &s.conj) else {
            return Validity::Invalid(i);
        };
        let (head, tail) = cur.0.split_at(s.pos);
        let next = FreeWord(head.to_vec())
            .mul(&piece)
            .mul(&FreeWord(tail.to_vec()));
        if next != s.result {
            return Validity::Invalid(i);
        }
        cur = next;
    }
    if cur == free_reduce(&trace.end) {
        Validity::Valid
    } else {
        Validity::Invalid(trace.steps.len())
    }
}

struct Lines<'a> {
    inner: std::iter::Peekable<Box<dyn Iterator<Item = (usize, &'a str)> + 'a>>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let it: Box<dyn Iterator<Item = (usize, &'a str)>> = Box::new(
            text.lines()
                .enumerate()
                .map(|(i, l)| (i + 1, l.trim()))
                .filter(|(_, l)| !l.is_empty() && !l.starts_with('#')),
        );
        Lines {
            inner: it.peekable(),
        }
    }

    fn next(&mut self) -> Option<(usize, &'a str)> {
        self.inner.next()
    }

    fn peek(&mut self) -> Option<(usize, &'a str)> {
        self.inner.peek().copied()
    }

    fn last_line(&mut self) -> usize {
        self.peek().map_or(0, |(n, _)| n)
    }

    /// The next line, which must start with `key:`; returns the rest.
    fn expect(&mut self, key: &str) -> Result<(usize, &'a str), FreeGrpError> {
        match self.next() {
            Some((n, l)) => match l.strip_prefix(key).and_then(|r| r.strip_prefix(':')) {
                Some(rest) => Ok((n, rest.trim())),
                None => Err(format_err(n, format!("expected '{key}:'"))),
            },
            None => Err(format_err(0, format!("missing '{key}:'"))),
        }
    }
}

fn format_err(line: usize, message: impl Into<String>) -> FreeGrpError {
    FreeGrpError::Format {
        line,
        message: message.into(),
    }
}

fn word_at(alphabet: &Alphabet, line: usize, text: &str) -> Result<FreeWord, FreeGrpError> {
    alphabet
        .parse(text)
        .map_err(|e| format_err(line, e.to_string()))
}

fn read_presentation(lines: &mut Lines) -> Result<Presentation, FreeGrpError> {
    let (n, names) = lines.expect("alphabet")?;
    let alphabet =
        Alphabet::new(names.split_whitespace()).map_err(|e| format_err(n, e.to_string()))?;
    lines.expect("relators")?;
    let mut relators = Vec::new();
    while let Some((n, l)) = lines.peek() {
        if is_keyed(l) {
            break;
        }
        lines.next();
        let r = word_at(&alphabet, n, l)?;
        if r.is_empty() {
            return Err(format_err(n, "relator reduces to the empty word"));
        }
        relators.push(r);
    }
    Presentation::new(alphabet, relators).map_err(|e| format_err(lines.last_line(), e.to_string()))
}

fn is_keyed(line: &str) -> bool {
    line.split_once(':')
        .is_some_and(|(k, _)| !k.is_empty() && k.chars().all(|c| c.is_ascii_alphabetic()))
}

fn finish(lines: &mut Lines) -> Result<(), FreeGrpError> {
    match lines.next() {
        None => Ok(()),
        Some((n, _)) => Err(format_err(n, "unexpected trailing content")),
    }
}

/// Splits `key=value` fields; a value runs until the next token with `=`.
fn fields(line: usize, rest: &str, keys: &[&str]) -> Result<Vec<String>, FreeGrpError> {
    let mut found: Vec<(String, String)> = Vec::new();
    for tok in rest.split_whitespace() {
        match tok.split_once('=') {
            Some((k, v)) => found.push((k.to_string(), v.to_string())),
            None => match found.last_mut() {
                Some((_, v)) => {
                    v.push(' ');
                    v.push_str(tok);
                }
                None => return Err(format_err(line, format!("unexpected '{tok}'"))),
            },
        }
    }
    let mut out = Vec::with_capacity(keys.len());
    for key in keys {
        match found.iter().position(|(k, _)| k == key) {
            Some(i) => out.push(found.remove(i).1),
            None => return Err(format_err(line, format!("missing field '{key}='"))),
        }
    }
    if let Some((k, _)) = found.first() {
        return Err(format_err(line, format!("unknown field '{k}='")));
    }
    Ok(out)
}

fn parse_index(line: usize, key: &str, v: &str) -> Result<usize, FreeGrpError> {
    v.parse().map_err(|_| {
        format_err(
            line,
            format!("{key} must be a nonnegative integer, found '{v}'"),
        )
    })
}

fn parse_sign(line: usize, v: &str) -> Result<i8, FreeGrpError> {
    match v {
        "+1" | "1" => Ok(1),
        "-1" => Ok(-1),
        _ => Err(format_err(
            line,
            format!("sign must be +1 or -1, found '{v}'"),
        )),
    }
}

/// `alphabet:` and `relators:` sections.
pub fn parse_presentation(text: &str) -> Result<Presentation, FreeGrpError> {
    let mut lines = Lines::new(text);
    let pres = read_presentation(&mut lines)?;
    finish(&mut lines)?;
    Ok(pres)
}

pub fn parse_trace(text: &str) -> Result<(Presentation, DerivationTrace), FreeGrpError> {
    let mut lines = Lines::new(text);
    let pres = read_presentation(&mut lines)?;
    let al = pres.alphabet().clone();
    let (n, s) = lines.expect("start")?;
    let start = word_at(&al, n, s)?;
    let mut steps = Vec::new();
    while lines.peek().is_some_and(|(_, l)| l.starts_with("step:")) {
        let (n, rest) = lines.expect("step")?;
        let f = fields(n, rest, &["pos", "rel", "sign", "conj", "result"])?;
        steps.push(TraceStep {
            pos: parse_index(n, "pos", &f[0])?,
            rel: parse_index(n, "rel", &f[1])?,
            sign: parse_sign(n, &f[2])?,
            conj: word_at(&al, n, &f[3])?,
            result: word_at(&al, n, &f[4])?,
        });
    }
    let (n, e) = lines.expect("end")?;
    let end = word_at(&al, n, e)?;
    finish(&mut lines)?;
    Ok((pres, DerivationTrace { start, steps, end }))
}

pub fn parse_certificate(
    text: &str,
    alphabet: &Alphabet,
) -> Result<(FreeWord, Certificate), FreeGrpError> {
    let mut lines = Lines::new(text);
    let (n, t) = lines.expect("target")?;
    let target = word_at(alphabet, n, t)?;
    let mut steps = Vec::new();
    while lines.peek().is_some() {
        let (n, rest) = lines.expect("step")?;
        let f = fields(n, rest, &["rel", "sign", "conj"])?;
        steps.push(CertStep {
            rel: parse_index(n, "rel", &f[0])?,
            sign: parse_sign(n, &f[1])?,
            conj: word_at(alphabet, n, &f[2])?,
        });
    }
    Ok((target, Certificate { steps }))
}

fn sign_text(s: i8) -> &'static str {
    if s < 0 {
        "-1"
    } else {
        "+1"
    }
}

pub fn render_presentation(pres: &Presentation) -> String {
    let al = pres.alphabet();
    let mut s = format!("alphabet: {}\nrelators:\n", al.names().join(" "));
    for r in pres.relators() {
        s.push_str(&al.format(r));
        s.push('\n');
    }
    s
}

pub fn render_trace(pres: &Presentation, trace: &DerivationTrace) -> String {
    let al = pres.alphabet();
    let mut s = render_presentation(pres);
    let _ = writeln!(s, "start: {}", al.format(&trace.start));
    for st in &trace.steps {
        let _ = writeln!(
            s,
            "step: pos={} rel={} sign={} conj={} result={}",
            st.pos,
            st.rel,
            sign_text(st.sign),
            al.format(&st.conj),
            al.format(&st.result)
        );
    }
    let _ = writeln!(s, "end: {}", al.format(&trace.end));
    s
}

pub fn render_certificate(alphabet: &Alphabet, target: &FreeWord, cert: &Certificate) -> String {
    let mut s = format!("target: {}\n", alphabet.format(target));
    for st in &cert.steps {
        let _ = writeln!(
            s,
            "step: rel={} sign={} conj={}",
            st.rel,
            sign_text(st.sign),
            alphabet.format(&st.conj)
        );
    }
    s
}
