//! Word syntax shared by laws and free words.
//!
//! ```text
//! word     := factor+
//! factor   := base ('^' exponent)?
//! base     := ATOM | '1' | '(' word ')' | '[' word ',' word ']'
//! exponent := INT | base
//! ```
//!
//! An integer exponent is a power, any other exponent is conjugation
//! `u^v = v^-1 u v`. `[u, v] = u^-1 v^-1 u v`.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("syntax error at position {pos}: {message}")]
pub struct SyntaxError {
    pub pos: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr<A> {
    Atom(A),
    /// The empty word.
    One,
    Product(Vec<Expr<A>>),
    Inverse(Box<Expr<A>>),
    Power(Box<Expr<A>>, i64),
    /// `Conj(u, v)` is `u^v`.
    Conj(Box<Expr<A>>, Box<Expr<A>>),
    Comm(Box<Expr<A>>, Box<Expr<A>>),
}

/// Something a word can be evaluated in.
pub trait WordTarget<A> {
    type Value: Clone;
    fn one(&self) -> Self::Value;
    fn atom(&self, a: &A) -> Self::Value;
    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn inv(&self, a: &Self::Value) -> Self::Value;
}

impl<A> Expr<A> {
    pub fn comm(u: Expr<A>, v: Expr<A>) -> Self {
        Expr::Comm(Box::new(u), Box::new(v))
    }

    pub fn conj(u: Expr<A>, v: Expr<A>) -> Self {
        Expr::Conj(Box::new(u), Box::new(v))
    }

    pub fn power(u: Expr<A>, e: i64) -> Self {
        Expr::Power(Box::new(u), e)
    }

    pub fn inverse(u: Expr<A>) -> Self {
        Expr::Inverse(Box::new(u))
    }

    pub fn atoms(&self) -> Vec<&A> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut Vec<&'a A>) {
        match self {
            Expr::Atom(a) => out.push(a),
            Expr::One => {}
            Expr::Product(fs) => fs.iter().for_each(|f| f.collect_atoms(out)),
            Expr::Inverse(u) | Expr::Power(u, _) => u.collect_atoms(out),
            Expr::Conj(u, v) | Expr::Comm(u, v) => {
                u.collect_atoms(out);
                v.collect_atoms(out);
            }
        }
    }

    pub fn map_atoms<B>(&self, f: &impl Fn(&A) -> B) -> Expr<B> {
        match self {
            Expr::Atom(a) => Expr::Atom(f(a)),
            Expr::One => Expr::One,
            Expr::Product(fs) => Expr::Product(fs.iter().map(|x| x.map_atoms(f)).collect()),
            Expr::Inverse(u) => Expr::inverse(u.map_atoms(f)),
            Expr::Power(u, e) => Expr::power(u.map_atoms(f), *e),
            Expr::Conj(u, v) => Expr::conj(u.map_atoms(f), v.map_atoms(f)),
            Expr::Comm(u, v) => Expr::comm(u.map_atoms(f), v.map_atoms(f)),
        }
    }

    pub fn evaluate<T: WordTarget<A>>(&self, t: &T) -> T::Value {
        match self {
            Expr::Atom(a) => t.atom(a),
            Expr::One => t.one(),
            Expr::Product(fs) => {
                let mut it = fs.iter();
                match it.next() {
                    None => t.one(),
                    Some(first) => it.fold(first.evaluate(t), |acc, f| t.mul(&acc, &f.evaluate(t))),
                }
            }
            Expr::Inverse(u) => t.inv(&u.evaluate(t)),
            Expr::Power(u, e) => {
                let base = u.evaluate(t);
                let base = if *e < 0 { t.inv(&base) } else { base };
                pow_by_squaring(t, base, e.unsigned_abs())
            }
            Expr::Conj(u, v) => {
                let u = u.evaluate(t);
                let v = v.evaluate(t);
                t.mul(&t.mul(&t.inv(&v), &u), &v)
            }
            Expr::Comm(u, v) => {
                let u = u.evaluate(t);
                let v = v.evaluate(t);
                t.mul(&t.mul(&t.inv(&u), &t.inv(&v)), &t.mul(&u, &v))
            }
        }
    }
}

fn pow_by_squaring<A, T: WordTarget<A>>(t: &T, base: T::Value, mut e: u64) -> T::Value {
    let mut acc = t.one();
    let mut b = base;
    while e > 0 {
        if e & 1 == 1 {
            acc = t.mul(&acc, &b);
        }
        e >>= 1;
        if e > 0 {
            b = t.mul(&b, &b);
        }
    }
    acc
}

/// Prints an expression, naming atoms with `name`.
pub fn render<A>(e: &Expr<A>, name: &impl Fn(&A) -> String) -> String {
    let mut s = String::new();
    write_word(&mut s, e, name);
    s
}

fn write_word<A>(s: &mut String, e: &Expr<A>, name: &impl Fn(&A) -> String) {
    match e {
        Expr::Product(fs) if fs.is_empty() => s.push('1'),
        Expr::Product(fs) => {
            for f in fs {
                // a bare `1` after an atom would lex as part of it
                if matches!(f, Expr::Product(_) | Expr::One) {
                    s.push('(');
                    write_word(s, f, name);
                    s.push(')');
                } else {
                    write_word(s, f, name);
                }
            }
        }
        Expr::Inverse(u) => {
            write_base(s, u, name);
            s.push_str("^-1");
        }
        Expr::Power(u, k) => {
            write_base(s, u, name);
            s.push('^');
            s.push_str(&k.to_string());
        }
        Expr::Conj(u, v) => {
            write_base(s, u, name);
            s.push('^');
            // `1` in exponent position would read as the integer 1
            if matches!(&**v, Expr::One) || matches!(&**v, Expr::Product(fs) if fs.is_empty()) {
                s.push_str("(1)");
            } else {
                write_base(s, v, name);
            }
        }
        _ => write_base(s, e, name),
    }
}

fn write_base<A>(s: &mut String, e: &Expr<A>, name: &impl Fn(&A) -> String) {
    match e {
        Expr::Atom(a) => s.push_str(&name(a)),
        Expr::One => s.push('1'),
        Expr::Comm(u, v) => {
            s.push('[');
            write_word(s, u, name);
            s.push(',');
            write_word(s, v, name);
            s.push(']');
        }
        Expr::Product(fs) if fs.is_empty() => s.push('1'),
        _ => {
            s.push('(');
            write_word(s, e, name);
            s.push(')');
        }
    }
}

/// Atom lexer: given the remaining input, returns the atom and its byte length.
pub trait AtomLexer {
    type Atom;
    fn lex(&self, rest: &str) -> Option<(Self::Atom, usize)>;
    /// What an atom looks like, for error messages.
    fn describe(&self) -> String;
}

struct Parser<'a, L> {
    src: &'a str,
    pos: usize,
    lexer: &'a L,
}

impl<'a, L: AtomLexer> Parser<'a, L> {
    fn err<T>(&self, pos: usize, message: impl Into<String>) -> Result<T, SyntaxError> {
        Err(SyntaxError {
            pos,
            message: message.into(),
        })
    }

    fn found(&self) -> String {
        match self.src[self.pos..].chars().next() {
            None => "end of input".into(),
            Some(c) => format!("'{c}'"),
        }
    }

    fn unexpected<T>(&self, expected: &str) -> Result<T, SyntaxError> {
        self.err(
            self.pos,
            format!("expected {expected}, found {}", self.found()),
        )
    }

    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn starts_base(&mut self) -> bool {
        match self.peek() {
            Some('(' | '[' | '1') => true,
            Some(_) => self.lexer.lex(&self.src[self.pos..]).is_some(),
            None => false,
        }
    }

    fn word(&mut self) -> Result<Expr<L::Atom>, SyntaxError> {
        let mut factors = vec![self.factor()?];
        while self.starts_base() {
            factors.push(self.factor()?);
        }
        Ok(if factors.len() == 1 {
            factors.pop().unwrap()
        } else {
            Expr::Product(factors)
        })
    }

    fn factor(&mut self) -> Result<Expr<L::Atom>, SyntaxError> {
        let base = self.base()?;
        if !self.eat('^') {
            return Ok(base);
        }
        match self.peek() {
            Some(c) if c == '-' || c == '+' || c.is_ascii_digit() => {
                let start = self.pos;
                let mut end = start + 1;
                let bytes = self.src.as_bytes();
                while end < bytes.len() && bytes[end].is_ascii_digit() {
                    end += 1;
                }
                if !bytes[end - 1].is_ascii_digit() {
                    self.pos = end;
                    return self.unexpected("digits");
                }
                let k: i64 = self.src[start..end]
                    .parse()
                    .or_else(|_| self.err(start, "exponent out of range"))?;
                self.pos = end;
                Ok(Expr::power(base, k))
            }
            _ => {
                let v = self.base()?;
                Ok(Expr::conj(base, v))
            }
        }
    }

    fn base(&mut self) -> Result<Expr<L::Atom>, SyntaxError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let w = self.word()?;
                if !self.eat(')') {
                    return self.unexpected("')'");
                }
                Ok(w)
            }
            Some('[') => {
                self.pos += 1;
                let u = self.word()?;
                if !self.eat(',') {
                    return self.unexpected("','");
                }
                let v = self.word()?;
                if !self.eat(']') {
                    return self.unexpected("']'");
                }
                Ok(Expr::comm(u, v))
            }
            Some('1') => {
                self.pos += 1;
                Ok(Expr::One)
            }
            Some(_) => match self.lexer.lex(&self.src[self.pos..]) {
                Some((a, len)) => {
                    self.pos += len;
                    Ok(Expr::Atom(a))
                }
                None => self.unexpected(&format!("{}, '(' or '['", self.lexer.describe())),
            },
            None => self.unexpected(&self.lexer.describe()),
        }
    }
}

pub fn parse_expr<L: AtomLexer>(text: &str, lexer: &L) -> Result<Expr<L::Atom>, SyntaxError> {
    let mut p = Parser {
        src: text,
        pos: 0,
        lexer,
    };
    let w = p.word()?;
    p.skip_ws();
    if p.pos != text.len() {
        return p.unexpected("end of input");
    }
    Ok(w)
}

impl<A: fmt::Display> fmt::Display for Expr<A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self, &|a: &A| a.to_string()))
    }
}
