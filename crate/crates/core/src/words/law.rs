use std::fmt;
use std::str::FromStr;

use crate::fingroup::{ElemId, GroupHandle};

use super::syntax::{parse_expr, render, AtomLexer, Expr, SyntaxError, WordTarget};
use super::WordsError;

/// A word in the variables `x1..xk`; `x` and `y` alias `x1` and `x2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Law {
    expr: Expr<usize>,
    arity: usize,
}

struct VarLexer;

impl AtomLexer for VarLexer {
    type Atom = usize;

    fn lex(&self, rest: &str) -> Option<(usize, usize)> {
        let b = rest.as_bytes();
        match b.first()? {
            b'y' => Some((2, 1)),
            b'x' => {
                let digits = b[1..].iter().take_while(|c| c.is_ascii_digit()).count();
                if digits == 0 {
                    return Some((1, 1));
                }
                let idx: usize = rest[1..1 + digits].parse().ok()?;
                (idx >= 1).then_some((idx, 1 + digits))
            }
            _ => None,
        }
    }

    fn describe(&self) -> String {
        "a variable (x, y or x<n>)".into()
    }
}

impl Law {
    /// Wraps an expression over 1-based variable indices.
    pub fn new(expr: Expr<usize>) -> Result<Self, WordsError> {
        let arity = expr.atoms().into_iter().copied().max().unwrap_or(0);
        if arity == 0 {
            return Err(WordsError::NoVariables);
        }
        Ok(Law { expr, arity })
    }

    pub fn expr(&self) -> &Expr<usize> {
        &self.expr
    }

    /// Largest variable index.
    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Homomorphic evaluation at `tuple`; `tuple[i - 1]` is substituted for `xi`.
    pub fn evaluate(&self, g: &GroupHandle, tuple: &[ElemId]) -> Result<ElemId, WordsError> {
        if tuple.len() < self.arity {
            return Err(WordsError::ArityMismatch {
                expected: self.arity,
                found: tuple.len(),
            });
        }
        Ok(self.evaluate_unchecked(g, tuple))
    }

    pub(crate) fn evaluate_unchecked(&self, g: &GroupHandle, tuple: &[ElemId]) -> ElemId {
        self.expr.evaluate(&Substitution { g, tuple })
    }
}

struct Substitution<'a> {
    g: &'a GroupHandle,
    tuple: &'a [ElemId],
}

impl WordTarget<usize> for Substitution<'_> {
    type Value = ElemId;
    fn one(&self) -> ElemId {
        self.g.identity()
    }
    fn atom(&self, a: &usize) -> ElemId {
        self.tuple[a - 1]
    }
    fn mul(&self, a: &ElemId, b: &ElemId) -> ElemId {
        self.g.mul(*a, *b)
    }
    fn inv(&self, a: &ElemId) -> ElemId {
        self.g.inv(*a)
    }
}

pub fn parse_law(text: &str) -> Result<Law, WordsError> {
    let expr = parse_expr(text, &VarLexer)?;
    Law::new(expr)
}

impl FromStr for Law {
    type Err = WordsError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_law(s)
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let short = self.arity <= 2;
        let text = render(&self.expr, &|&i: &usize| match (short, i) {
            (true, 1) => "x".to_string(),
            (true, 2) => "y".to_string(),
            _ => format!("x{i}"),
        });
        f.write_str(&text)
    }
}

impl From<SyntaxError> for WordsError {
    fn from(e: SyntaxError) -> Self {
        WordsError::Syntax(e)
    }
}

fn var(i: usize) -> Expr<usize> {
    Expr::Atom(i)
}

/// `E_0 = x`, `E_{k+1} = [E_k, y]`.
pub fn engel_word(k: usize) -> Law {
    let e = (0..k).fold(var(1), |acc, _| Expr::comm(acc, var(2)));
    Law::new(e).expect("has x")
}

/// The left-normed commutator `[[..[x1, x2], ..], x_{c+1}]`, `c >= 1`.
pub fn nilpotency_word(c: usize) -> Law {
    assert!(c >= 1, "nilpotency word needs c >= 1");
    let e = (2..=c + 1).fold(var(1), |acc, i| Expr::comm(acc, var(i)));
    Law::new(e).expect("has x1")
}

/// `x^m`.
pub fn burnside_word(m: u64) -> Law {
    Law::new(Expr::power(var(1), m as i64)).expect("has x")
}

/// `[[x1, x2], [x3, x4]]`.
pub fn metabelian_word() -> Law {
    Law::new(Expr::comm(
        Expr::comm(var(1), var(2)),
        Expr::comm(var(3), var(4)),
    ))
    .expect("has variables")
}
