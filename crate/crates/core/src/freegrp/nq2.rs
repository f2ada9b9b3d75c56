//! The free nilpotent group of class 2 on `a, b`, in Mal'cev coordinates
//! `a^α b^β c^γ` with `c = [a, b]` central and `ba = ab c^-1`.

use num_integer::Integer;
use serde::Serialize;

use super::word::FreeWord;
use super::FreeGrpError;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct MalcevTriple {
    pub alpha: i64,
    pub beta: i64,
    pub gamma: i64,
}

impl MalcevTriple {
    pub const IDENTITY: MalcevTriple = MalcevTriple {
        alpha: 0,
        beta: 0,
        gamma: 0,
    };

    pub fn new(alpha: i64, beta: i64, gamma: i64) -> Self {
        MalcevTriple { alpha, beta, gamma }
    }

    /// Moving `b^β` past `a^α'` costs `c^(-βα')`.
    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, o: MalcevTriple) -> MalcevTriple {
        MalcevTriple {
            alpha: self.alpha + o.alpha,
            beta: self.beta + o.beta,
            gamma: self.gamma + o.gamma - self.beta * o.alpha,
        }
    }

    pub fn inverse(self) -> MalcevTriple {
        MalcevTriple {
            alpha: -self.alpha,
            beta: -self.beta,
            gamma: -self.gamma - self.alpha * self.beta,
        }
    }

    pub fn is_central(self) -> bool {
        self.alpha == 0 && self.beta == 0
    }
}

/// Image of a word over `a` (generator 0) and `b` (generator 1).
pub fn nq2_eval(w: &FreeWord) -> Result<MalcevTriple, FreeGrpError> {
    let mut acc = MalcevTriple::IDENTITY;
    for l in w.letters() {
        let unit = match l.gen {
            0 => MalcevTriple::new(1, 0, 0),
            1 => MalcevTriple::new(0, 1, 0),
            _ => return Err(FreeGrpError::UnsupportedAlphabet),
        };
        acc = acc.mul(if l.sign < 0 { unit.inverse() } else { unit });
    }
    Ok(acc)
}

/// `gcd |γ|` over the relators: the order of `c` in the class-2 quotient
/// of `<a, b | relators>`, with 0 meaning infinite order.
pub fn nq2_quotient_c_order(relators: &[FreeWord]) -> Result<u64, FreeGrpError> {
    let mut g = 0i64;
    for (i, r) in relators.iter().enumerate() {
        let t = nq2_eval(r)?;
        if !t.is_central() {
            return Err(FreeGrpError::NotCentral(i));
        }
        g = g.gcd(&t.gamma);
    }
    Ok(g.unsigned_abs())
}
