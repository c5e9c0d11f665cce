use std::fmt;

use super::EvalError;

/// A loop-invariant shape a structure knows how to certify divergence with.
/// It relates two program variables; the evaluator tries it on every ordered
/// pair of individual variables of a loop that ran out of budget.
pub struct PairInvariant<E> {
    pub name: &'static str,
    pub holds: fn(&E, &E) -> bool,
}

impl<E> Clone for PairInvariant<E> {
    fn clone(&self) -> Self {
        PairInvariant {
            name: self.name,
            holds: self.holds,
        }
    }
}

impl<E> fmt::Debug for PairInvariant<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name)
    }
}

/// An interpretation of the arithmetic signature `0, s, P, +, *, -.`, `=`, `<`.
///
/// Implementations must be stateless: the evaluator shares them across
/// threads during valuation sweeps.
pub trait Structure: Send + Sync {
    type Elem: Clone + fmt::Debug + Send + Sync;

    fn name(&self) -> &'static str;

    fn zero(&self) -> Self::Elem;
    fn succ(&self, a: &Self::Elem) -> Self::Elem;
    fn pred(&self, a: &Self::Elem) -> Result<Self::Elem, EvalError>;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn monus(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, EvalError>;

    fn mul(&self, _a: &Self::Elem, _b: &Self::Elem) -> Result<Self::Elem, EvalError> {
        Err(EvalError::UnsupportedOperation {
            op: "*",
            structure: self.name(),
        })
    }

    fn equal(&self, a: &Self::Elem, b: &Self::Elem) -> bool;
    fn less(&self, a: &Self::Elem, b: &Self::Elem) -> bool;

    /// A finite sample of the carrier, in a fixed order.
    fn enumerate(&self, bound: usize) -> Vec<Self::Elem>;

    /// Whether `enumerate(bound)` is the entire carrier.
    fn is_exhaustive(&self, bound: usize) -> bool;

    fn format_elem(&self, a: &Self::Elem) -> String;
    fn parse_elem(&self, text: &str) -> Result<Self::Elem, String>;

    fn pair_invariants(&self) -> Vec<PairInvariant<Self::Elem>> {
        Vec::new()
    }

    /// `s(s(...s(0)))`.
    fn numeral(&self, n: usize) -> Self::Elem {
        (0..n).fold(self.zero(), |a, _| self.succ(&a))
    }
}

/// `Z_n` with truncating order: a finite structure whose enumeration is the
/// whole carrier, so quantifiers get exact verdicts. Successor wraps, which
/// makes it a model of nothing in particular; it exists to exercise the
/// evaluator.
#[derive(Clone, Copy, Debug)]
pub struct Cyclic {
    pub modulus: u32,
}

impl Structure for Cyclic {
    type Elem = u32;

    fn name(&self) -> &'static str {
        "cyclic"
    }

    fn zero(&self) -> u32 {
        0
    }

    fn succ(&self, a: &u32) -> u32 {
        (a + 1) % self.modulus
    }

    fn pred(&self, a: &u32) -> Result<u32, EvalError> {
        Ok(a.saturating_sub(1))
    }

    fn add(&self, a: &u32, b: &u32) -> u32 {
        (a + b) % self.modulus
    }

    fn monus(&self, a: &u32, b: &u32) -> Result<u32, EvalError> {
        Ok(a.saturating_sub(*b))
    }

    fn mul(&self, a: &u32, b: &u32) -> Result<u32, EvalError> {
        Ok((a * b) % self.modulus)
    }

    fn equal(&self, a: &u32, b: &u32) -> bool {
        a == b
    }

    fn less(&self, a: &u32, b: &u32) -> bool {
        a < b
    }

    fn enumerate(&self, bound: usize) -> Vec<u32> {
        (0..self.modulus).take(bound.saturating_add(1)).collect()
    }

    fn is_exhaustive(&self, bound: usize) -> bool {
        bound + 1 >= self.modulus as usize
    }

    fn format_elem(&self, a: &u32) -> String {
        a.to_string()
    }

    fn parse_elem(&self, text: &str) -> Result<u32, String> {
        let v: u32 = text.trim().parse().map_err(|e| format!("{e}"))?;
        if v < self.modulus {
            Ok(v)
        } else {
            Err(format!("{v} is outside Z_{}", self.modulus))
        }
    }
}
