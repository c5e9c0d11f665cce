//! The non-standard model of the theory of addition given by the Loglan class
//! `Cn`: elements are pairs `<k, x>` with `k` an integer and `x` a
//! non-negative rational, stored unnormalized as `NSN(intpart, nomprt,
//! denom)` exactly as the class constructs them.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::semantics::{EvalError, PairInvariant, Structure};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NsnValue {
    intpart: BigInt,
    nomprt: BigInt,
    denom: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("ConstructionException: NSN({intpart},{nomprt},{denom}) fails the class guard")]
pub struct ConstructionException {
    pub intpart: BigInt,
    pub nomprt: BigInt,
    pub denom: BigInt,
}

impl NsnValue {
    /// The class constructor: raises exactly when
    /// `(nomprt = 0 and intpart < 0) or nomprt * denom < 0 or denom = 0`.
    pub fn new(
        intpart: impl Into<BigInt>,
        nomprt: impl Into<BigInt>,
        denom: impl Into<BigInt>,
    ) -> Result<NsnValue, ConstructionException> {
        let (intpart, nomprt, denom) = (intpart.into(), nomprt.into(), denom.into());
        let rejected = (nomprt.is_zero() && intpart.is_negative())
            || (&nomprt * &denom).is_negative()
            || denom.is_zero();
        if rejected {
            Err(ConstructionException {
                intpart,
                nomprt,
                denom,
            })
        } else {
            Ok(NsnValue {
                intpart,
                nomprt,
                denom,
            })
        }
    }

    pub fn zero() -> NsnValue {
        NsnValue::new(0, 0, 1).expect("zero passes the guard")
    }

    pub fn intpart(&self) -> &BigInt {
        &self.intpart
    }

    pub fn nomprt(&self) -> &BigInt {
        &self.nomprt
    }

    pub fn denom(&self) -> &BigInt {
        &self.denom
    }

    /// The fraction `nomprt/denom` is zero: a standard natural.
    pub fn is_standard(&self) -> bool {
        self.nomprt.is_zero()
    }

    /// Compares the fractional parts as rationals; denominators may be
    /// negative (the guard only asks `nomprt * denom >= 0`).
    pub fn cmp_fraction(&self, other: &NsnValue) -> Ordering {
        let lhs = &self.nomprt * &other.denom;
        let rhs = &other.nomprt * &self.denom;
        if (&self.denom * &other.denom).is_negative() {
            rhs.cmp(&lhs)
        } else {
            lhs.cmp(&rhs)
        }
    }

    pub fn add(&self, other: &NsnValue) -> NsnValue {
        NsnValue {
            intpart: &self.intpart + &other.intpart,
            nomprt: &self.nomprt * &other.denom + &self.denom * &other.nomprt,
            denom: &self.denom * &other.denom,
        }
    }

    pub fn succ(&self) -> NsnValue {
        NsnValue {
            intpart: &self.intpart + 1,
            nomprt: self.nomprt.clone(),
            denom: self.denom.clone(),
        }
    }

    pub fn equal(&self, other: &NsnValue) -> bool {
        self.intpart == other.intpart && &self.nomprt * &other.denom == &self.denom * &other.nomprt
    }
}

impl fmt::Display for NsnValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NSN({},{},{})", self.intpart, self.nomprt, self.denom)
    }
}

/// Which `less` the structure uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum NsnOrder {
    /// The order of the model `<k, x>`: standard elements first, then
    /// copies of the integers ordered by their fraction, `k` deciding only
    /// within a copy. This is the order type `w + (w* + w) * eta` and the one
    /// under which the class satisfies the axioms of addition.
    #[default]
    Model,
    /// The class's `less` read literally: integer parts are compared before
    /// fractions when both fractions are positive. Kept for comparison; it
    /// violates `x < y <-> exists z . y = x + s(z)` and lets `subtract`
    /// raise.
    Loglan,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Nsn {
    pub order: NsnOrder,
}

impl Nsn {
    pub fn loglan() -> Nsn {
        Nsn {
            order: NsnOrder::Loglan,
        }
    }

    pub fn less(&self, n: &NsnValue, m: &NsnValue) -> bool {
        match (n.is_standard(), m.is_standard()) {
            (true, true) => n.intpart < m.intpart,
            (true, false) => true,
            (false, true) => false,
            (false, false) => match self.order {
                NsnOrder::Loglan if n.intpart != m.intpart => n.intpart < m.intpart,
                NsnOrder::Loglan => n.cmp_fraction(m) == Ordering::Less,
                NsnOrder::Model => match n.cmp_fraction(m) {
                    Ordering::Equal => n.intpart < m.intpart,
                    ord => ord == Ordering::Less,
                },
            },
        }
    }

    /// `zero` if `less(n, m)`, else the componentwise difference, which goes
    /// through the class guard.
    pub fn subtract(&self, n: &NsnValue, m: &NsnValue) -> Result<NsnValue, ConstructionException> {
        if self.less(n, m) {
            return Ok(NsnValue::zero());
        }
        NsnValue::new(
            &n.intpart - &m.intpart,
            &n.nomprt * &m.denom - &n.denom * &m.nomprt,
            &n.denom * &m.denom,
        )
    }

    fn lift(&self, r: Result<NsnValue, ConstructionException>) -> Result<NsnValue, EvalError> {
        r.map_err(|e| EvalError::Construction {
            structure: self.name(),
            message: e.to_string(),
        })
    }
}

/// `frac(a) = 0`, `int(a) > 0` and `frac(b) > 0`: `a` is a positive standard
/// number and `b` lies in a non-standard copy. Euclid's loop on such a pair
/// keeps subtracting `a` from `b` without ever reaching it.
fn fraction_mismatch(a: &NsnValue, b: &NsnValue) -> bool {
    a.is_standard() && a.intpart.is_positive() && !b.is_standard()
}

impl Structure for Nsn {
    type Elem = NsnValue;

    fn name(&self) -> &'static str {
        "nsn"
    }

    fn zero(&self) -> NsnValue {
        NsnValue::zero()
    }

    fn succ(&self, a: &NsnValue) -> NsnValue {
        a.succ()
    }

    fn pred(&self, a: &NsnValue) -> Result<NsnValue, EvalError> {
        let one = NsnValue::zero().succ();
        self.lift(self.subtract(a, &one))
    }

    fn add(&self, a: &NsnValue, b: &NsnValue) -> NsnValue {
        a.add(b)
    }

    fn monus(&self, a: &NsnValue, b: &NsnValue) -> Result<NsnValue, EvalError> {
        self.lift(self.subtract(a, b))
    }

    fn equal(&self, a: &NsnValue, b: &NsnValue) -> bool {
        a.equal(b)
    }

    fn less(&self, a: &NsnValue, b: &NsnValue) -> bool {
        Nsn::less(self, a, b)
    }

    /// Every `<k, p/q>` with `|k|, p, q <= bound` passing the guard, one
    /// representative per value (fraction reduced, zero as `0/1`), sorted by
    /// `k` and then by the fraction.
    fn enumerate(&self, bound: usize) -> Vec<NsnValue> {
        let b = bound as i64;
        let mut fractions: Vec<(i64, i64)> = vec![(0, 1)];
        for q in 1..=b {
            for p in 1..=b {
                if p.gcd(&q) == 1 {
                    fractions.push((p, q));
                }
            }
        }
        fractions.sort_by(|(p1, q1), (p2, q2)| (p1 * q2).cmp(&(p2 * q1)));
        let mut out = Vec::new();
        for k in -b..=b {
            for &(p, q) in &fractions {
                if let Ok(v) = NsnValue::new(k, p, q) {
                    out.push(v);
                }
            }
        }
        out
    }

    fn is_exhaustive(&self, _bound: usize) -> bool {
        false
    }

    fn format_elem(&self, a: &NsnValue) -> String {
        a.to_string()
    }

    /// Accepts `NSN(i,n,d)` or a plain integer `i` for `NSN(i,0,1)`.
    fn parse_elem(&self, text: &str) -> Result<NsnValue, String> {
        let text = text.trim();
        let int = |s: &str| -> Result<BigInt, String> {
            s.trim()
                .parse::<BigInt>()
                .map_err(|_| format!("`{}` is not an integer", s.trim()))
        };
        let (i, n, d) = match text
            .strip_prefix("NSN(")
            .and_then(|rest| rest.strip_suffix(')'))
        {
            Some(inner) => {
                let parts: Vec<&str> = inner.split(',').collect();
                let [i, n, d] = parts.as_slice() else {
                    return Err(format!("`{text}` needs three components"));
                };
                (int(i)?, int(n)?, int(d)?)
            }
            None => (int(text)?, BigInt::zero(), BigInt::one()),
        };
        NsnValue::new(i, n, d).map_err(|e| e.to_string())
    }

    fn pair_invariants(&self) -> Vec<PairInvariant<NsnValue>> {
        vec![PairInvariant {
            name: "fraction-mismatch",
            holds: fraction_mismatch,
        }]
    }
}
