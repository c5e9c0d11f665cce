use num_bigint::BigUint;
use num_traits::Zero;

use crate::semantics::{EvalError, PairInvariant, Structure};

/// The standard naturals with arbitrary precision.
#[derive(Clone, Copy, Debug, Default)]
pub struct StdNat;

/// `a = 0` while `b != 0`: Euclid's subtraction step then subtracts zero
/// forever.
fn zero_stuck(a: &BigUint, b: &BigUint) -> bool {
    a.is_zero() && !b.is_zero()
}

impl Structure for StdNat {
    type Elem = BigUint;

    fn name(&self) -> &'static str {
        "standard"
    }

    fn zero(&self) -> BigUint {
        BigUint::zero()
    }

    fn succ(&self, a: &BigUint) -> BigUint {
        a + 1u32
    }

    fn pred(&self, a: &BigUint) -> Result<BigUint, EvalError> {
        Ok(if a.is_zero() { a.clone() } else { a - 1u32 })
    }

    fn add(&self, a: &BigUint, b: &BigUint) -> BigUint {
        a + b
    }

    fn monus(&self, a: &BigUint, b: &BigUint) -> Result<BigUint, EvalError> {
        Ok(if a > b { a - b } else { BigUint::zero() })
    }

    fn mul(&self, a: &BigUint, b: &BigUint) -> Result<BigUint, EvalError> {
        Ok(a * b)
    }

    fn equal(&self, a: &BigUint, b: &BigUint) -> bool {
        a == b
    }

    fn less(&self, a: &BigUint, b: &BigUint) -> bool {
        a < b
    }

    fn enumerate(&self, bound: usize) -> Vec<BigUint> {
        (0..=bound).map(BigUint::from).collect()
    }

    fn is_exhaustive(&self, _bound: usize) -> bool {
        false
    }

    fn format_elem(&self, a: &BigUint) -> String {
        a.to_string()
    }

    fn parse_elem(&self, text: &str) -> Result<BigUint, String> {
        text.trim()
            .parse()
            .map_err(|_| format!("`{text}` is not a natural number"))
    }

    fn pair_invariants(&self) -> Vec<PairInvariant<BigUint>> {
        vec![PairInvariant {
            name: "zero-stuck",
            holds: zero_stuck,
        }]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(v: u32) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn clamps() {
        assert_eq!(StdNat.monus(&n(2), &n(5)).unwrap(), n(0));
        assert_eq!(StdNat.monus(&n(9), &n(5)).unwrap(), n(4));
        assert_eq!(StdNat.pred(&n(0)).unwrap(), n(0));
        assert_eq!(StdNat.pred(&n(7)).unwrap(), n(6));
    }

    #[test]
    fn enumerates_an_initial_segment() {
        assert_eq!(StdNat.enumerate(3), vec![n(0), n(1), n(2), n(3)]);
        assert!(!StdNat.is_exhaustive(1000));
    }

    #[test]
    fn parses_and_prints_decimal() {
        assert_eq!(StdNat.parse_elem("18").unwrap(), n(18));
        assert_eq!(StdNat.format_elem(&n(6)), "6");
        assert!(StdNat.parse_elem("-1").is_err());
    }
}
