//! Quantifier-free instances of the axioms of addition, checked directly on
//! a structure's operations over a finite sample.

use crate::par::{self, ExecMode};
use crate::semantics::{EvalError, Structure};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawViolation {
    /// Axiom number, `"1"` to `"9"`, or an operation name for congruence.
    pub law: &'static str,
    pub at: String,
}

struct Checker<'a, S: Structure> {
    s: &'a S,
    out: Vec<LawViolation>,
}

impl<S: Structure> Checker<'_, S> {
    fn check(&mut self, law: &'static str, at: &[&S::Elem], ok: Result<bool, EvalError>) {
        if !matches!(ok, Ok(true)) {
            let at = at
                .iter()
                .map(|e| self.s.format_elem(e))
                .collect::<Vec<_>>()
                .join(", ");
            self.out.push(LawViolation { law, at });
        }
    }
}

/// Axioms (1)-(9) of the theory of addition at every pair `x, y` of the
/// sample. Axiom (5) is checked in both directions: `x < y` must come with
/// the witness `z = y -. s(x)` satisfying `y = x + s(z)`, and any sampled
/// `z` with `y = x + s(z)` must give `x < y`.
pub fn th1_violations<S: Structure>(s: &S, sample: &[S::Elem], mode: ExecMode) -> Vec<LawViolation> {
    let n = sample.len();
    let per_pair = par::map_range(mode, n * n, |idx| {
        let (x, y) = (&sample[idx / n], &sample[idx % n]);
        let mut c = Checker { s, out: Vec::new() };
        let zero = s.zero();
        if idx % n == 0 {
            c.check("1", &[x], Ok(!s.equal(&s.succ(x), &zero)));
            c.check("3", &[x], Ok(s.equal(&s.add(x, &zero), x)));
            c.check("7", &[x], s.pred(&s.succ(x)).map(|p| s.equal(&p, x)));
            c.check("8", &[x], s.monus(x, &zero).map(|d| s.equal(&d, x)));
        }
        if idx == 0 {
            c.check("6", &[], s.pred(&zero).map(|p| s.equal(&p, &zero)));
        }
        c.check(
            "2",
            &[x, y],
            Ok(!s.equal(&s.succ(x), &s.succ(y)) || s.equal(x, y)),
        );
        c.check(
            "4",
            &[x, y],
            Ok(s.equal(&s.add(x, &s.succ(y)), &s.succ(&s.add(x, y)))),
        );
        if s.less(x, y) {
            let witness = s
                .monus(y, &s.succ(x))
                .map(|z| s.equal(y, &s.add(x, &s.succ(&z))));
            c.check("5", &[x, y], witness);
        }
        for z in sample {
            if s.equal(y, &s.add(x, &s.succ(z))) {
                c.check("5", &[x, y, z], Ok(s.less(x, y)));
            }
        }
        let lhs = s.monus(x, &s.succ(y));
        let rhs = s.monus(x, y).and_then(|d| s.pred(&d));
        c.check(
            "9",
            &[x, y],
            match (lhs, rhs) {
                (Ok(a), Ok(b)) => Ok(s.equal(&a, &b)),
                (Err(e), _) | (_, Err(e)) => Err(e),
            },
        );
        c.out
    });
    per_pair.into_iter().flatten().collect()
}

/// Equality must be respected by `s`, `P`, `+`, `-.` and `<`: replacing an
/// argument by an equal one never changes the result.
pub fn congruence_violations<S: Structure>(s: &S, sample: &[S::Elem], mode: ExecMode) -> Vec<LawViolation> {
    let n = sample.len();
    let per_pair = par::map_range(mode, n * n, |idx| {
        let (a, b) = (&sample[idx / n], &sample[idx % n]);
        let mut c = Checker { s, out: Vec::new() };
        if !s.equal(a, b) {
            return c.out;
        }
        c.check("s", &[a, b], Ok(s.equal(&s.succ(a), &s.succ(b))));
        c.check(
            "P",
            &[a, b],
            s.pred(a).and_then(|p| s.pred(b).map(|q| s.equal(&p, &q))),
        );
        for other in sample {
            c.check(
                "+",
                &[a, b, other],
                Ok(s.equal(&s.add(a, other), &s.add(b, other))),
            );
            c.check(
                "-.",
                &[a, b, other],
                s.monus(a, other)
                    .and_then(|p| s.monus(b, other).map(|q| s.equal(&p, &q))),
            );
            c.check(
                "<",
                &[a, b, other],
                Ok(s.less(a, other) == s.less(b, other) && s.less(other, a) == s.less(other, b)),
            );
        }
        c.out
    });
    per_pair.into_iter().flatten().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{Nsn, NsnValue, StdNat};

    #[test]
    fn standard_naturals_satisfy_the_axioms() {
        let sample = StdNat.enumerate(6);
        assert!(th1_violations(&StdNat, &sample, ExecMode::Sequential).is_empty());
    }

    #[test]
    fn the_literal_class_order_breaks_axioms_five_and_nine() {
        let s = Nsn::loglan();
        let sample = s.enumerate(4);
        let bad = th1_violations(&s, &sample, ExecMode::Sequential);
        let laws: std::collections::BTreeSet<_> = bad.iter().map(|v| v.law).collect();
        assert!(laws.contains("5") && laws.contains("9"), "{laws:?}");
        // A concrete failure of (9): x = <0,1/2>, y = <0,1/4>.
        let (x, y) = (NsnValue::new(0, 1, 2).unwrap(), NsnValue::new(0, 1, 4).unwrap());
        let lhs = s.monus(&x, &s.succ(&y)).unwrap();
        let rhs = s.pred(&s.monus(&x, &y).unwrap()).unwrap();
        assert!(!s.equal(&lhs, &rhs));
    }

    #[test]
    fn nsn_equality_is_a_congruence() {
        let s = Nsn::default();
        let mut sample = s.enumerate(2);
        // Unnormalized twins of sampled values.
        sample.push(NsnValue::new(1, 2, 4).unwrap());
        sample.push(NsnValue::new(2, 0, 3).unwrap());
        assert!(congruence_violations(&s, &sample, ExecMode::Sequential).is_empty());
    }
}
