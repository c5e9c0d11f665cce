use crate::syntax::Program;

use super::exec::{eval_open, run_program, RunOutcome};
use super::{Evaluator, PairInvariant, Structure, Valuation};

type Pred<'a, E> = Box<dyn Fn(&Valuation<E>) -> bool + Send + Sync + 'a>;

/// A predicate on memory states, used as a candidate loop invariant.
pub struct Invariant<'a, E> {
    pub name: String,
    pred: Pred<'a, E>,
}

impl<'a, E: Clone + 'a> Invariant<'a, E> {
    pub fn new(name: impl Into<String>, pred: impl Fn(&Valuation<E>) -> bool + Send + Sync + 'a) -> Self {
        Invariant {
            name: name.into(),
            pred: Box::new(pred),
        }
    }

    /// `cand(a, b)` on the values of variables `a` and `b`; false when either
    /// is unset.
    pub fn pair(cand: &PairInvariant<E>, a: &str, b: &str) -> Self {
        let holds = cand.holds;
        let (x, y) = (a.to_string(), b.to_string());
        Invariant::new(format!("{}({a},{b})", cand.name), move |v: &Valuation<E>| {
            match (v.get(&x), v.get(&y)) {
                (Some(p), Some(q)) => holds(p, q),
                _ => false,
            }
        })
    }

    pub fn holds(&self, v: &Valuation<E>) -> bool {
        (self.pred)(v)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertVerdict {
    Certified,
    Failed { step: usize, reason: String },
}

/// Checks that `inv` witnesses non-termination of the `while` loop `k` from
/// `v`: it holds at `v`, for the first `n_steps` iterations it forces the
/// guard and is restored by the body, and it is inductive over the
/// evaluator's certificate sample.
pub fn check_divergence_certificate<S: Structure>(
    ev: &Evaluator<'_, S>,
    k: &Program,
    v: &Valuation<S::Elem>,
    inv: &Invariant<'_, S::Elem>,
    n_steps: usize,
) -> CertVerdict {
    let fail = |step: usize, reason: &str| CertVerdict::Failed {
        step,
        reason: reason.to_string(),
    };
    let Program::While(g, body) = k else {
        return fail(0, "not a while loop");
    };
    let s = ev.structure();
    if !inv.holds(v) {
        return fail(0, "invariant does not hold initially");
    }
    let mut state = v.clone();
    for step in 0..n_steps {
        if !matches!(eval_open(s, g, &state), Ok(true)) {
            return fail(step, "guard is false");
        }
        match run_program(s, body, &state, ev.config()) {
            RunOutcome::Halted { final_state, .. } => state = final_state,
            _ => return fail(step, "body does not halt"),
        }
        if !inv.holds(&state) {
            return fail(step + 1, "invariant not preserved");
        }
    }
    if !ev.inductively_preserved(k, inv) {
        return fail(n_steps, "invariant is not inductive on the sample");
    }
    CertVerdict::Certified
}
