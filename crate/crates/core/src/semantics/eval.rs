use std::collections::HashMap;
use std::sync::Mutex;

use crate::par;
use crate::syntax::{first_occurrence_order, free_bool_vars, free_vars, Formula, Program};

use super::cert::{check_divergence_certificate, CertVerdict, Invariant};
use super::exec::{eval_open, run_program, RunOutcome};
use super::{EvalConfig, EvalError, Structure, TruthValue, Valuation};

/// How the values `K^0 a, K^1 a, ...` continue past the ones computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IterTail {
    /// A state repeated, so the sequence of values is periodic and fully
    /// known from the computed prefix.
    Periodic,
    /// `K` was certified divergent; every later value is false.
    Diverges,
    /// `K` ran out of budget without a certificate; later values unknown.
    Exhausted,
    /// `iter_bound` was reached.
    Bounded,
}

/// Values of `K^i a` for `i = 0, 1, ...` at one valuation.
#[derive(Clone, Debug, PartialEq)]
pub struct IterScan {
    pub values: Vec<TruthValue>,
    pub tail: IterTail,
}

impl IterScan {
    pub fn least_witness(&self) -> Option<usize> {
        self.values.iter().position(|t| *t == TruthValue::True)
    }

    /// `U[K] a`: least upper bound.
    pub fn union(&self) -> TruthValue {
        if self.values.contains(&TruthValue::True) {
            return TruthValue::True;
        }
        let complete = matches!(self.tail, IterTail::Periodic | IterTail::Diverges);
        if complete && self.values.iter().all(|t| *t == TruthValue::False) {
            TruthValue::False
        } else {
            TruthValue::Unknown
        }
    }

    /// `I[K] a`: greatest lower bound.
    pub fn inter(&self) -> TruthValue {
        if self.values.contains(&TruthValue::False) || self.tail == IterTail::Diverges {
            return TruthValue::False;
        }
        if self.tail == IterTail::Periodic && self.values.iter().all(|t| *t == TruthValue::True) {
            TruthValue::True
        } else {
            TruthValue::Unknown
        }
    }
}

/// Formula evaluation over one structure under fixed bounds.
///
/// Holds a cache of divergence-certificate checks, which are expensive and
/// depend only on the loop and invariant.
pub struct Evaluator<'s, S: Structure> {
    s: &'s S,
    cfg: EvalConfig,
    inductive: Mutex<HashMap<String, bool>>,
}

impl<'s, S: Structure> Evaluator<'s, S> {
    pub fn new(s: &'s S, cfg: EvalConfig) -> Self {
        Evaluator {
            s,
            cfg,
            inductive: Mutex::new(HashMap::new()),
        }
    }

    pub fn structure(&self) -> &'s S {
        self.s
    }

    pub fn config(&self) -> &EvalConfig {
        &self.cfg
    }

    pub fn run(&self, k: &Program, v: &Valuation<S::Elem>) -> RunOutcome<S::Elem> {
        run_program(self.s, k, v, &self.cfg)
    }

    pub fn eval(&self, f: &Formula, v: &Valuation<S::Elem>) -> Result<TruthValue, EvalError> {
        Ok(match f {
            Formula::Open(g) => TruthValue::from_bool(eval_open(self.s, g, v)?),
            Formula::Box(k, a) => match self.run(k, v) {
                RunOutcome::Halted { final_state, .. } => self.eval(a, &final_state)?,
                RunOutcome::BudgetExhausted { active_loops, .. } => {
                    if self.certified_divergent(&active_loops) {
                        TruthValue::False
                    } else {
                        TruthValue::Unknown
                    }
                }
                RunOutcome::RuntimeError(e) => return Err(e),
            },
            Formula::IterUnion(k, a) => self.iterations(k, a, v)?.union(),
            Formula::IterInter(k, a) => self.iterations(k, a, v)?.inter(),
            Formula::Forall(x, a) | Formula::Exists(x, a) => {
                let universal = matches!(f, Formula::Forall(..));
                let mut seen_unknown = false;
                for e in self.s.enumerate(self.cfg.carrier_bound) {
                    let mut w = v.clone();
                    w.set(x, e);
                    match (self.eval(a, &w)?, universal) {
                        (TruthValue::False, true) => return Ok(TruthValue::False),
                        (TruthValue::True, false) => return Ok(TruthValue::True),
                        (TruthValue::Unknown, _) => seen_unknown = true,
                        _ => {}
                    }
                }
                if seen_unknown || !self.s.is_exhaustive(self.cfg.carrier_bound) {
                    TruthValue::Unknown
                } else {
                    TruthValue::from_bool(universal)
                }
            }
            Formula::And(l, r) => {
                let a = self.eval(l, v)?;
                if a == TruthValue::False {
                    return Ok(a);
                }
                a.and(self.eval(r, v)?)
            }
            Formula::Or(l, r) => {
                let a = self.eval(l, v)?;
                if a == TruthValue::True {
                    return Ok(a);
                }
                a.or(self.eval(r, v)?)
            }
            Formula::Implies(l, r) => {
                let a = self.eval(l, v)?;
                if a == TruthValue::False {
                    return Ok(TruthValue::True);
                }
                a.implies(self.eval(r, v)?)
            }
            Formula::Iff(l, r) => self.eval(l, v)?.iff(self.eval(r, v)?),
            Formula::Not(a) => self.eval(a, v)?.not(),
        })
    }

    /// Computes `K^i a` for `i = 0..=iter_bound`, running `K` once per step
    /// with a fresh budget.
    pub fn iterations(
        &self,
        k: &Program,
        a: &Formula,
        v: &Valuation<S::Elem>,
    ) -> Result<IterScan, EvalError> {
        let mut states = vec![v.clone()];
        let mut values = vec![self.eval(a, v)?];
        for _ in 0..self.cfg.iter_bound {
            let current = states.last().expect("non-empty");
            match self.run(k, current) {
                RunOutcome::Halted { final_state, .. } => {
                    if states.iter().any(|w| w.same_as(&final_state, self.s)) {
                        return Ok(IterScan {
                            values,
                            tail: IterTail::Periodic,
                        });
                    }
                    values.push(self.eval(a, &final_state)?);
                    states.push(final_state);
                }
                RunOutcome::BudgetExhausted { active_loops, .. } => {
                    let tail = if self.certified_divergent(&active_loops) {
                        values.push(TruthValue::False);
                        IterTail::Diverges
                    } else {
                        IterTail::Exhausted
                    };
                    return Ok(IterScan { values, tail });
                }
                RunOutcome::RuntimeError(e) => return Err(e),
            }
        }
        Ok(IterScan {
            values,
            tail: IterTail::Bounded,
        })
    }

    /// Whether some loop that was running when the budget ran out is known
    /// to run forever from its last head state. Determinism makes that
    /// enough for the whole program.
    pub fn certified_divergent(&self, active_loops: &[super::ActiveLoop<S::Elem>]) -> bool {
        self.cfg.certificates
            && active_loops
                .iter()
                .any(|lp| self.loop_diverges_from(&lp.program, &lp.head))
    }

    /// Tries a fixpoint check and then every registered pair invariant on
    /// `k` (a `while` loop) at `head`.
    pub fn loop_diverges_from(&self, k: &Program, head: &Valuation<S::Elem>) -> bool {
        let Program::While(g, body) = k else {
            return false;
        };
        if self.is_fixpoint(g, body, head) {
            return true;
        }
        let vars = first_occurrence_order(k);
        for cand in self.s.pair_invariants() {
            for a in &vars {
                for b in &vars {
                    if a == b {
                        continue;
                    }
                    let inv = Invariant::pair(&cand, a, b);
                    if inv.holds(head)
                        && check_divergence_certificate(self, k, head, &inv, self.cfg.cert_steps)
                            == CertVerdict::Certified
                    {
                        return true;
                    }
                }
            }
        }
        false
    }

    /// The guard holds and one pass of the body changes nothing.
    fn is_fixpoint(&self, g: &crate::syntax::Open, body: &Program, head: &Valuation<S::Elem>) -> bool {
        if !matches!(eval_open(self.s, g, head), Ok(true)) {
            return false;
        }
        match self.run(body, head) {
            RunOutcome::Halted { final_state, .. } => final_state.same_as(head, self.s),
            _ => false,
        }
    }

    /// Checks over every valuation of the loop's variables drawn from
    /// `enumerate(cert_bound)` that `inv` forces the guard and survives one
    /// pass of the body. Loops over more than three variables are not
    /// attempted.
    pub fn inductively_preserved(&self, k: &Program, inv: &Invariant<'_, S::Elem>) -> bool {
        let key = format!("{k}|{}", inv.name);
        if let Some(known) = self.inductive.lock().expect("cache lock").get(&key) {
            return *known;
        }
        let verdict = self.compute_inductive(k, inv);
        self.inductive.lock().expect("cache lock").insert(key, verdict);
        verdict
    }

    fn compute_inductive(&self, k: &Program, inv: &Invariant<'_, S::Elem>) -> bool {
        let Program::While(g, body) = k else {
            return false;
        };
        let as_formula = Formula::boxed(k.clone(), Formula::Open(crate::syntax::Open::True));
        let ind: Vec<_> = free_vars(&as_formula).into_iter().collect();
        let boolean: Vec<_> = free_bool_vars(&as_formula).into_iter().collect();
        if ind.len() > 3 || boolean.len() > 2 {
            return false;
        }
        let domain = self.s.enumerate(self.cfg.cert_bound);
        let total = domain.len().pow(ind.len() as u32) << boolean.len();
        let sweep = EvalConfig {
            trace_on: false,
            ..self.cfg.clone()
        };
        let ok = par::map_range(self.cfg.mode, total, |index| {
            let w = valuation_at(index, &ind, &boolean, &domain, &Valuation::new());
            if !inv.holds(&w) {
                return true;
            }
            if !matches!(eval_open(self.s, g, &w), Ok(true)) {
                return false;
            }
            match run_program(self.s, body, &w, &sweep) {
                RunOutcome::Halted { final_state, .. } => inv.holds(&final_state),
                _ => false,
            }
        });
        ok.into_iter().all(|b| b)
    }
}

/// The `index`-th valuation in mixed radix over `domain` for `ind` (first
/// variable most significant) followed by the booleans, layered over `base`.
pub(crate) fn valuation_at<E: Clone>(
    mut index: usize,
    ind: &[String],
    boolean: &[String],
    domain: &[E],
    base: &Valuation<E>,
) -> Valuation<E> {
    let mut w = base.clone();
    for q in boolean.iter().rev() {
        w.boolean.insert(q.clone(), index & 1 == 1);
        index >>= 1;
    }
    for x in ind.iter().rev() {
        let n = domain.len();
        w.set(x, domain[index % n].clone());
        index /= n;
    }
    w
}
