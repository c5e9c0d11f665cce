use crate::par;
use crate::syntax::{free_bool_vars, free_vars, Formula};

use super::eval::valuation_at;
use super::{EvalError, Evaluator, Structure, TruthValue, Valuation};

/// Sweeps larger than this are refused rather than attempted.
pub const MAX_VALUATIONS: usize = 20_000_000;

#[derive(Clone, Debug, PartialEq)]
pub enum Validation<E> {
    ValidUpToBound { cases: usize },
    /// The first falsifying valuation in enumeration order.
    Refuted { at: Valuation<E> },
    Inconclusive { cases: usize, unknown: usize },
}

impl<E> Validation<E> {
    pub fn is_refuted(&self) -> bool {
        matches!(self, Validation::Refuted { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            Validation::ValidUpToBound { .. } => "ValidUpToBound",
            Validation::Refuted { .. } => "Refuted",
            Validation::Inconclusive { .. } => "Inconclusive",
        }
    }
}

/// Strips leading universal quantifiers: their variables become free and are
/// swept like any other.
fn matrix(f: &Formula) -> &Formula {
    let mut body = f;
    while let Formula::Forall(_, a) = body {
        body = a;
    }
    body
}

/// Evaluates `f` at every valuation of its free variables (after peeling
/// leading `forall`s) drawn from `enumerate(var_bound)`, booleans ranging
/// over both values.
pub fn bounded_validate<S: Structure>(
    ev: &Evaluator<'_, S>,
    f: &Formula,
    var_bound: usize,
) -> Result<Validation<S::Elem>, EvalError> {
    let domain = ev.structure().enumerate(var_bound);
    bounded_validate_with(ev, f, &Valuation::new(), &domain)
}

/// As [`bounded_validate`] but over an explicit sample of the carrier.
pub fn bounded_validate_on<S: Structure>(
    ev: &Evaluator<'_, S>,
    f: &Formula,
    domain: &[S::Elem],
) -> Result<Validation<S::Elem>, EvalError> {
    bounded_validate_with(ev, f, &Valuation::new(), domain)
}

/// Sweeps only the free variables `fixed` leaves unset.
pub fn bounded_validate_with<S: Structure>(
    ev: &Evaluator<'_, S>,
    f: &Formula,
    fixed: &Valuation<S::Elem>,
    domain: &[S::Elem],
) -> Result<Validation<S::Elem>, EvalError> {
    let body = matrix(f);
    let ind: Vec<String> = free_vars(body)
        .into_iter()
        .filter(|x| !fixed.ind.contains_key(x))
        .collect();
    let boolean: Vec<String> = free_bool_vars(body)
        .into_iter()
        .filter(|q| !fixed.boolean.contains_key(q))
        .collect();
    let total = domain
        .len()
        .checked_pow(ind.len() as u32)
        .and_then(|n| n.checked_mul(1usize << boolean.len()))
        .filter(|n| *n <= MAX_VALUATIONS)
        .ok_or(EvalError::TooManyValuations {
            vars: ind.len() + boolean.len(),
            domain: domain.len(),
        })?;
    let results = par::map_range(ev.config().mode, total, |i| {
        ev.eval(body, &valuation_at(i, &ind, &boolean, domain, fixed))
    });
    let mut unknown = 0;
    for (i, r) in results.into_iter().enumerate() {
        match r? {
            TruthValue::False => {
                return Ok(Validation::Refuted {
                    at: valuation_at(i, &ind, &boolean, domain, fixed),
                })
            }
            TruthValue::Unknown => unknown += 1,
            TruthValue::True => {}
        }
    }
    Ok(if unknown == 0 {
        Validation::ValidUpToBound { cases: total }
    } else {
        Validation::Inconclusive {
            cases: total,
            unknown,
        }
    })
}
