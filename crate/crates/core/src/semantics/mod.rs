//! Budgeted execution of programs and three-valued evaluation of formulas
//! over an arbitrary arithmetic structure.
//!
//! Divergence cannot be decided by running a program, so a formula `[K] a`
//! whose program runs out of budget evaluates to `Unknown`. It becomes
//! `False` only when a divergence certificate for one of the loops still
//! running can be checked.

mod cert;
mod eval;
mod exec;
mod structure;
mod validate;
mod value;

use crate::par::ExecMode;
use crate::syntax::Ident;

pub use cert::{check_divergence_certificate, CertVerdict, Invariant};
pub use eval::{Evaluator, IterScan, IterTail};
pub use exec::{eval_open, eval_term, loop_iterations, run_program, ActiveLoop, RunOutcome, Trace, TraceRow};
pub use structure::{Cyclic, PairInvariant, Structure};
pub use validate::{bounded_validate, bounded_validate_on, bounded_validate_with, Validation, MAX_VALUATIONS};
pub use value::{TruthValue, Valuation};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("operation `{op}` is not supported by the {structure} structure")]
    UnsupportedOperation {
        op: &'static str,
        structure: &'static str,
    },
    #[error("variable `{0}` has no value")]
    UnboundVariable(Ident),
    #[error("boolean variable `?{0}` has no value")]
    UnboundBoolVariable(Ident),
    #[error("{structure}: {message}")]
    Construction {
        structure: &'static str,
        message: String,
    },
    #[error("refusing to sweep {domain}^{vars} valuations")]
    TooManyValuations { vars: usize, domain: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvalConfig {
    /// Steps allowed per program run.
    pub step_budget: u64,
    /// Largest `i` tried for `U[K]` and `I[K]`.
    pub iter_bound: usize,
    /// Carrier sample size bound for quantifiers.
    pub carrier_bound: usize,
    pub trace_on: bool,
    /// Whether exhausted runs may be resolved by divergence certificates.
    pub certificates: bool,
    /// Carrier sample bound for the inductiveness check of certificates.
    pub cert_bound: usize,
    /// Concrete loop iterations a certificate is replayed for.
    pub cert_steps: usize,
    pub mode: ExecMode,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            step_budget: 10_000,
            iter_bound: 64,
            carrier_bound: 6,
            trace_on: false,
            certificates: true,
            cert_bound: 4,
            cert_steps: 16,
            mode: ExecMode::default(),
        }
    }
}

impl EvalConfig {
    pub fn with_budget(mut self, step_budget: u64) -> Self {
        self.step_budget = step_budget;
        self
    }

    pub fn with_trace(mut self) -> Self {
        self.trace_on = true;
        self
    }

    pub fn without_certificates(mut self) -> Self {
        self.certificates = false;
        self
    }

    pub fn with_mode(mut self, mode: ExecMode) -> Self {
        self.mode = mode;
        self
    }
}
