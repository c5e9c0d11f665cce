use num_bigint::BigUint;

use crate::models::{Nsn, NsnValue, StdNat};
use crate::semantics::{
    check_divergence_certificate, loop_iterations, run_program, CertVerdict, EvalConfig, Evaluator, Invariant,
    RunOutcome, Structure, Valuation,
};

use super::{gcd_oracle, program, EuclidError};

pub const DEMOS: &[&str] = &["standard", "nsn-halt", "nsn-diverge"];

/// The outcome of a demo run with its rendered trace table.
#[derive(Clone, Debug, PartialEq)]
pub struct DemoReport<E> {
    pub name: String,
    pub outcome: RunOutcome<E>,
    pub table: String,
    /// Completed iterations of the loop, when it halted.
    pub iterations: Option<u64>,
    pub certificate: Option<CertVerdict>,
    pub pass: bool,
    pub detail: String,
}

impl<E> DemoReport<E> {
    pub fn outcome_label(&self) -> &'static str {
        match self.outcome {
            RunOutcome::Halted { .. } => "Halted",
            RunOutcome::BudgetExhausted { .. } => "BudgetExhausted",
            RunOutcome::RuntimeError(_) => "RuntimeError",
        }
    }

    /// `demo: <name>`, the trace table, then `verdict: PASS|FAIL <detail>`.
    pub fn render(&self) -> String {
        format!(
            "demo: {}\n{}verdict: {} {}\n",
            self.name,
            self.table,
            if self.pass { "PASS" } else { "FAIL" },
            self.detail
        )
    }
}

fn nsn(i: i64, n: i64, d: i64) -> NsnValue {
    NsnValue::new(i, n, d).expect("demo values pass the guard")
}

fn traced<S: Structure>(s: &S, v: &Valuation<S::Elem>, cfg: &EvalConfig) -> (RunOutcome<S::Elem>, String) {
    let cfg = cfg.clone().with_trace();
    let e = program("E").expect("E is registered");
    let out = run_program(s, &e, v, &cfg);
    let table = out.trace().map(|t| t.render(s)).unwrap_or_default();
    (out, table)
}

/// Runs E on the standard naturals and compares the result with the oracle.
pub fn demo_standard(n: u64, m: u64, cfg: &EvalConfig) -> Result<DemoReport<BigUint>, EuclidError> {
    let want = gcd_oracle(n, m)?;
    let v = Valuation::new().with("n", BigUint::from(n)).with("m", BigUint::from(m));
    let (outcome, table) = traced(&StdNat, &v, cfg);
    let e = program("E")?;
    let iterations = loop_iterations(&StdNat, &e, &v, cfg).ok().flatten();
    let (pass, detail) = match outcome.final_state().and_then(|f| f.get("n")) {
        Some(got) if *got == BigUint::from(want) => (
            true,
            format!("final n = {got} = gcd({n},{m}) after {} iterations", iterations.unwrap_or(0)),
        ),
        Some(got) => (false, format!("final n = {got}, gcd({n},{m}) = {want}")),
        None => (false, format!("run did not halt: {}", label(&outcome))),
    };
    Ok(DemoReport {
        name: format!("standard n={n} m={m}"),
        outcome,
        table,
        iterations,
        certificate: None,
        pass,
        detail,
    })
}

fn label<E>(o: &RunOutcome<E>) -> String {
    match o {
        RunOutcome::Halted { .. } => "Halted".into(),
        RunOutcome::BudgetExhausted { steps, .. } => format!("BudgetExhausted after {steps} steps"),
        RunOutcome::RuntimeError(e) => format!("RuntimeError: {e}"),
    }
}

/// E on NSN from `n = NSN(12,0,1)`, `m = NSN(15,0,2)`; both are standard and
/// the result must equal `NSN(3,0,1)`.
pub fn demo_nsn_halt(cfg: &EvalConfig) -> DemoReport<NsnValue> {
    let s = Nsn::default();
    let v = Valuation::new().with("n", nsn(12, 0, 1)).with("m", nsn(15, 0, 2));
    let (outcome, table) = traced(&s, &v, cfg);
    let iterations = loop_iterations(&s, &program("E").expect("E is registered"), &v, cfg)
        .ok()
        .flatten();
    let want = nsn(3, 0, 1);
    let (pass, detail) = match outcome.final_state().and_then(|f| f.get("n")) {
        Some(got) if got.equal(&want) => (true, format!("final n = {got}, equal to {want}")),
        Some(got) => (false, format!("final n = {got}, expected {want}")),
        None => (false, format!("run did not halt: {}", label(&outcome))),
    };
    DemoReport {
        name: "nsn-halt".into(),
        outcome,
        table,
        iterations,
        certificate: None,
        pass,
        detail,
    }
}

/// E on NSN from `n = NSN(12,0,1)`, `m = NSN(15,1,2)`. The run must exhaust
/// its budget with row `i` of the trace equal to `(NSN(12,0,1),
/// NSN(15-12i,1,2))`, and the fraction-mismatch invariant must certify the
/// divergence.
pub fn demo_nsn_diverge(cfg: &EvalConfig) -> DemoReport<NsnValue> {
    let s = Nsn::default();
    let v = Valuation::new().with("n", nsn(12, 0, 1)).with("m", nsn(15, 1, 2));
    let (outcome, table) = traced(&s, &v, cfg);
    let mut problems = Vec::new();
    if !matches!(outcome, RunOutcome::BudgetExhausted { .. }) {
        problems.push(format!("expected BudgetExhausted, got {}", label(&outcome)));
    }
    let rows = outcome.trace().map(|t| t.rows.len()).unwrap_or(0);
    if let Some(t) = outcome.trace() {
        let bad = t.rows.iter().enumerate().find(|(i, row)| {
            let want_m = nsn(15 - 12 * *i as i64, 1, 2);
            row.state.get("n") != Some(&nsn(12, 0, 1)) || row.state.get("m") != Some(&want_m)
        });
        if let Some((i, row)) = bad {
            problems.push(format!("row {i} is {}", row.state.render(&s)));
        }
    }
    let ev = Evaluator::new(&s, cfg.clone());
    let inv = s
        .pair_invariants()
        .into_iter()
        .find(|p| p.name == "fraction-mismatch")
        .expect("NSN registers fraction-mismatch");
    let cert = check_divergence_certificate(
        &ev,
        &program("E").expect("E is registered"),
        &v,
        &Invariant::pair(&inv, "n", "m"),
        cfg.cert_steps,
    );
    if cert != CertVerdict::Certified {
        problems.push(format!("certificate {cert:?}"));
    }
    let (pass, detail) = if problems.is_empty() {
        (
            true,
            format!(
                "{}; {rows} rows match m = NSN(15-12i,1,2); certificate Certified",
                label(&outcome)
            ),
        )
    } else {
        (false, problems.join("; "))
    };
    DemoReport {
        name: "nsn-diverge".into(),
        outcome,
        table,
        iterations: None,
        certificate: Some(cert),
        pass,
        detail,
    }
}

/// A demo by name, rendered; `standard` runs at `(n, m)`.
pub fn run_demo(name: &str, n: u64, m: u64, cfg: &EvalConfig) -> Result<(String, bool), EuclidError> {
    match name {
        "standard" => demo_standard(n, m, cfg).map(|r| (r.render(), r.pass)),
        "nsn-halt" => Ok(demo_nsn_halt(cfg)).map(|r| (r.render(), r.pass)),
        "nsn-diverge" => Ok(demo_nsn_diverge(cfg)).map(|r| (r.render(), r.pass)),
        other => Err(EuclidError::UnknownArtifact(format!("demo {other}"))),
    }
}
