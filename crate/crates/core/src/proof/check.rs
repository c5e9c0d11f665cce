use std::collections::HashMap;
use std::fmt;

use crate::models::StdNat;
use crate::par::ExecMode;
use crate::semantics::{bounded_validate, EvalConfig, Evaluator, Validation};
use crate::syntax::{equiv, is_valid_ident, parse_formula, parse_open, parse_program, parse_term, Formula, SyntaxError};

use super::rules::{check_rule, omega_premise, OmegaRule, RuleError};
use super::schema::{match_schema_with, schema, Binding, Bindings, MatchError, MetaSort};
use super::script::{Justification, Script, ScriptError, Step};
use super::theory::{theory_axiom, Theory, TheoryError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Ok,
    SchemaMismatch,
    SideConditionViolated,
    PremiseMissing,
    TrustedLemmaRefuted,
    /// The template instance at this index did not check.
    OmegaSampleFailed(usize),
    /// Every sampled instance checked but the conclusion has a counterexample.
    OmegaConclusionRefuted,
    UnknownAxiom,
    NotFirstOrder,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Ok => f.write_str("OK"),
            Verdict::OmegaSampleFailed(i) => write!(f, "OmegaSampleFailed({i})"),
            other => write!(f, "{other:?}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepReport {
    pub id: String,
    pub verdict: Verdict,
    /// Why a step failed.
    pub detail: Option<String>,
    /// Printed after the verdict; set for omega steps.
    pub note: Option<String>,
}

impl StepReport {
    fn ok(id: &str) -> StepReport {
        StepReport {
            id: id.to_string(),
            verdict: Verdict::Ok,
            detail: None,
            note: None,
        }
    }

    fn fail(id: &str, verdict: Verdict, detail: impl Into<String>) -> StepReport {
        StepReport {
            id: id.to_string(),
            verdict,
            detail: Some(detail.into()),
            note: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub steps: Vec<StepReport>,
    /// Trusted lemmas the script relies on, in order of first use.
    pub trusted: Vec<String>,
}

impl CheckReport {
    pub fn accepted(&self) -> bool {
        self.steps.iter().all(|s| s.verdict == Verdict::Ok)
    }

    pub fn first_failure(&self) -> Option<&StepReport> {
        self.steps.iter().find(|s| s.verdict != Verdict::Ok)
    }

    /// `<id> <verdict>` per step, then `ACCEPTED trusting [..]` or
    /// `REJECTED at <id>`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for s in &self.steps {
            out.push_str(&format!("{} {}", s.id, s.verdict));
            if let Some(note) = &s.note {
                out.push(' ');
                out.push_str(note);
            }
            out.push('\n');
        }
        match self.first_failure() {
            None => out.push_str(&format!("ACCEPTED trusting [{}]\n", self.trusted.join(", "))),
            Some(s) => out.push_str(&format!("REJECTED at {}\n", s.id)),
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckConfig {
    /// Carrier bound for validating omega conclusions.
    pub omega_var_bound: usize,
    pub omega_budget: u64,
    pub mode: ExecMode,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            omega_var_bound: 3,
            omega_budget: 200,
            mode: ExecMode::default(),
        }
    }
}

/// Outcome of screening a trusted lemma on the standard naturals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TrustedOutcome {
    /// Carries the validation label, `ValidUpToBound` or `Inconclusive`.
    Passed(&'static str),
    Refuted(String),
}

/// Bounded validation of `f` on the standard naturals.
pub fn validate_trusted(f: &Formula, bound: usize, budget: u64, mode: ExecMode) -> TrustedOutcome {
    let cfg = EvalConfig::default().with_budget(budget).with_mode(mode);
    let ev = Evaluator::new(&StdNat, cfg);
    match bounded_validate(&ev, f, bound) {
        Ok(Validation::Refuted { at }) => TrustedOutcome::Refuted(at.render(&StdNat)),
        Ok(v) => TrustedOutcome::Passed(v.label()),
        Err(e) => TrustedOutcome::Refuted(e.to_string()),
    }
}

/// Formulas of the steps checked so far, by id.
pub type Proven = HashMap<String, Formula>;

/// Nested omega applications deeper than this are refused.
const MAX_DEPTH: usize = 4;

pub struct Checker<'a> {
    cfg: CheckConfig,
    script: Option<&'a Script>,
    trusted: Vec<String>,
}

fn parse_binding(sort: MetaSort, text: &str) -> Result<Binding, String> {
    let e = |e: SyntaxError| e.to_string();
    Ok(match sort {
        MetaSort::Formula => Binding::Formula(parse_formula(text).map_err(e)?),
        MetaSort::Open => Binding::Open(parse_open(text).map_err(e)?),
        MetaSort::Program | MetaSort::AssignSeq => Binding::Program(parse_program(text).map_err(e)?),
        MetaSort::Term => Binding::Term(parse_term(text).map_err(e)?),
        MetaSort::Var | MetaSort::BoolVar => {
            let name = text.trim().trim_start_matches('?');
            if !is_valid_ident(name) {
                return Err(format!("`{text}` is not a variable"));
            }
            Binding::Var(name.to_string())
        }
    })
}

impl<'a> Checker<'a> {
    pub fn new(cfg: CheckConfig) -> Self {
        Checker {
            cfg,
            script: None,
            trusted: Vec::new(),
        }
    }

    pub fn check_script(mut self, script: &'a Script) -> CheckReport {
        self.script = Some(script);
        let mut proven = Proven::new();
        let steps = script
            .steps
            .iter()
            .map(|step| self.check_in(step, &mut proven, 0))
            .collect();
        CheckReport {
            steps,
            trusted: self.trusted,
        }
    }

    /// Checks `step` against the steps proven so far and records it when it
    /// passes.
    fn check_in(&mut self, step: &Step, proven: &mut Proven, depth: usize) -> StepReport {
        let report = if proven.contains_key(&step.id) {
            StepReport::fail(&step.id, Verdict::SchemaMismatch, format!("duplicate step id `{}`", step.id))
        } else {
            self.check_step(step, proven, depth)
        };
        if report.verdict == Verdict::Ok {
            proven.insert(step.id.clone(), step.formula.clone());
        }
        report
    }

    fn check_step(&mut self, step: &Step, proven: &Proven, depth: usize) -> StepReport {
        let id = step.id.as_str();
        match &step.by {
            Justification::Axiom { schema: name, binds } => {
                let Some(sch) = schema(name) else {
                    return StepReport::fail(id, Verdict::UnknownAxiom, format!("no axiom schema `{name}`"));
                };
                let mut seed = Bindings::new();
                for (meta, text) in binds {
                    let Some(sort) = sch.sort_of(meta) else {
                        return StepReport::fail(
                            id,
                            Verdict::SchemaMismatch,
                            format!("`{meta}` is not a metavariable of {name}"),
                        );
                    };
                    match parse_binding(sort, text) {
                        Ok(b) => {
                            seed.insert(meta.clone(), b);
                        }
                        Err(e) => return StepReport::fail(id, Verdict::SchemaMismatch, e),
                    }
                }
                match match_schema_with(name, &step.formula, seed) {
                    Ok(_) => StepReport::ok(id),
                    Err(e @ MatchError::SideCondition { .. }) => {
                        StepReport::fail(id, Verdict::SideConditionViolated, e.to_string())
                    }
                    Err(e) => StepReport::fail(id, Verdict::SchemaMismatch, e.to_string()),
                }
            }
            Justification::Theory { theory, name, phi } => {
                let th: Theory = match theory.parse() {
                    Ok(th) => th,
                    Err(e) => return StepReport::fail(id, Verdict::UnknownAxiom, format!("{e}")),
                };
                match theory_axiom(th, name, phi.as_ref()) {
                    Ok(ax) if equiv(&ax, &step.formula) => StepReport::ok(id),
                    Ok(ax) => StepReport::fail(id, Verdict::SchemaMismatch, format!("{th} {name} is {ax}")),
                    Err(e @ TheoryError::NotFirstOrder(_)) => {
                        StepReport::fail(id, Verdict::NotFirstOrder, e.to_string())
                    }
                    Err(e @ (TheoryError::UnknownAxiom { .. } | TheoryError::UnknownTheory(_))) => {
                        StepReport::fail(id, Verdict::UnknownAxiom, e.to_string())
                    }
                    Err(e) => StepReport::fail(id, Verdict::SchemaMismatch, e.to_string()),
                }
            }
            Justification::Rule { rule, from, extras } => {
                let mut premises = Vec::new();
                for p in from {
                    match proven.get(p) {
                        Some(f) => premises.push(f.clone()),
                        None => {
                            return StepReport::fail(
                                id,
                                Verdict::PremiseMissing,
                                format!("`{p}` is not an earlier proven step"),
                            )
                        }
                    }
                }
                match check_rule(*rule, &premises, &step.formula, extras) {
                    Ok(()) => StepReport::ok(id),
                    Err(e @ RuleError::PremiseCount { .. }) => {
                        StepReport::fail(id, Verdict::PremiseMissing, e.to_string())
                    }
                    Err(e @ RuleError::SideCondition(_)) => {
                        StepReport::fail(id, Verdict::SideConditionViolated, e.to_string())
                    }
                    Err(e) => StepReport::fail(id, Verdict::SchemaMismatch, format!("{rule}: {e}")),
                }
            }
            Justification::Omega {
                rule,
                template,
                samples,
            } => {
                let Some(t) = self.script.and_then(|s| s.templates.get(template)) else {
                    return StepReport::fail(id, Verdict::PremiseMissing, format!("no template `{template}`"));
                };
                let t = t.clone();
                let mut report = self.check_omega(
                    id,
                    *rule,
                    &step.formula,
                    *samples,
                    &|i| t.instance(i),
                    proven,
                    depth,
                );
                report.id = id.to_string();
                report
            }
            Justification::Trusted { name, bound, budget } => {
                match validate_trusted(&step.formula, *bound, *budget, self.cfg.mode) {
                    TrustedOutcome::Passed(_) => {
                        if !self.trusted.contains(name) {
                            self.trusted.push(name.clone());
                        }
                        StepReport::ok(id)
                    }
                    TrustedOutcome::Refuted(at) => StepReport::fail(
                        id,
                        Verdict::TrustedLemmaRefuted,
                        format!("`{name}` fails at {at}"),
                    ),
                }
            }
        }
    }

    /// Instantiates a premise template at `i = 0 .. samples - 1`, checks each
    /// instance as a sub-proof over the steps proven so far, compares its
    /// last formula with the premise the rule needs, and finally validates
    /// the conclusion.
    #[allow(clippy::too_many_arguments)]
    pub fn check_omega(
        &mut self,
        id: &str,
        rule: OmegaRule,
        conclusion: &Formula,
        samples: usize,
        instances: &dyn Fn(usize) -> Result<Vec<Step>, ScriptError>,
        proven: &Proven,
        depth: usize,
    ) -> StepReport {
        if samples == 0 {
            return StepReport::fail(id, Verdict::OmegaSampleFailed(0), "at least one sample is required");
        }
        if depth >= MAX_DEPTH {
            return StepReport::fail(id, Verdict::SchemaMismatch, "omega rules nested too deeply");
        }
        for i in 0..samples {
            let want = match omega_premise(rule, conclusion, i) {
                Ok(w) => w,
                Err(e) => return StepReport::fail(id, Verdict::SchemaMismatch, format!("{rule}: {e}")),
            };
            let steps = match instances(i) {
                Ok(s) => s,
                Err(e) => return StepReport::fail(id, Verdict::OmegaSampleFailed(i), e.to_string()),
            };
            let mut local = proven.clone();
            for s in &steps {
                let r = self.check_in(s, &mut local, depth + 1);
                if r.verdict != Verdict::Ok {
                    return StepReport::fail(
                        id,
                        Verdict::OmegaSampleFailed(i),
                        format!("instance step {} {}: {}", r.id, r.verdict, r.detail.unwrap_or_default()),
                    );
                }
            }
            match steps.last() {
                Some(last) if equiv(&last.formula, &want) => {}
                Some(last) => {
                    return StepReport::fail(
                        id,
                        Verdict::OmegaSampleFailed(i),
                        format!("instance proves {} instead of {want}", last.formula),
                    )
                }
                None => return StepReport::fail(id, Verdict::OmegaSampleFailed(i), "empty template"),
            }
        }
        match validate_trusted(conclusion, self.cfg.omega_var_bound, self.cfg.omega_budget, self.cfg.mode) {
            TrustedOutcome::Passed(_) => StepReport {
                note: Some(format!("schema-checked (\u{3c9}, {samples} samples)")),
                ..StepReport::ok(id)
            },
            TrustedOutcome::Refuted(at) => {
                StepReport::fail(id, Verdict::OmegaConclusionRefuted, format!("conclusion fails at {at}"))
            }
        }
    }
}

/// Checks every step of `script` in order with the default configuration.
pub fn check_proof(script: &Script) -> CheckReport {
    Checker::new(CheckConfig::default()).check_script(script)
}
