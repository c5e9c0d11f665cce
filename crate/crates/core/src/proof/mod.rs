//! Proof-script checking for the program calculus: axiom schemas Ax1 to
//! Ax23, the inference rules, the theories Th0 to Th3 and bounded screening
//! of trusted lemmas.

mod check;
pub mod corpus;
mod rules;
mod schema;
mod script;
mod theory;

pub use check::{
    check_proof, validate_trusted, CheckConfig, CheckReport, Checker, Proven, StepReport, TrustedOutcome,
    Verdict,
};
pub use rules::{check_rule, omega_premise, Extras, OmegaRule, Rule, RuleError};
pub use schema::{axioms, match_schema, match_schema_with, schema, Binding, Bindings, MatchError, MetaSort, Schema};
pub use script::{expand_index, parse_script, Justification, Script, ScriptError, Step, Template};
pub use theory::{induction, theory_axiom, Theory, TheoryError};
