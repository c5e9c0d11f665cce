//! Inference rules. R1, R2, R6, R7 and the derived rules R2', D1 and D2 are
//! checked directly; the omega rules R3, R4 and R5 are reduced to their
//! premise instances, which the script checker samples.

use std::fmt;
use std::str::FromStr;

use crate::syntax::{
    all_program_vars, equiv, free_vars, iterate, term_vars, Formula, Ident, Open, Program, Term,
};

use super::schema::{view, View};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rule {
    /// Modus ponens.
    R1,
    /// `a -> b` gives `[K] a -> [K] b`.
    R2,
    /// `a` and `[K] true` give `[K] a`.
    R2Prime,
    /// Existential introduction in the antecedent.
    R6,
    /// Universal introduction in the consequent.
    R7,
    /// Countdown by exact predecessor steps.
    D1,
    /// Countdown by steps that go below the predecessor.
    D2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OmegaRule {
    R3,
    R4,
    R5,
}

impl FromStr for Rule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "R1" => Rule::R1,
            "R2" => Rule::R2,
            "R2'" | "R2prime" => Rule::R2Prime,
            "R6" => Rule::R6,
            "R7" => Rule::R7,
            "D1" => Rule::D1,
            "D2" => Rule::D2,
            _ => return Err(format!("unknown rule `{s}`")),
        })
    }
}

impl FromStr for OmegaRule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "R3" => OmegaRule::R3,
            "R4" => OmegaRule::R4,
            "R5" => OmegaRule::R5,
            _ => return Err(format!("`{s}` is not an omega rule")),
        })
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rule::R2Prime => f.write_str("R2'"),
            other => write!(f, "{other:?}"),
        }
    }
}

impl fmt::Display for OmegaRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum RuleError {
    #[error("{rule} takes {expected} premise(s), got {found}")]
    PremiseCount {
        rule: String,
        expected: usize,
        found: usize,
    },
    #[error("{0}")]
    Shape(String),
    #[error("side condition violated: {0}")]
    SideCondition(String),
}

/// Optional data a rule application may name explicitly. Everything here
/// can also be read off the conclusion; when given it must agree.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Extras {
    pub program: Option<Program>,
    pub var: Option<Ident>,
}

fn shape(msg: impl Into<String>) -> RuleError {
    RuleError::Shape(msg.into())
}

fn implication(f: &Formula, role: &str) -> Result<(Formula, Formula), RuleError> {
    match view(f) {
        View::Implies(a, b) => Ok((a, b)),
        _ => Err(shape(format!("{role} {f} is not an implication"))),
    }
}

fn same(a: &Formula, b: &Formula, what: &str) -> Result<(), RuleError> {
    if equiv(a, b) {
        Ok(())
    } else {
        Err(shape(format!("{what}: {a} differs from {b}")))
    }
}

fn agree_program(extras: &Extras, k: &Program) -> Result<(), RuleError> {
    match &extras.program {
        Some(given) if given != k => Err(shape(format!("K is {k}, not {given}"))),
        _ => Ok(()),
    }
}

fn agree_var(extras: &Extras, x: &str) -> Result<(), RuleError> {
    match &extras.var {
        Some(given) if given != x => Err(shape(format!("quantified variable is {x}, not {given}"))),
        _ => Ok(()),
    }
}

fn arity(rule: Rule, premises: &[Formula], n: usize) -> Result<(), RuleError> {
    if premises.len() == n {
        Ok(())
    } else {
        Err(RuleError::PremiseCount {
            rule: rule.to_string(),
            expected: n,
            found: premises.len(),
        })
    }
}

/// Checks one application of a finitary rule. Premises come in the rule's
/// order.
pub fn check_rule(rule: Rule, premises: &[Formula], conclusion: &Formula, extras: &Extras) -> Result<(), RuleError> {
    match rule {
        Rule::R1 => {
            arity(rule, premises, 2)?;
            let (a, b) = implication(&premises[1], "second premise")?;
            same(&premises[0], &a, "first premise")?;
            same(&b, conclusion, "conclusion")
        }
        Rule::R2 => {
            arity(rule, premises, 1)?;
            let (a, b) = implication(&premises[0], "premise")?;
            let (ka, kb) = implication(conclusion, "conclusion")?;
            let (View::Box(k1, a1), View::Box(k2, b1)) = (view(&ka), view(&kb)) else {
                return Err(shape("conclusion is not ([K] a -> [K] b)"));
            };
            if k1 != k2 {
                return Err(shape(format!("{k1} and {k2} differ")));
            }
            agree_program(extras, &k1)?;
            same(&a1, &a, "antecedent")?;
            same(&b1, &b, "consequent")
        }
        Rule::R2Prime => {
            arity(rule, premises, 2)?;
            let View::Box(k, a) = view(conclusion) else {
                return Err(shape("conclusion is not [K] a"));
            };
            agree_program(extras, &k)?;
            same(&premises[0], &a, "first premise")?;
            same(
                &premises[1],
                &Formula::boxed(k, Formula::Open(Open::True)),
                "second premise",
            )
        }
        Rule::R6 => {
            arity(rule, premises, 1)?;
            let (a, b) = implication(&premises[0], "premise")?;
            let (ea, b1) = implication(conclusion, "conclusion")?;
            let View::Exists(x, a1) = view(&ea) else {
                return Err(shape("conclusion is not (exists x . a -> b)"));
            };
            agree_var(extras, &x)?;
            same(&a1, &a, "antecedent")?;
            same(&b1, &b, "consequent")?;
            if free_vars(&b).contains(&x) {
                return Err(RuleError::SideCondition(format!("{x} is free in {b}")));
            }
            Ok(())
        }
        Rule::R7 => {
            arity(rule, premises, 1)?;
            let (b, a) = implication(&premises[0], "premise")?;
            let (b1, fa) = implication(conclusion, "conclusion")?;
            let View::Forall(x, a1) = view(&fa) else {
                return Err(shape("conclusion is not (b -> forall x . a)"));
            };
            agree_var(extras, &x)?;
            same(&a1, &a, "consequent")?;
            same(&b1, &b, "antecedent")?;
            if free_vars(&b).contains(&x) {
                return Err(RuleError::SideCondition(format!("{x} is free in {b}")));
            }
            Ok(())
        }
        Rule::D1 | Rule::D2 => {
            arity(rule, premises, 1)?;
            countdown(rule, &premises[0], conclusion, extras)
        }
    }
}

/// `((x = t) -> [M] (x = P(t)))` for D1, `((x = t) -> [M] (x < P(t)))` for
/// D2, concluding `[while !(x = 0) do M od] (x = 0)`; no variable of `t`
/// may occur in `M`.
fn countdown(rule: Rule, premise: &Formula, conclusion: &Formula, extras: &Extras) -> Result<(), RuleError> {
    let bad_conclusion = || shape("conclusion is not [while !(x = 0) do M od] (x = 0)");
    let Formula::Box(Program::While(guard, m), post) = conclusion else {
        return Err(bad_conclusion());
    };
    let x = match (guard, post.as_open()) {
        (Open::Not(g), Some(Open::Eq(Term::Var(x), Term::Zero)))
            if **g == Open::Eq(Term::var(x.clone()), Term::Zero) =>
        {
            x.clone()
        }
        _ => return Err(bad_conclusion()),
    };
    agree_program(extras, m)?;
    let (lhs, rhs) = implication(premise, "premise")?;
    let tau = match lhs.as_open() {
        Some(Open::Eq(Term::Var(y), t)) if *y == x => t.clone(),
        _ => return Err(shape(format!("premise antecedent is not ({x} = t)"))),
    };
    let View::Box(m1, after) = view(&rhs) else {
        return Err(shape("premise consequent is not [M] ..."));
    };
    if m1 != **m {
        return Err(shape(format!("premise program {m1} differs from {m}")));
    }
    let lhs_term = Term::var(x.clone());
    let want = match rule {
        Rule::D1 => Open::Eq(lhs_term, Term::pred(tau.clone())),
        _ => Open::Less(lhs_term, Term::pred(tau.clone())),
    };
    if after.as_open() != Some(&want) {
        return Err(shape(format!("premise consequent should end in {want}")));
    }
    let clash: Vec<_> = term_vars(&tau).intersection(&all_program_vars(m)).cloned().collect();
    if !clash.is_empty() {
        return Err(RuleError::SideCondition(format!(
            "{} occur both in {tau} and in M",
            clash.join(", ")
        )));
    }
    Ok(())
}

fn prefixed(prefix: &Option<Program>, f: Formula) -> Formula {
    match prefix {
        Some(s) => Formula::boxed(s.clone(), f),
        None => f,
    }
}

/// Splits an optional leading assignment sequence `[s]` off `f`.
fn strip_prefix(f: &Formula) -> (Option<Program>, Formula) {
    if let View::Box(s, rest) = view(f) {
        if s.is_assignment_sequence() {
            return (Some(s), rest);
        }
    }
    (None, f.clone())
}

/// The `i`-th premise an omega rule needs for `conclusion`:
/// R3 `[s] (if g then K fi)^i (!g & a) -> b` for `[s] [while g do K od] a -> b`,
/// R4 `[s] K^i a -> b` for `[s] U[K] a -> b`,
/// R5 `a -> [s] K^i b` for `a -> [s] I[K] b`.
/// The prefix `[s]` is optional.
pub fn omega_premise(rule: OmegaRule, conclusion: &Formula, i: usize) -> Result<Formula, RuleError> {
    let (lhs, rhs) = implication(conclusion, "conclusion")?;
    match rule {
        OmegaRule::R3 => {
            let (prefix, body) = match view(&lhs) {
                View::Box(Program::Seq(s, w), a) if s.is_assignment_sequence() => {
                    (Some(*s), Formula::boxed(*w, a))
                }
                _ => strip_prefix(&lhs),
            };
            let View::Box(Program::While(g, k), a) = view(&body) else {
                return Err(shape("antecedent is not [s] [while g do K od] a"));
            };
            let step = Program::if_then(g.clone(), *k);
            let exit = Formula::and(Formula::Open(Open::not(g)), a);
            Ok(Formula::implies(prefixed(&prefix, iterate(&step, i, &exit)), rhs))
        }
        OmegaRule::R4 => {
            let (prefix, body) = strip_prefix(&lhs);
            let View::Union(k, a) = view(&body) else {
                return Err(shape("antecedent is not [s] U[K] a"));
            };
            Ok(Formula::implies(prefixed(&prefix, iterate(&k, i, &a)), rhs))
        }
        OmegaRule::R5 => {
            let (prefix, body) = strip_prefix(&rhs);
            let View::Inter(k, b) = view(&body) else {
                return Err(shape("consequent is not [s] I[K] b"));
            };
            Ok(Formula::implies(lhs, prefixed(&prefix, iterate(&k, i, &b))))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_formula, parse_program};

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn none() -> Extras {
        Extras::default()
    }

    #[test]
    fn modus_ponens() {
        let ps = [f("(0 = 0)"), f("((0 = 0) -> (0 < s(0)))")];
        assert!(check_rule(Rule::R1, &ps, &f("(0 < s(0))"), &none()).is_ok());
        let swapped = [ps[1].clone(), ps[0].clone()];
        assert!(check_rule(Rule::R1, &swapped, &f("(0 < s(0))"), &none()).is_err());
        assert!(matches!(
            check_rule(Rule::R1, &ps[..1], &f("(0 < s(0))"), &none()),
            Err(RuleError::PremiseCount { .. })
        ));
    }

    #[test]
    fn existential_introduction_needs_x_bound() {
        let r = check_rule(
            Rule::R6,
            &[f("((x = 0) -> (x = 0))")],
            &f("(exists x . (x = 0) -> (x = 0))"),
            &none(),
        );
        assert!(matches!(r, Err(RuleError::SideCondition(_))));
        let r = check_rule(
            Rule::R6,
            &[f("((x = 0) -> (0 = 0))")],
            &f("(exists x . (x = 0) -> (0 = 0))"),
            &none(),
        );
        assert!(r.is_ok());
    }

    #[test]
    fn universal_introduction() {
        let r = check_rule(
            Rule::R7,
            &[f("((y = y) -> (x = x))")],
            &f("((y = y) -> forall x . (x = x))"),
            &none(),
        );
        assert!(r.is_ok());
    }

    #[test]
    fn program_monotonicity() {
        let extras = Extras {
            program: Some(parse_program("y := 0").unwrap()),
            var: None,
        };
        let r = check_rule(
            Rule::R2,
            &[f("((x = y) -> (y = x))")],
            &f("([y := 0] (x = y) -> [y := 0] (y = x))"),
            &extras,
        );
        assert!(r.is_ok());
        let wrong = Extras {
            program: Some(parse_program("y := s(0)").unwrap()),
            var: None,
        };
        assert!(check_rule(
            Rule::R2,
            &[f("((x = y) -> (y = x))")],
            &f("([y := 0] (x = y) -> [y := 0] (y = x))"),
            &wrong,
        )
        .is_err());
    }

    #[test]
    fn necessitation_under_a_halting_program() {
        let r = check_rule(
            Rule::R2Prime,
            &[f("(x = x)"), f("[x := 0] true")],
            &f("[x := 0] (x = x)"),
            &none(),
        );
        assert!(r.is_ok());
    }

    #[test]
    fn countdown_rules() {
        let concl = f("[while !(x = 0) do x := P(x) od] (x = 0)");
        let prem = f("((x = k) -> [x := P(x)] (x = P(k)))");
        assert!(check_rule(Rule::D1, &[prem], &concl, &none()).is_ok());
        let clash = f("((x = (k + x)) -> [x := P(x)] (x = P((k + x))))");
        assert!(matches!(
            check_rule(Rule::D1, &[clash], &concl, &none()),
            Err(RuleError::SideCondition(_))
        ));
        let concl2 = f("[while !(x = 0) do x := P(P(x)) od] (x = 0)");
        let prem2 = f("((x = k) -> [x := P(P(x))] (x < P(k)))");
        assert!(check_rule(Rule::D2, &[prem2], &concl2, &none()).is_ok());
    }

    #[test]
    fn omega_premises() {
        let c = f("([y := 0] U[y := s(y)] (x = y) -> (0 = 0))");
        assert_eq!(
            omega_premise(OmegaRule::R4, &c, 2).unwrap(),
            f("([y := 0] [y := s(y)] [y := s(y)] (x = y) -> (0 = 0))")
        );
        let c = f("((0 = 0) -> I[x := s(x)] (0 < s(x)))");
        assert_eq!(
            omega_premise(OmegaRule::R5, &c, 1).unwrap(),
            f("((0 = 0) -> [x := s(x)] (0 < s(x)))")
        );
        let c = f("([while (x < y) do x := s(x) od] (x = y) -> (0 = 0))");
        assert_eq!(
            omega_premise(OmegaRule::R3, &c, 1).unwrap(),
            f("([if (x < y) then x := s(x) fi] (!(x < y) & (x = y)) -> (0 = 0))")
        );
    }
}
