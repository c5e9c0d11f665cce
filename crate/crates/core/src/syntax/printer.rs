use std::fmt;

use super::{Formula, Open, Program, Term};

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(x) => f.write_str(x),
            Term::Zero => f.write_str("0"),
            Term::Succ(t) => write!(f, "s({t})"),
            Term::Pred(t) => write!(f, "P({t})"),
            Term::Add(l, r) => write!(f, "({l} + {r})"),
            Term::Mul(l, r) => write!(f, "({l} * {r})"),
            Term::Monus(l, r) => write!(f, "({l} -. {r})"),
        }
    }
}

impl fmt::Display for Open {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Open::Eq(l, r) => write!(f, "({l} = {r})"),
            Open::Less(l, r) => write!(f, "({l} < {r})"),
            Open::True => f.write_str("true"),
            Open::False => f.write_str("false"),
            Open::And(l, r) => write!(f, "({l} & {r})"),
            Open::Or(l, r) => write!(f, "({l} | {r})"),
            Open::Implies(l, r) => write!(f, "({l} -> {r})"),
            Open::Not(g) => write!(f, "!{g}"),
            Open::BoolVar(q) => write!(f, "?{q}"),
        }
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Program::Assign(x, t) => write!(f, "{x} := {t}"),
            Program::BoolAssign(q, g) => write!(f, "?{q} := {g}"),
            Program::Skip => f.write_str("skip"),
            Program::Seq(first, rest) => {
                write!(f, "{{{first}")?;
                let mut tail = rest.as_ref();
                while let Program::Seq(a, b) = tail {
                    write!(f, "; {a}")?;
                    tail = b;
                }
                write!(f, "; {tail}}}")
            }
            Program::If(g, k, m) if **m == Program::Skip => write!(f, "if {g} then {k} fi"),
            Program::If(g, k, m) => write!(f, "if {g} then {k} else {m} fi"),
            Program::While(g, k) => write!(f, "while {g} do {k} od"),
        }
    }
}

fn modal_sep(inner: &Formula) -> &'static str {
    match inner {
        Formula::Box(..) | Formula::IterUnion(..) | Formula::IterInter(..) => "",
        _ => " ",
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Open(g) => g.fmt(f),
            Formula::Box(k, a) => write!(f, "[{k}]{}{a}", modal_sep(a)),
            Formula::IterUnion(k, a) => write!(f, "U[{k}]{}{a}", modal_sep(a)),
            Formula::IterInter(k, a) => write!(f, "I[{k}]{}{a}", modal_sep(a)),
            Formula::Forall(x, a) => write!(f, "forall {x} . {a}"),
            Formula::Exists(x, a) => write!(f, "exists {x} . {a}"),
            Formula::And(l, r) => write!(f, "({l} & {r})"),
            Formula::Or(l, r) => write!(f, "({l} | {r})"),
            Formula::Implies(l, r) => write!(f, "({l} -> {r})"),
            Formula::Iff(l, r) => write!(f, "({l} <-> {r})"),
            Formula::Not(a) => write!(f, "!{a}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{iterate, parse_formula, parse_program};

    #[test]
    fn atoms() {
        assert_eq!(Term::succ(Term::Zero).to_string(), "s(0)");
        assert_eq!(Term::monus(Term::var("n"), Term::var("m")).to_string(), "(n -. m)");
    }

    #[test]
    fn sequences_print_flat_when_right_nested() {
        let k = parse_program("{x := 0; {y := 0; z := 0}}").unwrap();
        assert_eq!(k.to_string(), "{x := 0; y := 0; z := 0}");
        let left = Program::seq(
            Program::seq(Program::Skip, Program::Skip),
            Program::Skip,
        );
        assert_eq!(left.to_string(), "{{skip; skip}; skip}");
        assert_eq!(parse_program(&left.to_string()).unwrap(), left);
    }

    #[test]
    fn stacked_boxes_have_no_gap() {
        let alpha = parse_formula("(x = y)").unwrap();
        let f = iterate(&Program::Skip, 3, &alpha);
        assert_eq!(f.to_string(), "[skip][skip][skip] (x = y)");
    }

    #[test]
    fn halting_formula_text_is_stable() {
        let text = "forall n . forall m . ((!(n = 0) & !(m = 0)) -> [while !(n = m) do if (m < n) then n := (n -. m) else m := (m -. n) fi od] (n = m))";
        let f = parse_formula(text).unwrap();
        assert_eq!(f.to_string(), text);
    }
}
