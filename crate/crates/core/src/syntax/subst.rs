use std::collections::BTreeSet;

use super::vars::{assigned_vars, free_bool_vars, free_vars, open_vars, term_vars};
use super::{Formula, Ident, Open, Program, Term};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("`{name}` is used as a {found} variable but substituted with a {expected}")]
pub struct SortError {
    pub name: Ident,
    pub found: &'static str,
    pub expected: &'static str,
}

/// What gets replaced: an individual variable by a term, or a boolean
/// variable by an open formula.
enum Repl<'a> {
    Ind(&'a str, &'a Term),
    Bool(&'a str, &'a Open),
}

impl Repl<'_> {
    fn target(&self) -> &str {
        match self {
            Repl::Ind(x, _) | Repl::Bool(x, _) => x,
        }
    }

    /// Individual variables of the replacement; these must not be captured.
    fn replacement_vars(&self) -> BTreeSet<Ident> {
        match self {
            Repl::Ind(_, t) => term_vars(t),
            Repl::Bool(_, g) => open_vars(g),
        }
    }

    fn occurs_free(&self, f: &Formula) -> bool {
        match self {
            Repl::Ind(x, _) => free_vars(f).contains(*x),
            Repl::Bool(q, _) => free_bool_vars(f).contains(*q),
        }
    }

    fn term(&self, t: &Term) -> Term {
        match self {
            Repl::Ind(x, tau) => subst_term(t, x, tau),
            Repl::Bool(..) => t.clone(),
        }
    }

    fn open(&self, g: &Open) -> Open {
        match g {
            Open::Eq(l, r) => Open::Eq(self.term(l), self.term(r)),
            Open::Less(l, r) => Open::Less(self.term(l), self.term(r)),
            Open::True | Open::False => g.clone(),
            Open::And(l, r) => Open::and(self.open(l), self.open(r)),
            Open::Or(l, r) => Open::or(self.open(l), self.open(r)),
            Open::Implies(l, r) => Open::implies(self.open(l), self.open(r)),
            Open::Not(a) => Open::not(self.open(a)),
            Open::BoolVar(q) => match self {
                Repl::Bool(p, h) if q == p => (*h).clone(),
                _ => g.clone(),
            },
        }
    }

    /// Replacement inside a program that never writes the target nor any
    /// variable of the replacement.
    fn program(&self, k: &Program) -> Program {
        match k {
            Program::Assign(x, t) => Program::Assign(x.clone(), self.term(t)),
            Program::BoolAssign(q, g) => Program::BoolAssign(q.clone(), self.open(g)),
            Program::Seq(a, b) => Program::seq(self.program(a), self.program(b)),
            Program::If(g, a, b) => Program::if_then_else(self.open(g), self.program(a), self.program(b)),
            Program::While(g, b) => Program::while_do(self.open(g), self.program(b)),
            Program::Skip => Program::Skip,
        }
    }

    fn can_push_into(&self, k: &Program) -> bool {
        let written = assigned_vars(k);
        !written.contains(self.target()) && self.replacement_vars().is_disjoint(&written)
    }

    fn as_assignment(&self) -> Program {
        match self {
            Repl::Ind(x, t) => Program::assign(*x, (*t).clone()),
            Repl::Bool(q, g) => Program::bool_assign(*q, (*g).clone()),
        }
    }

    fn formula(&self, f: &Formula) -> Formula {
        match f {
            Formula::Open(g) => Formula::Open(self.open(g)),
            Formula::Box(k, a) | Formula::IterUnion(k, a) | Formula::IterInter(k, a) => {
                if !self.occurs_free(f) {
                    return f.clone();
                }
                if !self.can_push_into(k) {
                    // The program overwrites something the replacement
                    // depends on; keep the substitution as an explicit
                    // assignment in front, which has the same meaning.
                    return Formula::boxed(self.as_assignment(), f.clone());
                }
                let k = self.program(k);
                let a = self.formula(a);
                match f {
                    Formula::Box(..) => Formula::boxed(k, a),
                    Formula::IterUnion(..) => Formula::iter_union(k, a),
                    _ => Formula::iter_inter(k, a),
                }
            }
            Formula::Forall(y, a) | Formula::Exists(y, a) => {
                let universal = matches!(f, Formula::Forall(..));
                let rebuild = |y: Ident, a: Formula| {
                    if universal {
                        Formula::forall(y, a)
                    } else {
                        Formula::exists(y, a)
                    }
                };
                if matches!(self, Repl::Ind(x, _) if x == y) || !self.occurs_free(a) {
                    return f.clone();
                }
                let avoid_capture = self.replacement_vars();
                if avoid_capture.contains(y) {
                    let mut avoid = avoid_capture;
                    avoid.extend(all_vars(a));
                    avoid.insert(self.target().to_string());
                    let fresh = fresh_name(y, &avoid);
                    let renamed = rename_all(a, y, &fresh);
                    rebuild(fresh, self.formula(&renamed))
                } else {
                    rebuild(y.clone(), self.formula(a))
                }
            }
            Formula::And(l, r) => Formula::and(self.formula(l), self.formula(r)),
            Formula::Or(l, r) => Formula::or(self.formula(l), self.formula(r)),
            Formula::Implies(l, r) => Formula::implies(self.formula(l), self.formula(r)),
            Formula::Iff(l, r) => Formula::iff(self.formula(l), self.formula(r)),
            Formula::Not(a) => Formula::not(self.formula(a)),
        }
    }
}

pub(crate) fn subst_term(t: &Term, x: &str, tau: &Term) -> Term {
    match t {
        Term::Var(y) if y == x => tau.clone(),
        Term::Var(_) | Term::Zero => t.clone(),
        Term::Succ(a) => Term::succ(subst_term(a, x, tau)),
        Term::Pred(a) => Term::pred(subst_term(a, x, tau)),
        Term::Add(l, r) => Term::add(subst_term(l, x, tau), subst_term(r, x, tau)),
        Term::Mul(l, r) => Term::mul(subst_term(l, x, tau), subst_term(r, x, tau)),
        Term::Monus(l, r) => Term::monus(subst_term(l, x, tau), subst_term(r, x, tau)),
    }
}

/// `g(x/tau)` for an open formula. Open formulas bind nothing.
pub fn substitute_open(g: &Open, x: &str, tau: &Term) -> Open {
    Repl::Ind(x, tau).open(g)
}

/// `f(x/tau)`: replace every free occurrence of `x` by `tau`, renaming bound
/// variables that would capture a variable of `tau`.
pub fn substitute(f: &Formula, x: &str, tau: &Term) -> Result<Formula, SortError> {
    if free_bool_vars(f).contains(x) {
        return Err(SortError {
            name: x.to_string(),
            found: "boolean",
            expected: "term",
        });
    }
    if matches!(tau, Term::Var(y) if y == x) {
        return Ok(f.clone());
    }
    Ok(Repl::Ind(x, tau).formula(f))
}

/// `f(q/g)` for a boolean variable `q`.
pub fn substitute_bool(f: &Formula, q: &str, g: &Open) -> Result<Formula, SortError> {
    if all_vars(f).contains(q) {
        return Err(SortError {
            name: q.to_string(),
            found: "individual",
            expected: "open formula",
        });
    }
    if matches!(g, Open::BoolVar(p) if p == q) {
        return Ok(f.clone());
    }
    Ok(Repl::Bool(q, g).formula(f))
}

/// Every individual identifier in `f`, bound or free, including binders.
fn all_vars(f: &Formula) -> BTreeSet<Ident> {
    let mut out = free_vars(f);
    fn binders(f: &Formula, out: &mut BTreeSet<Ident>) {
        match f {
            Formula::Open(_) => {}
            Formula::Box(_, a) | Formula::IterUnion(_, a) | Formula::IterInter(_, a) | Formula::Not(a) => {
                binders(a, out)
            }
            Formula::Forall(x, a) | Formula::Exists(x, a) => {
                out.insert(x.clone());
                binders(a, out);
            }
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) | Formula::Iff(l, r) => {
                binders(l, out);
                binders(r, out);
            }
        }
    }
    binders(f, &mut out);
    out
}

/// Smallest `base'`, `base''`, ... not in `avoid`.
pub fn fresh_name(base: &str, avoid: &BTreeSet<Ident>) -> Ident {
    let mut name = format!("{base}'");
    while avoid.contains(&name) {
        name.push('\'');
    }
    name
}

/// Renames every occurrence of the individual variable `from`, binders and
/// assignment targets included.
pub fn rename_all(f: &Formula, from: &str, to: &str) -> Formula {
    let name = |x: &Ident| if x == from { to.to_string() } else { x.clone() };
    fn program(k: &Program, from: &str, to: &str) -> Program {
        let t = |t: &Term| subst_term(t, from, &Term::var(to));
        let g = |g: &Open| substitute_open(g, from, &Term::var(to));
        match k {
            Program::Assign(x, e) => {
                Program::Assign(if x == from { to.to_string() } else { x.clone() }, t(e))
            }
            Program::BoolAssign(q, h) => Program::BoolAssign(q.clone(), g(h)),
            Program::Seq(a, b) => Program::seq(program(a, from, to), program(b, from, to)),
            Program::If(h, a, b) => {
                Program::if_then_else(g(h), program(a, from, to), program(b, from, to))
            }
            Program::While(h, b) => Program::while_do(g(h), program(b, from, to)),
            Program::Skip => Program::Skip,
        }
    }
    match f {
        Formula::Open(g) => Formula::Open(substitute_open(g, from, &Term::var(to))),
        Formula::Box(k, a) => Formula::boxed(program(k, from, to), rename_all(a, from, to)),
        Formula::IterUnion(k, a) => Formula::iter_union(program(k, from, to), rename_all(a, from, to)),
        Formula::IterInter(k, a) => Formula::iter_inter(program(k, from, to), rename_all(a, from, to)),
        Formula::Forall(x, a) => Formula::forall(name(x), rename_all(a, from, to)),
        Formula::Exists(x, a) => Formula::exists(name(x), rename_all(a, from, to)),
        Formula::And(l, r) => Formula::and(rename_all(l, from, to), rename_all(r, from, to)),
        Formula::Or(l, r) => Formula::or(rename_all(l, from, to), rename_all(r, from, to)),
        Formula::Implies(l, r) => Formula::implies(rename_all(l, from, to), rename_all(r, from, to)),
        Formula::Iff(l, r) => Formula::iff(rename_all(l, from, to), rename_all(r, from, to)),
        Formula::Not(a) => Formula::not(rename_all(a, from, to)),
    }
}

/// `K^i f`: `i` nested boxes of `k` around `f`.
pub fn iterate(k: &Program, i: usize, f: &Formula) -> Formula {
    (0..i).fold(f.clone(), |acc, _| Formula::boxed(k.clone(), acc))
}

/// Replaces `a <-> b` by `((a -> b) & (b -> a))` throughout.
pub fn lift(f: &Formula) -> Formula {
    match f {
        Formula::Open(_) => f.clone(),
        Formula::Box(k, a) => Formula::boxed(k.clone(), lift(a)),
        Formula::IterUnion(k, a) => Formula::iter_union(k.clone(), lift(a)),
        Formula::IterInter(k, a) => Formula::iter_inter(k.clone(), lift(a)),
        Formula::Forall(x, a) => Formula::forall(x.clone(), lift(a)),
        Formula::Exists(x, a) => Formula::exists(x.clone(), lift(a)),
        Formula::And(l, r) => Formula::and(lift(l), lift(r)),
        Formula::Or(l, r) => Formula::or(lift(l), lift(r)),
        Formula::Implies(l, r) => Formula::implies(lift(l), lift(r)),
        Formula::Iff(l, r) => {
            let (l, r) = (lift(l), lift(r));
            Formula::and(
                Formula::implies(l.clone(), r.clone()),
                Formula::implies(r, l),
            )
        }
        Formula::Not(a) => Formula::not(lift(a)),
    }
}

/// Equality up to consistent renaming of quantified variables.
pub fn alpha_eq(f: &Formula, g: &Formula) -> bool {
    Alpha::default().formula(f, g)
}

/// Alpha-equivalence after expanding `<->`.
pub fn equiv(f: &Formula, g: &Formula) -> bool {
    alpha_eq(&lift(f), &lift(g))
}

#[derive(Default)]
struct Alpha {
    left: Vec<Ident>,
    right: Vec<Ident>,
}

impl Alpha {
    fn var(&self, a: &str, b: &str) -> bool {
        let i = self.left.iter().rposition(|x| x == a);
        let j = self.right.iter().rposition(|x| x == b);
        match (i, j) {
            (None, None) => a == b,
            (i, j) => i == j,
        }
    }

    fn term(&self, s: &Term, t: &Term) -> bool {
        match (s, t) {
            (Term::Var(a), Term::Var(b)) => self.var(a, b),
            (Term::Zero, Term::Zero) => true,
            (Term::Succ(a), Term::Succ(b)) | (Term::Pred(a), Term::Pred(b)) => self.term(a, b),
            (Term::Add(a, b), Term::Add(c, d))
            | (Term::Mul(a, b), Term::Mul(c, d))
            | (Term::Monus(a, b), Term::Monus(c, d)) => self.term(a, c) && self.term(b, d),
            _ => false,
        }
    }

    fn open(&self, g: &Open, h: &Open) -> bool {
        match (g, h) {
            (Open::Eq(a, b), Open::Eq(c, d)) | (Open::Less(a, b), Open::Less(c, d)) => {
                self.term(a, c) && self.term(b, d)
            }
            (Open::True, Open::True) | (Open::False, Open::False) => true,
            (Open::And(a, b), Open::And(c, d))
            | (Open::Or(a, b), Open::Or(c, d))
            | (Open::Implies(a, b), Open::Implies(c, d)) => self.open(a, c) && self.open(b, d),
            (Open::Not(a), Open::Not(b)) => self.open(a, b),
            (Open::BoolVar(p), Open::BoolVar(q)) => p == q,
            _ => false,
        }
    }

    fn program(&self, k: &Program, m: &Program) -> bool {
        match (k, m) {
            (Program::Assign(x, s), Program::Assign(y, t)) => self.var(x, y) && self.term(s, t),
            (Program::BoolAssign(p, g), Program::BoolAssign(q, h)) => p == q && self.open(g, h),
            (Program::Seq(a, b), Program::Seq(c, d)) => self.program(a, c) && self.program(b, d),
            (Program::If(g, a, b), Program::If(h, c, d)) => {
                self.open(g, h) && self.program(a, c) && self.program(b, d)
            }
            (Program::While(g, a), Program::While(h, b)) => self.open(g, h) && self.program(a, b),
            (Program::Skip, Program::Skip) => true,
            _ => false,
        }
    }

    fn formula(&mut self, f: &Formula, g: &Formula) -> bool {
        match (f, g) {
            (Formula::Open(a), Formula::Open(b)) => self.open(a, b),
            (Formula::Box(k, a), Formula::Box(m, b))
            | (Formula::IterUnion(k, a), Formula::IterUnion(m, b))
            | (Formula::IterInter(k, a), Formula::IterInter(m, b)) => {
                self.program(k, m) && self.formula(a, b)
            }
            (Formula::Forall(x, a), Formula::Forall(y, b))
            | (Formula::Exists(x, a), Formula::Exists(y, b)) => {
                self.left.push(x.clone());
                self.right.push(y.clone());
                let same = self.formula(a, b);
                self.left.pop();
                self.right.pop();
                same
            }
            (Formula::And(a, b), Formula::And(c, d))
            | (Formula::Or(a, b), Formula::Or(c, d))
            | (Formula::Implies(a, b), Formula::Implies(c, d))
            | (Formula::Iff(a, b), Formula::Iff(c, d)) => self.formula(a, c) && self.formula(b, d),
            (Formula::Not(a), Formula::Not(b)) => self.formula(a, b),
            _ => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_formula, parse_program, parse_term};

    fn f(text: &str) -> Formula {
        parse_formula(text).unwrap()
    }

    fn t(text: &str) -> Term {
        parse_term(text).unwrap()
    }

    #[test]
    fn replaces_free_occurrences() {
        assert_eq!(substitute(&f("(x = y)"), "x", &Term::Zero).unwrap(), f("(0 = y)"));
        assert_eq!(
            substitute(&f("(x < s(x))"), "x", &t("s(x)")).unwrap(),
            f("(s(x) < s(s(x)))")
        );
    }

    #[test]
    fn bound_occurrences_are_left_alone() {
        let g = f("(forall x . (x = 0) & (x = y))");
        assert_eq!(substitute(&g, "x", &Term::Zero).unwrap(), f("(forall x . (x = 0) & (0 = y))"));
    }

    #[test]
    fn capture_is_avoided_by_priming() {
        let g = substitute(&f("exists y . (x = y)"), "x", &t("s(y)")).unwrap();
        assert_eq!(g, f("exists y' . (s(y) = y')"));
        let h = substitute(&f("exists y . (x = (y + y'))"), "x", &t("s(y)")).unwrap();
        assert_eq!(h, f("exists y'' . (s(y) = (y'' + y'))"));
    }

    #[test]
    fn pushes_through_programs_that_leave_the_variable_alone() {
        let g = f("[y := s(y)] (x = y)");
        assert_eq!(substitute(&g, "x", &Term::Zero).unwrap(), f("[y := s(y)] (0 = y)"));
    }

    #[test]
    fn wraps_when_the_program_writes_the_variable() {
        let g = f("[x := s(x)] (x = y)");
        assert_eq!(
            substitute(&g, "x", &Term::Zero).unwrap(),
            f("[x := 0][x := s(x)] (x = y)")
        );
    }

    #[test]
    fn sort_errors() {
        assert!(substitute(&f("?x"), "x", &Term::Zero).is_err());
        assert!(substitute_bool(&f("(x = 0)"), "x", &Open::True).is_err());
        assert_eq!(
            substitute_bool(&f("(?q | (x = 0))"), "q", &Open::False).unwrap(),
            f("(false | (x = 0))")
        );
    }

    #[test]
    fn identity_substitution() {
        let g = f("forall y . [while !(y = x) do y := s(y) od] (x = y)");
        assert_eq!(substitute(&g, "x", &Term::var("x")).unwrap(), g);
    }

    #[test]
    fn iterate_nests_boxes() {
        let k = parse_program("x := s(x)").unwrap();
        let alpha = f("(x = y)");
        assert_eq!(iterate(&k, 0, &alpha), alpha);
        assert_eq!(iterate(&k, 2, &alpha), f("[x := s(x)][x := s(x)] (x = y)"));
    }

    #[test]
    fn alpha_equivalence_tracks_binders() {
        assert!(alpha_eq(&f("forall x . (x = z)"), &f("forall y . (y = z)")));
        assert!(!alpha_eq(&f("forall x . (x = y)"), &f("forall y . (y = y)")));
        assert!(alpha_eq(
            &f("exists y . [y := 0] (x = y)"),
            &f("exists w . [w := 0] (x = w)")
        ));
        assert!(!alpha_eq(&f("(x = z)"), &f("(y = z)")));
    }

    #[test]
    fn lifting_expands_iff() {
        let g = f("((x = 0) <-> [skip] (x = 0))");
        assert!(equiv(
            &g,
            &f("(((x = 0) -> [skip] (x = 0)) & ([skip] (x = 0) -> (x = 0)))")
        ));
    }
}
