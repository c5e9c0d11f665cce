//! Axiom schemas of the program calculus as sorted patterns, and a syntactic
//! matcher for them.

use std::collections::BTreeMap;

use crate::syntax::{
    alpha_eq, all_program_vars, free_vars, lift, substitute, substitute_bool, Formula, Ident, Open,
    Program, Term,
};

/// What a metavariable may stand for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MetaSort {
    Formula,
    Open,
    Program,
    Term,
    Var,
    BoolVar,
    AssignSeq,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Binding {
    Formula(Formula),
    Open(Open),
    Program(Program),
    Term(Term),
    Var(Ident),
}

impl std::fmt::Display for Binding {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Binding::Formula(a) => write!(f, "{a}"),
            Binding::Open(g) => write!(f, "{g}"),
            Binding::Program(k) => write!(f, "{k}"),
            Binding::Term(t) => write!(f, "{t}"),
            Binding::Var(x) => write!(f, "{x}"),
        }
    }
}

pub type Bindings = BTreeMap<String, Binding>;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum MatchError {
    #[error("no schema named `{0}`")]
    UnknownSchema(String),
    #[error("does not have the shape of {schema}: {reason}")]
    Mismatch { schema: &'static str, reason: String },
    #[error("{schema}: side condition {condition} fails")]
    SideCondition {
        schema: &'static str,
        condition: &'static str,
    },
    #[error("metavariable `{0}` is not part of this schema")]
    UnknownMeta(String),
}

/// Formula patterns. Connectives match both the open and the algorithmic
/// form of a formula, so `((x = 0) -> (x = 0))` is an instance of `(a -> a)`.
#[derive(Clone, Debug)]
pub enum Pat {
    Meta(&'static str),
    OpenMeta(&'static str),
    True,
    Not(Box<Pat>),
    And(Box<Pat>, Box<Pat>),
    Or(Box<Pat>, Box<Pat>),
    Implies(Box<Pat>, Box<Pat>),
    Box(PPat, Box<Pat>),
    Union(PPat, Box<Pat>),
    Inter(PPat, Box<Pat>),
    Forall(&'static str, Box<Pat>),
    Exists(&'static str, Box<Pat>),
    /// `a(x/t)` for a bound formula metavariable `a`.
    Subst {
        body: &'static str,
        var: &'static str,
        term: &'static str,
    },
    /// `g(q/g2)` for open metavariables `g`, `g2`.
    SubstBool {
        body: &'static str,
        var: &'static str,
        by: &'static str,
    },
}

#[derive(Clone, Debug)]
pub enum PPat {
    Meta(&'static str),
    Assign(&'static str, &'static str),
    BoolAssign(&'static str, &'static str),
    Seq(Box<PPat>, Box<PPat>),
    If(&'static str, Box<PPat>, Box<PPat>),
    While(&'static str, Box<PPat>),
}

pub struct Schema {
    pub id: &'static str,
    pub metas: &'static [(&'static str, MetaSort)],
    pub pattern: Pat,
    pub side: fn(&Bindings) -> Result<(), &'static str>,
}

impl Schema {
    pub fn sort_of(&self, meta: &str) -> Option<MetaSort> {
        self.metas.iter().find(|(m, _)| *m == meta).map(|(_, s)| *s)
    }
}

fn no_side(_: &Bindings) -> Result<(), &'static str> {
    Ok(())
}

mod p {
    use super::{PPat, Pat};

    pub fn m(n: &'static str) -> Pat {
        Pat::Meta(n)
    }
    pub fn g(n: &'static str) -> Pat {
        Pat::OpenMeta(n)
    }
    pub fn not(a: Pat) -> Pat {
        Pat::Not(Box::new(a))
    }
    pub fn and(a: Pat, b: Pat) -> Pat {
        Pat::And(Box::new(a), Box::new(b))
    }
    pub fn or(a: Pat, b: Pat) -> Pat {
        Pat::Or(Box::new(a), Box::new(b))
    }
    pub fn imp(a: Pat, b: Pat) -> Pat {
        Pat::Implies(Box::new(a), Box::new(b))
    }
    /// `<->` as the pair of implications it abbreviates.
    pub fn iff(a: Pat, b: Pat) -> Pat {
        and(imp(a.clone(), b.clone()), imp(b, a))
    }
    pub fn bx(k: PPat, a: Pat) -> Pat {
        Pat::Box(k, Box::new(a))
    }
    pub fn k(n: &'static str) -> PPat {
        PPat::Meta(n)
    }
}

use p::*;

const AB: &[(&str, MetaSort)] = &[("alpha", MetaSort::Formula), ("beta", MetaSort::Formula)];
const ABD: &[(&str, MetaSort)] = &[
    ("alpha", MetaSort::Formula),
    ("beta", MetaSort::Formula),
    ("delta", MetaSort::Formula),
];
const A: &[(&str, MetaSort)] = &[("alpha", MetaSort::Formula)];
const KA: &[(&str, MetaSort)] = &[("K", MetaSort::Program), ("alpha", MetaSort::Formula)];
const KAB: &[(&str, MetaSort)] = &[
    ("K", MetaSort::Program),
    ("alpha", MetaSort::Formula),
    ("beta", MetaSort::Formula),
];

/// `y` must not occur in `K`, and must not be captured: it is either `x`
/// itself or not free in `exists x . alpha`.
fn ax14_side(b: &Bindings) -> Result<(), &'static str> {
    let (Some(Binding::Program(k)), Some(Binding::Var(x)), Some(Binding::Var(y)), Some(Binding::Formula(a))) =
        (b.get("K"), b.get("x"), b.get("y"), b.get("alpha"))
    else {
        return Ok(());
    };
    if all_program_vars(k).contains(y) {
        return Err("y not in V(K)");
    }
    if x != y && free_vars(&Formula::exists(x.clone(), a.clone())).contains(y) {
        return Err("y not free in (exists x . alpha)");
    }
    Ok(())
}

/// The axiom schemas Ax1 to Ax23, in order.
pub fn axioms() -> Vec<Schema> {
    let (a, b, d) = (|| m("alpha"), || m("beta"), || m("delta"));
    let plain = |id, metas, pattern| Schema {
        id,
        metas,
        pattern,
        side: no_side,
    };
    vec![
        plain("Ax1", ABD, imp(imp(a(), b()), imp(imp(b(), d()), imp(a(), d())))),
        plain("Ax2", AB, imp(a(), or(a(), b()))),
        plain("Ax3", AB, imp(b(), or(a(), b()))),
        plain(
            "Ax4",
            ABD,
            imp(imp(a(), d()), imp(imp(b(), d()), imp(or(a(), b()), d()))),
        ),
        plain("Ax5", AB, imp(and(a(), b()), a())),
        plain("Ax6", AB, imp(and(a(), b()), b())),
        plain(
            "Ax7",
            ABD,
            imp(imp(d(), a()), imp(imp(d(), b()), imp(d(), and(a(), b())))),
        ),
        plain("Ax8", ABD, iff(imp(a(), imp(b(), d())), imp(and(a(), b()), d()))),
        plain("Ax9", AB, imp(and(a(), not(a())), b())),
        plain("Ax10", A, imp(imp(a(), and(a(), not(a()))), not(a()))),
        plain("Ax11", A, or(a(), not(a()))),
        plain(
            "Ax12",
            &[("alpha", MetaSort::Formula), ("x", MetaSort::Var), ("tau", MetaSort::Term)],
            imp(
                Pat::Forall("x", Box::new(a())),
                Pat::Subst {
                    body: "alpha",
                    var: "x",
                    term: "tau",
                },
            ),
        ),
        plain(
            "Ax13",
            &[("alpha", MetaSort::Formula), ("x", MetaSort::Var)],
            iff(
                Pat::Forall("x", Box::new(a())),
                not(Pat::Exists("x", Box::new(not(a())))),
            ),
        ),
        Schema {
            id: "Ax14",
            metas: &[
                ("K", MetaSort::Program),
                ("alpha", MetaSort::Formula),
                ("x", MetaSort::Var),
                ("y", MetaSort::Var),
            ],
            pattern: iff(
                bx(k("K"), Pat::Exists("x", Box::new(a()))),
                Pat::Exists(
                    "y",
                    Box::new(bx(
                        k("K"),
                        Pat::Subst {
                            body: "alpha",
                            var: "x",
                            term: "y",
                        },
                    )),
                ),
            ),
            side: ax14_side,
        },
        plain(
            "Ax15",
            KAB,
            iff(bx(k("K"), or(a(), b())), or(bx(k("K"), a()), bx(k("K"), b()))),
        ),
        plain(
            "Ax16",
            KAB,
            iff(bx(k("K"), and(a(), b())), and(bx(k("K"), a()), bx(k("K"), b()))),
        ),
        plain("Ax17", KA, imp(bx(k("K"), not(a())), not(bx(k("K"), a())))),
        plain(
            "Ax18",
            &[
                ("x", MetaSort::Var),
                ("tau", MetaSort::Term),
                ("gamma", MetaSort::Open),
                ("q", MetaSort::BoolVar),
                ("gamma2", MetaSort::Open),
            ],
            and(
                iff(
                    bx(PPat::Assign("x", "tau"), g("gamma")),
                    and(
                        Pat::Subst {
                            body: "gamma",
                            var: "x",
                            term: "tau",
                        },
                        bx(PPat::Assign("x", "tau"), Pat::True),
                    ),
                ),
                iff(
                    bx(PPat::BoolAssign("q", "gamma2"), g("gamma")),
                    Pat::SubstBool {
                        body: "gamma",
                        var: "q",
                        by: "gamma2",
                    },
                ),
            ),
        ),
        plain(
            "Ax19",
            &[("K", MetaSort::Program), ("M", MetaSort::Program), ("alpha", MetaSort::Formula)],
            iff(
                bx(PPat::Seq(Box::new(k("K")), Box::new(k("M"))), a()),
                bx(k("K"), bx(k("M"), a())),
            ),
        ),
        plain(
            "Ax20",
            &[
                ("gamma", MetaSort::Open),
                ("K", MetaSort::Program),
                ("M", MetaSort::Program),
                ("alpha", MetaSort::Formula),
            ],
            iff(
                bx(PPat::If("gamma", Box::new(k("K")), Box::new(k("M"))), a()),
                or(
                    and(not(g("gamma")), bx(k("M"), a())),
                    and(g("gamma"), bx(k("K"), a())),
                ),
            ),
        ),
        plain(
            "Ax21",
            &[("gamma", MetaSort::Open), ("K", MetaSort::Program), ("alpha", MetaSort::Formula)],
            {
                let w = || PPat::While("gamma", Box::new(k("K")));
                iff(
                    bx(w(), a()),
                    or(
                        and(not(g("gamma")), a()),
                        and(
                            g("gamma"),
                            bx(k("K"), bx(w(), and(not(g("gamma")), a()))),
                        ),
                    ),
                )
            },
        ),
        plain(
            "Ax22",
            KA,
            iff(
                Pat::Inter(k("K"), Box::new(a())),
                and(a(), bx(k("K"), Pat::Inter(k("K"), Box::new(a())))),
            ),
        ),
        plain(
            "Ax23",
            KA,
            iff(
                Pat::Union(k("K"), Box::new(a())),
                or(a(), bx(k("K"), Pat::Union(k("K"), Box::new(a())))),
            ),
        ),
    ]
}

pub fn schema(id: &str) -> Option<Schema> {
    axioms().into_iter().find(|s| s.id == id)
}

/// The top connective of a formula, reading an open formula's connectives as
/// if they were built at the formula level.
pub(crate) enum View {
    Atom,
    Not(Formula),
    And(Formula, Formula),
    Or(Formula, Formula),
    Implies(Formula, Formula),
    Box(Program, Formula),
    Union(Program, Formula),
    Inter(Program, Formula),
    Forall(Ident, Formula),
    Exists(Ident, Formula),
}

pub(crate) fn view(f: &Formula) -> View {
    let o = |g: &Open| Formula::Open(g.clone());
    match f {
        Formula::Open(Open::Not(a)) => View::Not(o(a)),
        Formula::Open(Open::And(l, r)) => View::And(o(l), o(r)),
        Formula::Open(Open::Or(l, r)) => View::Or(o(l), o(r)),
        Formula::Open(Open::Implies(l, r)) => View::Implies(o(l), o(r)),
        Formula::Open(_) => View::Atom,
        Formula::Box(k, a) => View::Box(k.clone(), (**a).clone()),
        Formula::IterUnion(k, a) => View::Union(k.clone(), (**a).clone()),
        Formula::IterInter(k, a) => View::Inter(k.clone(), (**a).clone()),
        Formula::Forall(x, a) => View::Forall(x.clone(), (**a).clone()),
        Formula::Exists(x, a) => View::Exists(x.clone(), (**a).clone()),
        Formula::And(l, r) => View::And((**l).clone(), (**r).clone()),
        Formula::Or(l, r) => View::Or((**l).clone(), (**r).clone()),
        Formula::Implies(l, r) => View::Implies((**l).clone(), (**r).clone()),
        Formula::Not(a) => View::Not((**a).clone()),
        Formula::Iff(l, r) => View::And(
            Formula::implies((**l).clone(), (**r).clone()),
            Formula::implies((**r).clone(), (**l).clone()),
        ),
    }
}

struct Matcher {
    schema: &'static str,
    b: Bindings,
    deferred: Vec<(Pat, Formula)>,
}

type M = Result<(), MatchError>;

impl Matcher {
    fn fail(&self, reason: impl Into<String>) -> MatchError {
        MatchError::Mismatch {
            schema: self.schema,
            reason: reason.into(),
        }
    }

    fn bind(&mut self, name: &str, value: Binding) -> M {
        match self.b.get(name) {
            None => {
                self.b.insert(name.to_string(), value);
                Ok(())
            }
            Some(old) => {
                let same = match (old, &value) {
                    (Binding::Formula(x), Binding::Formula(y)) => alpha_eq(&lift(x), &lift(y)),
                    (x, y) => x == y,
                };
                if same {
                    Ok(())
                } else {
                    Err(self.fail(format!("`{name}` would stand for both {old} and {value}")))
                }
            }
        }
    }

    fn formula(&mut self, p: &Pat, f: &Formula) -> M {
        match p {
            Pat::Meta(n) => self.bind(n, Binding::Formula(f.clone())),
            Pat::OpenMeta(n) => match f {
                Formula::Open(g) => self.bind(n, Binding::Open(g.clone())),
                _ => Err(self.fail(format!("`{n}` must be an open formula, found {f}"))),
            },
            Pat::True => match f {
                Formula::Open(Open::True) => Ok(()),
                _ => Err(self.fail(format!("expected `true`, found {f}"))),
            },
            Pat::Subst { .. } | Pat::SubstBool { .. } => {
                self.deferred.push((p.clone(), f.clone()));
                Ok(())
            }
            _ => {
                let v = view(f);
                match (p, v) {
                    (Pat::Not(pa), View::Not(a)) => self.formula(pa, &a),
                    (Pat::And(pl, pr), View::And(l, r))
                    | (Pat::Or(pl, pr), View::Or(l, r))
                    | (Pat::Implies(pl, pr), View::Implies(l, r)) => {
                        self.formula(pl, &l)?;
                        self.formula(pr, &r)
                    }
                    (Pat::Box(pk, pa), View::Box(k, a))
                    | (Pat::Union(pk, pa), View::Union(k, a))
                    | (Pat::Inter(pk, pa), View::Inter(k, a)) => {
                        self.program(pk, &k)?;
                        self.formula(pa, &a)
                    }
                    (Pat::Forall(x, pa), View::Forall(y, a)) | (Pat::Exists(x, pa), View::Exists(y, a)) => {
                        self.bind(x, Binding::Var(y))?;
                        self.formula(pa, &a)
                    }
                    _ => Err(self.fail(format!("unexpected {f}"))),
                }
            }
        }
    }

    fn program(&mut self, p: &PPat, k: &Program) -> M {
        match (p, k) {
            (PPat::Meta(n), _) => self.bind(n, Binding::Program(k.clone())),
            (PPat::Assign(x, t), Program::Assign(y, u)) => {
                self.bind(x, Binding::Var(y.clone()))?;
                self.bind(t, Binding::Term(u.clone()))
            }
            (PPat::BoolAssign(q, g), Program::BoolAssign(r, h)) => {
                self.bind(q, Binding::Var(r.clone()))?;
                self.bind(g, Binding::Open(h.clone()))
            }
            (PPat::Seq(pa, pb), Program::Seq(a, b)) => {
                self.program(pa, a)?;
                self.program(pb, b)
            }
            (PPat::If(g, pa, pb), Program::If(h, a, b)) => {
                self.bind(g, Binding::Open(h.clone()))?;
                self.program(pa, a)?;
                self.program(pb, b)
            }
            (PPat::While(g, pa), Program::While(h, a)) => {
                self.bind(g, Binding::Open(h.clone()))?;
                self.program(pa, a)
            }
            _ => Err(self.fail(format!("unexpected program {k}"))),
        }
    }

    fn resolve(&mut self, p: &Pat, target: &Formula) -> M {
        match p {
            Pat::Subst { body, var, term } => {
                let alpha = match self.b.get(*body) {
                    Some(Binding::Formula(a)) => a.clone(),
                    Some(Binding::Open(g)) => Formula::Open(g.clone()),
                    _ => return Err(self.fail(format!("`{body}` is unconstrained"))),
                };
                let Some(Binding::Var(x)) = self.b.get(*var).cloned() else {
                    return Err(self.fail(format!("`{var}` is unconstrained")));
                };
                let candidates = match self.b.get(*term) {
                    Some(Binding::Term(t)) => vec![t.clone()],
                    Some(Binding::Var(y)) => vec![Term::var(y.clone())],
                    _ => {
                        let mut c = vec![Term::var(x.clone())];
                        subterms_of_formula(target, &mut c);
                        c
                    }
                };
                for tau in candidates {
                    if let Ok(inst) = substitute(&alpha, &x, &tau) {
                        if alpha_eq(&lift(&inst), target) {
                            if !self.b.contains_key(*term) {
                                self.b.insert(term.to_string(), Binding::Term(tau));
                            }
                            return Ok(());
                        }
                    }
                }
                Err(self.fail(format!("{target} is not {body}({x}/{term})")))
            }
            Pat::SubstBool { body, var, by } => {
                let (Some(Binding::Open(g)), Some(Binding::Var(q)), Some(Binding::Open(h))) =
                    (self.b.get(*body), self.b.get(*var), self.b.get(*by))
                else {
                    return Err(self.fail("boolean substitution is unconstrained"));
                };
                match substitute_bool(&Formula::Open(g.clone()), q, h) {
                    Ok(inst) if alpha_eq(&lift(&inst), target) => Ok(()),
                    _ => Err(self.fail(format!("{target} is not {body}({q}/{by})"))),
                }
            }
            _ => unreachable!("only substitutions are deferred"),
        }
    }
}

fn subterms(t: &Term, out: &mut Vec<Term>) {
    if !out.contains(t) {
        out.push(t.clone());
    }
    match t {
        Term::Var(_) | Term::Zero => {}
        Term::Succ(a) | Term::Pred(a) => subterms(a, out),
        Term::Add(l, r) | Term::Mul(l, r) | Term::Monus(l, r) => {
            subterms(l, out);
            subterms(r, out);
        }
    }
}

fn subterms_of_open(g: &Open, out: &mut Vec<Term>) {
    match g {
        Open::Eq(l, r) | Open::Less(l, r) => {
            subterms(l, out);
            subterms(r, out);
        }
        Open::True | Open::False | Open::BoolVar(_) => {}
        Open::And(l, r) | Open::Or(l, r) | Open::Implies(l, r) => {
            subterms_of_open(l, out);
            subterms_of_open(r, out);
        }
        Open::Not(a) => subterms_of_open(a, out),
    }
}

fn subterms_of_program(k: &Program, out: &mut Vec<Term>) {
    match k {
        Program::Assign(x, t) => {
            subterms(&Term::var(x.clone()), out);
            subterms(t, out);
        }
        Program::BoolAssign(_, g) => subterms_of_open(g, out),
        Program::Seq(a, b) => {
            subterms_of_program(a, out);
            subterms_of_program(b, out);
        }
        Program::If(g, a, b) => {
            subterms_of_open(g, out);
            subterms_of_program(a, out);
            subterms_of_program(b, out);
        }
        Program::While(g, a) => {
            subterms_of_open(g, out);
            subterms_of_program(a, out);
        }
        Program::Skip => {}
    }
}

fn subterms_of_formula(f: &Formula, out: &mut Vec<Term>) {
    match f {
        Formula::Open(g) => subterms_of_open(g, out),
        Formula::Box(k, a) | Formula::IterUnion(k, a) | Formula::IterInter(k, a) => {
            subterms_of_program(k, out);
            subterms_of_formula(a, out);
        }
        Formula::Forall(_, a) | Formula::Exists(_, a) | Formula::Not(a) => subterms_of_formula(a, out),
        Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) | Formula::Iff(l, r) => {
            subterms_of_formula(l, out);
            subterms_of_formula(r, out);
        }
    }
}

fn check_sorts(schema: &Schema, b: &Bindings) -> M {
    for (name, value) in b {
        let Some(sort) = schema.sort_of(name) else {
            return Err(MatchError::UnknownMeta(name.clone()));
        };
        let ok = match (sort, value) {
            (MetaSort::Formula, Binding::Formula(_))
            | (MetaSort::Open, Binding::Open(_))
            | (MetaSort::Program, Binding::Program(_))
            | (MetaSort::Term, Binding::Term(_))
            | (MetaSort::Var | MetaSort::BoolVar, Binding::Var(_)) => true,
            (MetaSort::AssignSeq, Binding::Program(k)) => k.is_assignment_sequence(),
            _ => false,
        };
        if !ok {
            return Err(MatchError::Mismatch {
                schema: schema.id,
                reason: format!("`{name}` cannot stand for {value}"),
            });
        }
    }
    Ok(())
}

/// Matches `conclusion` against a schema, starting from the given partial
/// bindings. Returns the complete bindings.
pub fn match_schema_with(id: &str, conclusion: &Formula, seed: Bindings) -> Result<Bindings, MatchError> {
    let schema = schema(id).ok_or_else(|| MatchError::UnknownSchema(id.to_string()))?;
    // Formula-sorted metavariables bound to open formulas are stored as
    // formulas; normalize the seed before matching.
    let seed = seed
        .into_iter()
        .map(|(k, v)| match (schema.sort_of(&k), v) {
            (Some(MetaSort::Formula), Binding::Open(g)) => (k, Binding::Formula(Formula::Open(g))),
            (_, v) => (k, v),
        })
        .collect();
    check_sorts(&schema, &seed)?;
    let mut m = Matcher {
        schema: schema.id,
        b: seed,
        deferred: Vec::new(),
    };
    m.formula(&schema.pattern, &lift(conclusion))?;
    for (p, target) in std::mem::take(&mut m.deferred) {
        m.resolve(&p, &target)?;
    }
    check_sorts(&schema, &m.b)?;
    (schema.side)(&m.b).map_err(|condition| MatchError::SideCondition {
        schema: schema.id,
        condition,
    })?;
    Ok(m.b)
}

pub fn match_schema(id: &str, conclusion: &Formula) -> Result<Bindings, MatchError> {
    match_schema_with(id, conclusion, Bindings::new())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_formula, parse_open, parse_program};

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn distribution_over_disjunction() {
        let b = match_schema(
            "Ax15",
            &f("([x := 0] ((x = 0) | (x < 0)) <-> ([x := 0] (x = 0) | [x := 0] (x < 0)))"),
        )
        .unwrap();
        assert_eq!(b["K"], Binding::Program(parse_program("x := 0").unwrap()));
        assert_eq!(b["alpha"], Binding::Formula(f("(x = 0)")));
        assert_eq!(b["beta"], Binding::Formula(f("(x < 0)")));
    }

    #[test]
    fn while_unfolding() {
        let inst = "([while (x < y) do x := s(x) od] (x = y) <-> ((!(x < y) & (x = y)) | \
                    ((x < y) & [x := s(x)] [while (x < y) do x := s(x) od] (!(x < y) & (x = y)))))";
        let b = match_schema("Ax21", &f(inst)).unwrap();
        assert_eq!(b["gamma"], Binding::Open(parse_open("(x < y)").unwrap()));
    }

    #[test]
    fn an_atom_is_no_instance_of_distribution() {
        assert!(matches!(
            match_schema("Ax15", &f("(0 = 0)")),
            Err(MatchError::Mismatch { .. })
        ));
    }

    #[test]
    fn instantiation_infers_the_term() {
        let b = match_schema("Ax12", &f("(forall x . (x < s(x)) -> (s(y) < s(s(y))))")).unwrap();
        assert_eq!(b["tau"], Binding::Term(crate::syntax::parse_term("s(y)").unwrap()));
        assert!(match_schema("Ax12", &f("(forall x . (x < s(x)) -> (y < s(s(y))))")).is_err());
    }

    #[test]
    fn instantiation_avoids_capture() {
        let inst = "(forall x . exists y . !(x = y) -> exists y' . !(y = y'))";
        assert!(match_schema("Ax12", &f(inst)).is_ok());
        let captured = "(forall x . exists y . !(x = y) -> exists y . !(y = y))";
        assert!(match_schema("Ax12", &f(captured)).is_err());
    }

    #[test]
    fn renaming_into_the_program_is_refused() {
        let ok = "([y := 0] exists x . (x = y) <-> exists z . [y := 0] (z = y))";
        assert!(match_schema("Ax14", &f(ok)).is_ok());
        let bad = "([y := 0] exists x . (x = y) <-> exists y . [y := 0] (y = y))";
        assert!(matches!(
            match_schema("Ax14", &f(bad)),
            Err(MatchError::SideCondition { .. })
        ));
    }

    #[test]
    fn assignment_axiom_with_both_conjuncts() {
        let inst = "(([x := s(y)] ((x < y) | ?q) <-> (((s(y) < y) | ?q) & [x := s(y)] true)) & \
                    ([?q := (y = 0)] ((x < y) | ?q) <-> ((x < y) | (y = 0))))";
        assert!(match_schema("Ax18", &f(inst)).is_ok());
    }

    #[test]
    fn seeded_bindings_must_agree() {
        let inst = f("((x = 0) | !(x = 0))");
        let mut seed = Bindings::new();
        seed.insert("alpha".into(), Binding::Formula(f("(x = s(0))")));
        assert!(match_schema_with("Ax11", &inst, seed).is_err());
        let mut seed = Bindings::new();
        seed.insert("K".into(), Binding::Formula(f("(x = 0)")));
        assert!(matches!(
            match_schema_with("Ax11", &inst, seed),
            Err(MatchError::UnknownMeta(_))
        ));
    }
}
