//! Abstract syntax of the algorithmic-logic language: terms, open formulas,
//! while-programs and algorithmic formulas.
//!
//! Formulas are kept in a canonical shape: a boolean connective whose
//! operands are all open formulas is itself stored as an open formula. The
//! smart constructors on [`Formula`] maintain this, and the parser only builds
//! through them, so `parse(print(f)) == f` holds for every canonical tree.

mod lexer;
mod parser;
mod printer;
mod subst;
mod vars;

pub mod gen;

pub use lexer::{Pos, Token};
pub use parser::{parse, parse_formula, parse_open, parse_program, parse_term, Sort, SyntaxError, Tree};
pub use subst::{
    alpha_eq, equiv, fresh_name, iterate, lift, rename_all, substitute, substitute_bool,
    substitute_open, SortError,
};
pub use vars::{
    all_program_vars, assigned_vars, first_occurrence_order, free_bool_vars, free_vars,
    open_vars, term_vars,
};

pub type Ident = String;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(Ident),
    Zero,
    Succ(Box<Term>),
    Pred(Box<Term>),
    Add(Box<Term>, Box<Term>),
    Mul(Box<Term>, Box<Term>),
    Monus(Box<Term>, Box<Term>),
}

impl Term {
    pub fn var(name: impl Into<Ident>) -> Term {
        Term::Var(name.into())
    }

    pub fn succ(t: Term) -> Term {
        Term::Succ(Box::new(t))
    }

    pub fn pred(t: Term) -> Term {
        Term::Pred(Box::new(t))
    }

    pub fn add(l: Term, r: Term) -> Term {
        Term::Add(Box::new(l), Box::new(r))
    }

    pub fn mul(l: Term, r: Term) -> Term {
        Term::Mul(Box::new(l), Box::new(r))
    }

    pub fn monus(l: Term, r: Term) -> Term {
        Term::Monus(Box::new(l), Box::new(r))
    }

    /// `s(s(...s(0)))` with `n` successors.
    pub fn numeral(n: usize) -> Term {
        (0..n).fold(Term::Zero, |t, _| Term::succ(t))
    }

    pub fn contains_mul(&self) -> bool {
        match self {
            Term::Var(_) | Term::Zero => false,
            Term::Succ(t) | Term::Pred(t) => t.contains_mul(),
            Term::Mul(_, _) => true,
            Term::Add(l, r) | Term::Monus(l, r) => l.contains_mul() || r.contains_mul(),
        }
    }
}

/// Quantifier-free, program-free formulas. These are the only formulas allowed
/// as guards.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Open {
    Eq(Term, Term),
    Less(Term, Term),
    True,
    False,
    And(Box<Open>, Box<Open>),
    Or(Box<Open>, Box<Open>),
    Implies(Box<Open>, Box<Open>),
    Not(Box<Open>),
    BoolVar(Ident),
}

impl Open {
    pub fn eq(l: Term, r: Term) -> Open {
        Open::Eq(l, r)
    }

    pub fn less(l: Term, r: Term) -> Open {
        Open::Less(l, r)
    }

    pub fn and(l: Open, r: Open) -> Open {
        Open::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Open, r: Open) -> Open {
        Open::Or(Box::new(l), Box::new(r))
    }

    pub fn implies(l: Open, r: Open) -> Open {
        Open::Implies(Box::new(l), Box::new(r))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(g: Open) -> Open {
        Open::Not(Box::new(g))
    }

    pub fn bool_var(name: impl Into<Ident>) -> Open {
        Open::BoolVar(name.into())
    }

    pub fn contains_mul(&self) -> bool {
        match self {
            Open::Eq(l, r) | Open::Less(l, r) => l.contains_mul() || r.contains_mul(),
            Open::True | Open::False | Open::BoolVar(_) => false,
            Open::And(l, r) | Open::Or(l, r) | Open::Implies(l, r) => {
                l.contains_mul() || r.contains_mul()
            }
            Open::Not(g) => g.contains_mul(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Program {
    Assign(Ident, Term),
    BoolAssign(Ident, Open),
    Seq(Box<Program>, Box<Program>),
    If(Open, Box<Program>, Box<Program>),
    While(Open, Box<Program>),
    Skip,
}

impl Program {
    pub fn assign(x: impl Into<Ident>, t: Term) -> Program {
        Program::Assign(x.into(), t)
    }

    pub fn bool_assign(q: impl Into<Ident>, g: Open) -> Program {
        Program::BoolAssign(q.into(), g)
    }

    pub fn seq(first: Program, second: Program) -> Program {
        Program::Seq(Box::new(first), Box::new(second))
    }

    /// Right-nested sequence of the given programs; `Skip` when empty.
    pub fn seq_all(programs: impl IntoIterator<Item = Program>) -> Program {
        let mut items: Vec<Program> = programs.into_iter().collect();
        let Some(mut acc) = items.pop() else {
            return Program::Skip;
        };
        while let Some(p) = items.pop() {
            acc = Program::seq(p, acc);
        }
        acc
    }

    pub fn if_then_else(g: Open, then_b: Program, else_b: Program) -> Program {
        Program::If(g, Box::new(then_b), Box::new(else_b))
    }

    /// One-branch conditional, `if g then k fi`.
    pub fn if_then(g: Open, then_b: Program) -> Program {
        Program::If(g, Box::new(then_b), Box::new(Program::Skip))
    }

    pub fn while_do(g: Open, body: Program) -> Program {
        Program::While(g, Box::new(body))
    }

    /// True for `x := t` and sequences built only from such assignments.
    pub fn is_assignment_sequence(&self) -> bool {
        match self {
            Program::Assign(_, _) => true,
            Program::Seq(a, b) => a.is_assignment_sequence() && b.is_assignment_sequence(),
            _ => false,
        }
    }

    pub fn contains_mul(&self) -> bool {
        match self {
            Program::Assign(_, t) => t.contains_mul(),
            Program::BoolAssign(_, g) => g.contains_mul(),
            Program::Seq(a, b) => a.contains_mul() || b.contains_mul(),
            Program::If(g, a, b) => g.contains_mul() || a.contains_mul() || b.contains_mul(),
            Program::While(g, b) => g.contains_mul() || b.contains_mul(),
            Program::Skip => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Open(Open),
    /// `[K] a`: K halts and `a` holds afterwards.
    Box(Program, Box<Formula>),
    /// `U[K] a`: some finite iteration of K establishes `a`.
    IterUnion(Program, Box<Formula>),
    /// `I[K] a`: every finite iteration of K establishes `a`.
    IterInter(Program, Box<Formula>),
    Forall(Ident, Box<Formula>),
    Exists(Ident, Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Not(Box<Formula>),
}

impl From<Open> for Formula {
    fn from(g: Open) -> Formula {
        Formula::Open(g)
    }
}

impl Formula {
    pub fn boxed(k: Program, f: Formula) -> Formula {
        Formula::Box(k, Box::new(f))
    }

    pub fn iter_union(k: Program, f: Formula) -> Formula {
        Formula::IterUnion(k, Box::new(f))
    }

    pub fn iter_inter(k: Program, f: Formula) -> Formula {
        Formula::IterInter(k, Box::new(f))
    }

    pub fn forall(x: impl Into<Ident>, f: Formula) -> Formula {
        Formula::Forall(x.into(), Box::new(f))
    }

    pub fn exists(x: impl Into<Ident>, f: Formula) -> Formula {
        Formula::Exists(x.into(), Box::new(f))
    }

    pub fn and(l: Formula, r: Formula) -> Formula {
        match (l, r) {
            (Formula::Open(a), Formula::Open(b)) => Formula::Open(Open::and(a, b)),
            (l, r) => Formula::And(Box::new(l), Box::new(r)),
        }
    }

    pub fn or(l: Formula, r: Formula) -> Formula {
        match (l, r) {
            (Formula::Open(a), Formula::Open(b)) => Formula::Open(Open::or(a, b)),
            (l, r) => Formula::Or(Box::new(l), Box::new(r)),
        }
    }

    pub fn implies(l: Formula, r: Formula) -> Formula {
        match (l, r) {
            (Formula::Open(a), Formula::Open(b)) => Formula::Open(Open::implies(a, b)),
            (l, r) => Formula::Implies(Box::new(l), Box::new(r)),
        }
    }

    pub fn iff(l: Formula, r: Formula) -> Formula {
        Formula::Iff(Box::new(l), Box::new(r))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        match f {
            Formula::Open(g) => Formula::Open(Open::not(g)),
            f => Formula::Not(Box::new(f)),
        }
    }

    pub fn as_open(&self) -> Option<&Open> {
        match self {
            Formula::Open(g) => Some(g),
            _ => None,
        }
    }

    /// Rebuilds the tree through the smart constructors.
    pub fn normalize(self) -> Formula {
        match self {
            Formula::Open(g) => Formula::Open(g),
            Formula::Box(k, f) => Formula::boxed(k, f.normalize()),
            Formula::IterUnion(k, f) => Formula::iter_union(k, f.normalize()),
            Formula::IterInter(k, f) => Formula::iter_inter(k, f.normalize()),
            Formula::Forall(x, f) => Formula::forall(x, f.normalize()),
            Formula::Exists(x, f) => Formula::exists(x, f.normalize()),
            Formula::And(l, r) => Formula::and(l.normalize(), r.normalize()),
            Formula::Or(l, r) => Formula::or(l.normalize(), r.normalize()),
            Formula::Implies(l, r) => Formula::implies(l.normalize(), r.normalize()),
            Formula::Iff(l, r) => Formula::iff(l.normalize(), r.normalize()),
            Formula::Not(f) => Formula::not(f.normalize()),
        }
    }

    /// No program, iteration quantifier or modal node anywhere.
    pub fn is_first_order(&self) -> bool {
        match self {
            Formula::Open(_) => true,
            Formula::Box(..) | Formula::IterUnion(..) | Formula::IterInter(..) => false,
            Formula::Forall(_, f) | Formula::Exists(_, f) | Formula::Not(f) => f.is_first_order(),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) | Formula::Iff(l, r) => {
                l.is_first_order() && r.is_first_order()
            }
        }
    }

    pub fn contains_mul(&self) -> bool {
        match self {
            Formula::Open(g) => g.contains_mul(),
            Formula::Box(k, f) | Formula::IterUnion(k, f) | Formula::IterInter(k, f) => {
                k.contains_mul() || f.contains_mul()
            }
            Formula::Forall(_, f) | Formula::Exists(_, f) | Formula::Not(f) => f.contains_mul(),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) | Formula::Iff(l, r) => {
                l.contains_mul() || r.contains_mul()
            }
        }
    }
}

/// Words that can never be identifiers.
pub const RESERVED: &[&str] = &[
    "s", "P", "true", "false", "skip", "if", "then", "else", "fi", "while", "do", "od", "forall",
    "exists",
];

pub fn is_valid_ident(name: &str) -> bool {
    let core = name.trim_end_matches('\'');
    let mut chars = core.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_') && !RESERVED.contains(&core)
}
