use std::collections::BTreeSet;

use super::{Formula, Ident, Open, Program, Term};

pub fn term_vars(t: &Term) -> BTreeSet<Ident> {
    let mut out = BTreeSet::new();
    collect_term(t, &mut |x| {
        out.insert(x.to_string());
    });
    out
}

/// Individual variables of an open formula.
pub fn open_vars(g: &Open) -> BTreeSet<Ident> {
    let mut out = BTreeSet::new();
    collect_open(g, &mut |x| {
        out.insert(x.to_string());
    }, &mut |_| {});
    out
}

/// Every identifier occurring in `k`, individual or boolean. This is `V(K)`.
pub fn all_program_vars(k: &Program) -> BTreeSet<Ident> {
    let mut ind = BTreeSet::new();
    let mut boolean = BTreeSet::new();
    collect_program(
        k,
        &mut |x| {
            ind.insert(x.to_string());
        },
        &mut |q| {
            boolean.insert(q.to_string());
        },
    );
    ind.extend(boolean);
    ind
}

/// Left-hand sides of every assignment in `k`.
pub fn assigned_vars(k: &Program) -> BTreeSet<Ident> {
    let mut out = BTreeSet::new();
    fn go(k: &Program, out: &mut BTreeSet<Ident>) {
        match k {
            Program::Assign(x, _) | Program::BoolAssign(x, _) => {
                out.insert(x.clone());
            }
            Program::Seq(a, b) | Program::If(_, a, b) => {
                go(a, out);
                go(b, out);
            }
            Program::While(_, b) => go(b, out),
            Program::Skip => {}
        }
    }
    go(k, &mut out);
    out
}

/// Individual variables of `k` in order of first textual occurrence,
/// assignment targets before the terms they are assigned.
pub fn first_occurrence_order(k: &Program) -> Vec<Ident> {
    let mut order: Vec<Ident> = Vec::new();
    collect_program(
        k,
        &mut |x| {
            if !order.iter().any(|y| y == x) {
                order.push(x.to_string());
            }
        },
        &mut |_| {},
    );
    order
}

/// Free individual variables. Programs bind nothing: every variable of a
/// program inside a modality is free in the formula.
pub fn free_vars(f: &Formula) -> BTreeSet<Ident> {
    let mut out = BTreeSet::new();
    free_into(f, &mut Vec::new(), &mut out);
    out
}

fn free_into(f: &Formula, bound: &mut Vec<Ident>, out: &mut BTreeSet<Ident>) {
    fn insert_free(x: &str, bound: &[Ident], out: &mut BTreeSet<Ident>) {
        if !bound.iter().any(|b| b == x) {
            out.insert(x.to_string());
        }
    }
    match f {
        Formula::Open(g) => collect_open(g, &mut |x| insert_free(x, bound, out), &mut |_| {}),
        Formula::Box(k, a) | Formula::IterUnion(k, a) | Formula::IterInter(k, a) => {
            collect_program(k, &mut |x| insert_free(x, bound, out), &mut |_| {});
            free_into(a, bound, out);
        }
        Formula::Forall(x, a) | Formula::Exists(x, a) => {
            bound.push(x.clone());
            free_into(a, bound, out);
            bound.pop();
        }
        Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) | Formula::Iff(l, r) => {
            free_into(l, bound, out);
            free_into(r, bound, out);
        }
        Formula::Not(a) => free_into(a, bound, out),
    }
}

/// Boolean variables occurring in `f` (they are never bound).
pub fn free_bool_vars(f: &Formula) -> BTreeSet<Ident> {
    fn go(f: &Formula, out: &mut BTreeSet<Ident>) {
        match f {
            Formula::Open(g) => collect_open(g, &mut |_| {}, &mut |q| {
                out.insert(q.to_string());
            }),
            Formula::Box(k, a) | Formula::IterUnion(k, a) | Formula::IterInter(k, a) => {
                collect_program(k, &mut |_| {}, &mut |q| {
                    out.insert(q.to_string());
                });
                go(a, out);
            }
            Formula::Forall(_, a) | Formula::Exists(_, a) | Formula::Not(a) => go(a, out),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) | Formula::Iff(l, r) => {
                go(l, out);
                go(r, out);
            }
        }
    }
    let mut out = BTreeSet::new();
    go(f, &mut out);
    out
}

pub(crate) fn collect_term(t: &Term, ind: &mut dyn FnMut(&str)) {
    match t {
        Term::Var(x) => ind(x),
        Term::Zero => {}
        Term::Succ(a) | Term::Pred(a) => collect_term(a, ind),
        Term::Add(l, r) | Term::Mul(l, r) | Term::Monus(l, r) => {
            collect_term(l, ind);
            collect_term(r, ind);
        }
    }
}

pub(crate) fn collect_open(g: &Open, ind: &mut dyn FnMut(&str), boolean: &mut dyn FnMut(&str)) {
    match g {
        Open::Eq(l, r) | Open::Less(l, r) => {
            collect_term(l, ind);
            collect_term(r, ind);
        }
        Open::True | Open::False => {}
        Open::And(l, r) | Open::Or(l, r) | Open::Implies(l, r) => {
            collect_open(l, ind, boolean);
            collect_open(r, ind, boolean);
        }
        Open::Not(a) => collect_open(a, ind, boolean),
        Open::BoolVar(q) => boolean(q),
    }
}

pub(crate) fn collect_program(
    k: &Program,
    ind: &mut dyn FnMut(&str),
    boolean: &mut dyn FnMut(&str),
) {
    match k {
        Program::Assign(x, t) => {
            ind(x);
            collect_term(t, ind);
        }
        Program::BoolAssign(q, g) => {
            boolean(q);
            collect_open(g, ind, boolean);
        }
        Program::Seq(a, b) => {
            collect_program(a, ind, boolean);
            collect_program(b, ind, boolean);
        }
        Program::If(g, a, b) => {
            collect_open(g, ind, boolean);
            collect_program(a, ind, boolean);
            collect_program(b, ind, boolean);
        }
        Program::While(g, b) => {
            collect_open(g, ind, boolean);
            collect_program(b, ind, boolean);
        }
        Program::Skip => {}
    }
}
