//! Specific axioms of the arithmetic theories Th0 to Th3.

use std::fmt;
use std::str::FromStr;

use crate::syntax::{parse_formula, substitute, Formula, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Theory {
    /// First-order Peano arithmetic.
    Th0,
    /// Algorithmic theory of addition.
    Th1,
    /// Algorithmic Peano arithmetic.
    Th2,
    /// Algorithmic theory of natural numbers.
    Th3,
}

impl FromStr for Theory {
    type Err = TheoryError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "Th0" => Ok(Theory::Th0),
            "Th1" => Ok(Theory::Th1),
            "Th2" => Ok(Theory::Th2),
            "Th3" => Ok(Theory::Th3),
            _ => Err(TheoryError::UnknownTheory(s.to_string())),
        }
    }
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TheoryError {
    #[error("no theory named `{0}`")]
    UnknownTheory(String),
    #[error("{theory} has no axiom `{name}`")]
    UnknownAxiom { theory: Theory, name: String },
    #[error("induction needs a formula for phi")]
    MissingPhi,
    #[error("phi may only be given for the induction scheme")]
    UnexpectedPhi,
    #[error("phi must be first-order, found {0}")]
    NotFirstOrder(Formula),
}

const ADDITION: &[(&str, &str)] = &[
    ("1", "forall x . !(s(x) = 0)"),
    ("2", "forall x . forall y . ((s(x) = s(y)) -> (x = y))"),
    ("3", "forall x . ((x + 0) = x)"),
    ("4", "forall x . forall y . ((x + s(y)) = s((x + y)))"),
    ("5", "forall x . forall y . ((x < y) <-> exists z . (y = (x + s(z))))"),
    ("6", "(P(0) = 0)"),
    ("7", "forall x . (P(s(x)) = x)"),
    ("8", "forall z . ((z -. 0) = z)"),
    ("9", "forall z . forall x . ((z -. s(x)) = P((z -. x)))"),
];

const MULTIPLICATION: &[(&str, &str)] = &[
    ("11", "forall x . ((x * 0) = 0)"),
    ("12", "forall x . forall y . ((x * s(y)) = ((x * y) + x))"),
];

/// (A), (L), (P) and (O) are stated in their long forms, with the defining
/// program applied to an equation with a fresh variable `z`.
const NATURALS: &[(&str, &str)] = &[
    ("I", "forall x . !(s(x) = 0)"),
    ("M", "forall x . forall y . ((s(x) = s(y)) -> (x = y))"),
    ("S", "forall x . [{y := 0; while !(y = x) do y := s(y) od}] (x = y)"),
    (
        "A",
        "forall x . forall y . forall z . (((x + y) = z) <-> \
         [{t := 0; {w := x; while !(t = y) do {t := s(t); w := s(w)} od}}] (w = z))",
    ),
    (
        "L",
        "forall x . forall y . ((x < y) <-> \
         [{w := 0; while (!(w = y) & !(w = x)) do w := s(w) od}] ((w = x) & !(w = y)))",
    ),
    (
        "P",
        "forall x . forall z . ((P(x) = z) <-> \
         [{w := 0; if !(x = 0) then while !(s(w) = x) do w := s(w) od fi}] (w = z))",
    ),
    (
        "O",
        "forall x . forall y . forall z . (((x -. y) = z) <-> \
         [{w := x; {t := 0; while !(t = y) do {t := s(t); w := P(w)} od}}] (w = z))",
    ),
];

impl Theory {
    /// Names of the fixed axioms, induction excluded.
    pub fn axiom_names(self) -> Vec<&'static str> {
        self.table().iter().map(|(n, _)| *n).collect()
    }

    pub fn has_induction(self) -> bool {
        self != Theory::Th3
    }

    fn table(self) -> Vec<(&'static str, &'static str)> {
        match self {
            Theory::Th1 => ADDITION.to_vec(),
            Theory::Th0 | Theory::Th2 => ADDITION.iter().chain(MULTIPLICATION).copied().collect(),
            Theory::Th3 => NATURALS.to_vec(),
        }
    }
}

/// `(phi(x/0) & forall x . (phi -> phi(x/s(x)))) -> forall x . phi`.
pub fn induction(phi: &Formula) -> Result<Formula, TheoryError> {
    if !phi.is_first_order() {
        return Err(TheoryError::NotFirstOrder(phi.clone()));
    }
    let at = |t: Term| substitute(phi, "x", &t).expect("x is an individual variable here");
    let base = at(Term::Zero);
    let step = Formula::forall(
        "x",
        Formula::implies(phi.clone(), at(Term::succ(Term::var("x")))),
    );
    Ok(Formula::implies(
        Formula::and(base, step),
        Formula::forall("x", phi.clone()),
    ))
}

/// The axiom `name` of `theory`. `phi` is required for `induction` (also
/// accepted as `10`) and rejected elsewhere.
pub fn theory_axiom(theory: Theory, name: &str, phi: Option<&Formula>) -> Result<Formula, TheoryError> {
    if matches!(name, "induction" | "10") && theory.has_induction() {
        let phi = phi.ok_or(TheoryError::MissingPhi)?;
        return induction(phi);
    }
    let text = theory
        .table()
        .into_iter()
        .find(|(n, _)| *n == name)
        .map(|(_, t)| t)
        .ok_or_else(|| TheoryError::UnknownAxiom {
            theory,
            name: name.to_string(),
        })?;
    if phi.is_some() {
        return Err(TheoryError::UnexpectedPhi);
    }
    Ok(parse_formula(text).expect("built-in axioms parse"))
}
