//! Euclid's algorithm and its relatives as named artifacts, with meta-level
//! `gcd`/`max` oracles, Engeler's disjunction and the demo runners.

mod demo;
mod engeler;

pub use demo::{demo_nsn_diverge, demo_nsn_halt, demo_standard, run_demo, DemoReport, DEMOS};
pub use engeler::{engeler_disjunction, engeler_witness, EngelerDisjunct};

use crate::syntax::{parse_formula, parse_program, Formula, Program};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum EuclidError {
    #[error("no artifact named `{0}`")]
    UnknownArtifact(String),
    #[error("{0}")]
    Domain(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Artifact {
    Program(Program),
    Formula(Formula),
}

impl Artifact {
    pub fn as_program(&self) -> Option<&Program> {
        match self {
            Artifact::Program(p) => Some(p),
            Artifact::Formula(_) => None,
        }
    }

    pub fn as_formula(&self) -> Option<&Formula> {
        match self {
            Artifact::Formula(f) => Some(f),
            Artifact::Program(_) => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArtifactKind {
    Program,
    Formula,
}

/// A registered artifact: its grammar string and where it comes from.
#[derive(Clone, Copy, Debug)]
pub struct ArtifactEntry {
    pub name: &'static str,
    pub kind: ArtifactKind,
    pub text: &'static str,
    pub note: &'static str,
}

pub const EUCLID: &str = "while !(n = m) do if (m < n) then n := (n -. m) else m := (m -. n) fi od";

/// The body of [`EUCLID`].
pub const EUCLID_BODY: &str = "if (m < n) then n := (n -. m) else m := (m -. n) fi";

pub const ARTIFACTS: &[ArtifactEntry] = &[
    ArtifactEntry {
        name: "E",
        kind: ArtifactKind::Program,
        text: EUCLID,
        note: "Euclid's algorithm by subtraction",
    },
    ArtifactEntry {
        name: "E-body",
        kind: ArtifactKind::Program,
        text: EUCLID_BODY,
        note: "one step of E",
    },
    ArtifactEntry {
        name: "H",
        kind: ArtifactKind::Formula,
        text: "forall n . forall m . ((!(n = 0) & !(m = 0)) -> \
               [while !(n = m) do if (m < n) then n := (n -. m) else m := (m -. n) fi od] (n = m))",
        note: "halting formula of E over positive arguments",
    },
    ArtifactEntry {
        name: "H-union",
        kind: ArtifactKind::Formula,
        text: "forall n . forall m . ((!(n = 0) & !(m = 0)) -> \
               U[if (m < n) then n := (n -. m) else m := (m -. n) fi] (n = m))",
        note: "halting of E through the iteration quantifier",
    },
    ArtifactEntry {
        name: "H-union-matrix",
        kind: ArtifactKind::Formula,
        text: "U[if (m < n) then n := (n -. m) else m := (m -. n) fi] (n = m)",
        note: "H-union without its guards and quantifiers",
    },
    ArtifactEntry {
        name: "E-nested",
        kind: ArtifactKind::Program,
        text: "while !(n = m) do {while (m < n) do n := (n -. m) od; \
               while (n < m) do m := (m -. n) od} od",
        note: "E with the conditional split into two inner loops",
    },
    ArtifactEntry {
        name: "E-split-equivalence",
        kind: ArtifactKind::Formula,
        text: "([while !(n = m) do if (m < n) then n := (n -. m) else m := (m -. n) fi od] (n = m) <-> \
               [while !(n = m) do {while (!(n = m) & (m < n)) do n := (n -. m) od; \
               while (!(n = m) & !(m < n)) do m := (m -. n) od} od] (n = m))",
        note: "loop-splitting equivalence instantiated for E",
    },
    ArtifactEntry {
        name: "E-remainder-loop",
        kind: ArtifactKind::Program,
        text: "{r := n; while !(r < m) do r := (r -. m) od}",
        note: "remainder by repeated subtraction; expects n > m",
    },
    ArtifactEntry {
        name: "E-division",
        kind: ArtifactKind::Program,
        text: "{r := n; {q := 0; while !(r < m) do {r := (r -. m); q := (q + s(0))} od}}",
        note: "quotient and remainder; expects n > m",
    },
    ArtifactEntry {
        name: "E-gcd-remainder",
        kind: ArtifactKind::Program,
        text: "{r := n; while !(r = 0) do {r := n; {while !(r < m) do r := (r -. m) od; \
               {n := m; m := r}}} od}",
        note: "Euclid's algorithm by remainders; expects n > m",
    },
];

pub fn artifact_entry(name: &str) -> Result<&'static ArtifactEntry, EuclidError> {
    ARTIFACTS
        .iter()
        .find(|a| a.name == name)
        .ok_or_else(|| EuclidError::UnknownArtifact(name.to_string()))
}

pub fn artifact(name: &str) -> Result<Artifact, EuclidError> {
    let entry = artifact_entry(name)?;
    Ok(match entry.kind {
        ArtifactKind::Program => Artifact::Program(parse_program(entry.text).expect("registered programs parse")),
        ArtifactKind::Formula => Artifact::Formula(parse_formula(entry.text).expect("registered formulas parse")),
    })
}

/// The program registered as `name`.
pub fn program(name: &str) -> Result<Program, EuclidError> {
    artifact(name)?
        .as_program()
        .cloned()
        .ok_or_else(|| EuclidError::UnknownArtifact(format!("{name} (not a program)")))
}

/// The formula registered as `name`.
pub fn formula(name: &str) -> Result<Formula, EuclidError> {
    artifact(name)?
        .as_formula()
        .cloned()
        .ok_or_else(|| EuclidError::UnknownArtifact(format!("{name} (not a formula)")))
}

/// Greatest common divisor by scanning candidates downwards from `min(n, m)`.
pub fn gcd_oracle(n: u64, m: u64) -> Result<u64, EuclidError> {
    if n == 0 || m == 0 {
        return Err(EuclidError::Domain(format!("gcd needs positive arguments, got ({n}, {m})")));
    }
    Ok((1..=n.min(m)).rev().find(|d| n % d == 0 && m % d == 0).unwrap_or(1))
}

pub fn max_oracle(n: u64, m: u64) -> u64 {
    n.max(m)
}
