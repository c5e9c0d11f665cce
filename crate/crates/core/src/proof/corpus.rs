//! Shipped proof scripts and axiom instances.

use crate::syntax::{parse_formula, Formula, SyntaxError};

pub const AXIOM_INSTANCES: &str = include_str!("../../data/axiom_instances.txt");

/// `[y := 0] U[y := s(y)] (x = y)` in Th3, trusting two equivalences.
pub const STANDARD_LEMMA: &str = include_str!("../../data/standard_lemma.proof");
pub const STANDARD_LEMMA_TRUSTED: [&str; 2] = ["while-as-iteration", "guarded-iteration"];

/// One ω-rule step: renaming the counter of an iteration quantifier.
pub const ITERATION_RENAME: &str = include_str!("../../data/iteration_rename.proof");

/// A broken variant of the standard lemma and the step where it must fail.
#[derive(Clone, Copy, Debug)]
pub struct Mutation {
    pub name: &'static str,
    pub text: &'static str,
    pub step: &'static str,
}

pub const MUTATIONS: [Mutation; 3] = [
    Mutation {
        name: "swapped-premises",
        text: include_str!("../../data/standard_lemma_swapped.proof"),
        step: "s11",
    },
    Mutation {
        name: "free-var-existential",
        text: include_str!("../../data/standard_lemma_free_var.proof"),
        step: "s12",
    },
    Mutation {
        name: "altered-conclusion",
        text: include_str!("../../data/standard_lemma_altered.proof"),
        step: "s11",
    },
];

/// Parsed `(schema, formula)` pairs from [`AXIOM_INSTANCES`].
pub fn axiom_instances() -> Result<Vec<(String, Formula)>, SyntaxError> {
    AXIOM_INSTANCES
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            let (id, f) = l.split_once(':').expect("instance lines are `AxN: formula`");
            Ok((id.trim().to_string(), parse_formula(f.trim())?))
        })
        .collect()
}
