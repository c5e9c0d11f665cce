use std::collections::BTreeMap;
use std::fmt;

use crate::syntax::Ident;

use super::Structure;

/// Strong Kleene truth values.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TruthValue {
    True,
    False,
    Unknown,
}

impl TruthValue {
    pub fn from_bool(b: bool) -> TruthValue {
        if b {
            TruthValue::True
        } else {
            TruthValue::False
        }
    }

    pub fn and(self, other: TruthValue) -> TruthValue {
        use TruthValue::*;
        match (self, other) {
            (False, _) | (_, False) => False,
            (True, True) => True,
            _ => Unknown,
        }
    }

    pub fn or(self, other: TruthValue) -> TruthValue {
        use TruthValue::*;
        match (self, other) {
            (True, _) | (_, True) => True,
            (False, False) => False,
            _ => Unknown,
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> TruthValue {
        match self {
            TruthValue::True => TruthValue::False,
            TruthValue::False => TruthValue::True,
            TruthValue::Unknown => TruthValue::Unknown,
        }
    }

    pub fn implies(self, other: TruthValue) -> TruthValue {
        self.not().or(other)
    }

    pub fn iff(self, other: TruthValue) -> TruthValue {
        self.implies(other).and(other.implies(self))
    }

    /// `self` is at most as informative as `other` and agrees with it where
    /// both are defined.
    pub fn refined_by(self, other: TruthValue) -> bool {
        self == TruthValue::Unknown || self == other
    }
}

impl fmt::Display for TruthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TruthValue::True => "True",
            TruthValue::False => "False",
            TruthValue::Unknown => "Unknown",
        })
    }
}

/// Values of individual and boolean variables.
#[derive(Clone, Debug, PartialEq)]
pub struct Valuation<E> {
    pub ind: BTreeMap<Ident, E>,
    pub boolean: BTreeMap<Ident, bool>,
}

impl<E> Default for Valuation<E> {
    fn default() -> Self {
        Valuation {
            ind: BTreeMap::new(),
            boolean: BTreeMap::new(),
        }
    }
}

impl<E: Clone> Valuation<E> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, x: impl Into<Ident>, e: E) -> Self {
        self.ind.insert(x.into(), e);
        self
    }

    pub fn with_bool(mut self, q: impl Into<Ident>, b: bool) -> Self {
        self.boolean.insert(q.into(), b);
        self
    }

    pub fn get(&self, x: &str) -> Option<&E> {
        self.ind.get(x)
    }

    pub fn set(&mut self, x: &str, e: E) {
        match self.ind.get_mut(x) {
            Some(slot) => *slot = e,
            None => {
                self.ind.insert(x.to_string(), e);
            }
        }
    }

    /// Agreement on every variable under the structure's equality.
    pub fn same_as<S: Structure<Elem = E>>(&self, other: &Self, s: &S) -> bool {
        self.boolean == other.boolean
            && self.ind.len() == other.ind.len()
            && self
                .ind
                .iter()
                .zip(other.ind.iter())
                .all(|((x, a), (y, b))| x == y && s.equal(a, b))
    }

    /// `{x = 1, y = 2}` using the structure's element printer.
    pub fn render<S: Structure<Elem = E>>(&self, s: &S) -> String {
        let mut parts: Vec<String> = self
            .ind
            .iter()
            .map(|(x, e)| format!("{x} = {}", s.format_elem(e)))
            .collect();
        parts.extend(self.boolean.iter().map(|(q, b)| format!("?{q} = {b}")));
        format!("{{{}}}", parts.join(", "))
    }
}
