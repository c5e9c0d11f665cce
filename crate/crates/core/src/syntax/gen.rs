//! Seeded random generation of canonical syntax trees, for round-trip and
//! property sweeps.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Formula, Open, Program, Term};

const INDIVIDUALS: &[&str] = &["x", "y", "z", "n", "m", "t", "w", "r"];
const BOOLEANS: &[&str] = &["p", "q"];

pub struct TreeGen {
    rng: ChaCha8Rng,
}

impl TreeGen {
    pub fn new(seed: u64) -> TreeGen {
        TreeGen {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    fn var(&mut self) -> String {
        INDIVIDUALS.choose(&mut self.rng).unwrap().to_string()
    }

    fn bool_var(&mut self) -> String {
        BOOLEANS.choose(&mut self.rng).unwrap().to_string()
    }

    /// A term of depth at most `depth` (a leaf has depth 1).
    pub fn term(&mut self, depth: usize) -> Term {
        if depth <= 1 || self.rng.gen_bool(0.3) {
            return if self.rng.gen_bool(0.7) {
                Term::Var(self.var())
            } else {
                Term::Zero
            };
        }
        let d = depth - 1;
        match self.rng.gen_range(0..5) {
            0 => Term::succ(self.term(d)),
            1 => Term::pred(self.term(d)),
            2 => Term::add(self.term(d), self.term(d)),
            3 => Term::mul(self.term(d), self.term(d)),
            _ => Term::monus(self.term(d), self.term(d)),
        }
    }

    pub fn open(&mut self, depth: usize) -> Open {
        let d = depth.saturating_sub(1).max(1);
        if depth <= 2 || self.rng.gen_bool(0.3) {
            return match self.rng.gen_range(0..8) {
                0 => Open::True,
                1 => Open::False,
                2 => Open::BoolVar(self.bool_var()),
                3 | 4 => Open::less(self.term(d), self.term(d)),
                _ => Open::eq(self.term(d), self.term(d)),
            };
        }
        match self.rng.gen_range(0..4) {
            0 => Open::and(self.open(d), self.open(d)),
            1 => Open::or(self.open(d), self.open(d)),
            2 => Open::implies(self.open(d), self.open(d)),
            _ => Open::not(self.open(d)),
        }
    }

    pub fn program(&mut self, depth: usize) -> Program {
        let d = depth.saturating_sub(1).max(1);
        if depth <= 2 || self.rng.gen_bool(0.3) {
            return match self.rng.gen_range(0..6) {
                0 => Program::Skip,
                1 => Program::BoolAssign(self.bool_var(), self.open(d)),
                _ => Program::Assign(self.var(), self.term(d)),
            };
        }
        match self.rng.gen_range(0..4) {
            0 => Program::seq(self.program(d), self.program(d)),
            1 => Program::if_then_else(self.open(d), self.program(d), self.program(d)),
            2 => Program::if_then(self.open(d), self.program(d)),
            _ => Program::while_do(self.open(d), self.program(d)),
        }
    }

    /// A canonical formula: built only through the smart constructors.
    pub fn formula(&mut self, depth: usize) -> Formula {
        let d = depth.saturating_sub(1).max(1);
        if depth <= 2 || self.rng.gen_bool(0.2) {
            return Formula::Open(self.open(d));
        }
        match self.rng.gen_range(0..10) {
            0 => Formula::boxed(self.program(d), self.formula(d)),
            1 => Formula::iter_union(self.program(d), self.formula(d)),
            2 => Formula::iter_inter(self.program(d), self.formula(d)),
            3 => Formula::forall(self.var(), self.formula(d)),
            4 => Formula::exists(self.var(), self.formula(d)),
            5 => Formula::and(self.formula(d), self.formula(d)),
            6 => Formula::or(self.formula(d), self.formula(d)),
            7 => Formula::implies(self.formula(d), self.formula(d)),
            8 => Formula::iff(self.formula(d), self.formula(d)),
            _ => Formula::not(self.formula(d)),
        }
    }
}
