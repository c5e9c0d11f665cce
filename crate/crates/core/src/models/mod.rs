//! Concrete structures: the standard naturals and the non-standard model of
//! the theory of addition implemented by the class `Cn`.

mod laws;
mod nsn;
mod std_nat;

pub use laws::{congruence_violations, th1_violations, LawViolation};
pub use nsn::{ConstructionException, Nsn, NsnOrder, NsnValue};
pub use std_nat::StdNat;
