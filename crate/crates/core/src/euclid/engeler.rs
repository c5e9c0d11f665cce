use std::fmt;

use crate::syntax::{Open, Term};

/// `a·n = b·m` for coprime positive `a`, `b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EngelerDisjunct {
    pub a: u64,
    pub b: u64,
}

fn times(k: u64, x: &str) -> Term {
    (1..k).fold(Term::var(x), |t, _| Term::add(t, Term::var(x)))
}

impl EngelerDisjunct {
    /// The open formula, with `k·x` written as `x + x + ... + x`.
    pub fn render(&self) -> Open {
        Open::eq(times(self.a, "n"), times(self.b, "m"))
    }

    pub fn row(&self) -> u64 {
        self.a.max(self.b)
    }
}

impl fmt::Display for EngelerDisjunct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |k: u64, x: &str| if k == 1 { x.to_string() } else { format!("{k}{x}") };
        write!(f, "{}={}", side(self.a, "n"), side(self.b, "m"))
    }
}

fn coprime(a: u64, b: u64) -> bool {
    num_integer::Integer::gcd(&a, &b) == 1
}

/// Every coprime `(a, b)` with `max(a, b) <= k`. Row `r` lists `n=rm`-style
/// disjuncts `(a, r)` for growing `a`, then `(r, b)` for shrinking `b`.
pub fn engeler_disjunction(k: u64) -> Vec<EngelerDisjunct> {
    let mut out = Vec::new();
    for r in 1..=k {
        if r == 1 {
            out.push(EngelerDisjunct { a: 1, b: 1 });
            continue;
        }
        out.extend((1..r).filter(|&a| coprime(a, r)).map(|a| EngelerDisjunct { a, b: r }));
        out.extend((1..r).rev().filter(|&b| coprime(r, b)).map(|b| EngelerDisjunct { a: r, b }));
    }
    out
}

/// The disjunct that holds at `(n, m)` and the first `k` whose disjunction
/// contains it.
pub fn engeler_witness(n: u64, m: u64) -> (u64, u64, u64) {
    let g = num_integer::Integer::gcd(&n, &m);
    let (a, b) = (m / g, n / g);
    (a, b, a.max(b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shown(k: u64) -> Vec<String> {
        engeler_disjunction(k).iter().map(|d| d.to_string()).collect()
    }

    #[test]
    fn rows_follow_the_display() {
        assert_eq!(shown(1), ["n=m"]);
        assert_eq!(shown(2), ["n=m", "n=2m", "2n=m"]);
        assert_eq!(shown(3)[3..], ["n=3m", "2n=3m", "3n=2m", "3n=m"]);
    }

    #[test]
    fn witnesses() {
        assert_eq!(engeler_witness(4, 6), (3, 2, 3));
        assert_eq!(engeler_witness(5, 5), (1, 1, 1));
        assert_eq!(engeler_witness(9, 6), (2, 3, 3));
    }

    #[test]
    fn rendering_stays_in_the_signature() {
        let d = EngelerDisjunct { a: 3, b: 2 };
        assert_eq!(d.render().to_string(), "(((n + n) + n) = (m + m))");
    }
}
