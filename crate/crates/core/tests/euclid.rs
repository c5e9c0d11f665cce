use alwb::euclid::{
    demo_nsn_diverge, demo_nsn_halt, demo_standard, engeler_disjunction, engeler_witness, formula, gcd_oracle,
    max_oracle, program, run_demo,
};
use alwb::models::{Nsn, NsnValue, StdNat};
use alwb::par::{map_range, ExecMode};
use alwb::semantics::{
    bounded_validate, eval_open, loop_iterations, run_program, EvalConfig, Evaluator, Structure, TruthValue,
    Valuation,
};
use alwb::syntax::{Formula, Program};
use num_bigint::BigUint;

fn nm(n: u64, m: u64) -> Valuation<BigUint> {
    Valuation::new().with("n", BigUint::from(n)).with("m", BigUint::from(m))
}

fn get(v: &Valuation<BigUint>, x: &str) -> u64 {
    v.get(x).unwrap().try_into().unwrap()
}

fn final_n(k: &Program, n: u64, m: u64) -> Option<u64> {
    run_program(&StdNat, k, &nm(n, m), &EvalConfig::default())
        .final_state()
        .map(|f| get(f, "n"))
}

fn grid(size: u64) -> Vec<(u64, u64)> {
    (1..=size).flat_map(|n| (1..=size).map(move |m| (n, m))).collect()
}

#[test]
fn euclid_and_nested_euclid_compute_gcd() {
    for name in ["E", "E-nested"] {
        let k = program(name).unwrap();
        let pts = grid(64);
        let bad: Vec<_> = map_range(ExecMode::default(), pts.len(), |i| {
            let (n, m) = pts[i];
            (final_n(&k, n, m) != Some(gcd_oracle(n, m).unwrap())).then_some((n, m))
        })
        .into_iter()
        .flatten()
        .collect();
        assert!(bad.is_empty(), "{name} disagrees at {bad:?}");
    }
}

#[test]
fn remainder_gcd_agrees_when_n_exceeds_m() {
    let k = program("E-gcd-remainder").unwrap();
    for n in 2..=64 {
        for m in 1..n {
            assert_eq!(final_n(&k, n, m), Some(gcd_oracle(n, m).unwrap()), "({n},{m})");
        }
    }
}

#[test]
fn division_yields_quotient_and_remainder() {
    let rem = program("E-remainder-loop").unwrap();
    let div = program("E-division").unwrap();
    for n in 2..=30 {
        for m in 1..n {
            let r = run_program(&StdNat, &rem, &nm(n, m), &EvalConfig::default());
            assert_eq!(get(r.final_state().unwrap(), "r"), n % m);
            let d = run_program(&StdNat, &div, &nm(n, m), &EvalConfig::default());
            let f = d.final_state().unwrap();
            assert_eq!((get(f, "q"), get(f, "r")), (n / m, n % m), "({n},{m})");
        }
    }
}

#[test]
fn halting_formula_and_union_witness_agree() {
    let Formula::Forall(_, inner) = formula("H").unwrap() else { panic!() };
    let Formula::Forall(_, body) = *inner else { panic!() };
    let Formula::Implies(_, boxed) = *body else { panic!() };
    let matrix = formula("H-union-matrix").unwrap();
    let Formula::IterUnion(step, goal) = &matrix else { panic!() };
    let e = program("E").unwrap();
    for (n, m) in grid(32) {
        let cfg = EvalConfig::default().with_budget(10 * (n + m));
        let ev = Evaluator::new(&StdNat, cfg.clone());
        assert_eq!(ev.eval(&boxed, &nm(n, m)).unwrap(), TruthValue::True, "({n},{m})");
        let witness = ev.iterations(step, goal, &nm(n, m)).unwrap().least_witness();
        let loops = loop_iterations(&StdNat, &e, &nm(n, m), &cfg).unwrap();
        assert_eq!(witness.map(|w| w as u64), loops, "({n},{m})");
    }
}

#[test]
fn engeler_witness_is_sound() {
    let ev = Evaluator::new(&StdNat, EvalConfig::default());
    for (n, m) in grid(20) {
        let (a, b, k) = engeler_witness(n, m);
        assert_eq!(num_integer::Integer::gcd(&a, &b), 1);
        assert_eq!(a * n, b * m);
        assert!(k <= max_oracle(n, m));
        for d in engeler_disjunction(k) {
            let holds = eval_open(&StdNat, &d.render(), &nm(n, m)).unwrap();
            assert_eq!(holds, (d.a, d.b) == (a, b), "({n},{m}) {d}");
        }
        let prefix = Formula::Open(
            engeler_disjunction(k)
                .iter()
                .map(|d| d.render())
                .reduce(alwb::syntax::Open::or)
                .unwrap(),
        );
        assert_eq!(ev.eval(&prefix, &nm(n, m)).unwrap(), TruthValue::True);
        if k > 1 {
            assert!(engeler_disjunction(k - 1).iter().all(|d| (d.a, d.b) != (a, b)));
        }
    }
}

#[test]
fn loop_splitting_equivalence_holds() {
    let ev = Evaluator::new(&StdNat, EvalConfig::default());
    let f = formula("E-split-equivalence").unwrap();
    assert_eq!(bounded_validate(&ev, &f, 6).unwrap().label(), "ValidUpToBound");
}

#[test]
fn one_step_shrinks_max_and_keeps_gcd() {
    let body = program("E-body").unwrap();
    for (n, m) in grid(32).into_iter().filter(|(n, m)| n != m) {
        let out = run_program(&StdNat, &body, &nm(n, m), &EvalConfig::default());
        let f = out.final_state().unwrap();
        let (n1, m1) = (get(f, "n"), get(f, "m"));
        assert!(max_oracle(n1, m1) < max_oracle(n, m), "({n},{m})");
        assert_eq!(gcd_oracle(n1, m1).unwrap(), gcd_oracle(n, m).unwrap(), "({n},{m})");
    }
}

#[test]
fn nsn_mismatch_invariant_is_inductive() {
    let s = Nsn::default();
    let body = program("E-body").unwrap();
    let inv = s.pair_invariants().remove(0);
    let sample = s.enumerate(4);
    let guard = alwb::syntax::parse_open("!(n = m)").unwrap();
    let mut checked = 0;
    for a in &sample {
        for b in &sample {
            if !(inv.holds)(a, b) {
                continue;
            }
            checked += 1;
            let v: Valuation<NsnValue> = Valuation::new().with("n", a.clone()).with("m", b.clone());
            assert!(eval_open(&s, &guard, &v).unwrap());
            let out = run_program(&s, &body, &v, &EvalConfig::default());
            let f = out.final_state().unwrap();
            assert!((inv.holds)(f.get("n").unwrap(), f.get("m").unwrap()), "{}", v.render(&s));
        }
    }
    assert!(checked > 100);
}

#[test]
fn demos_pass() {
    let cfg = EvalConfig::default();
    let std = demo_standard(12, 18, &cfg).unwrap();
    assert!(std.pass);
    assert!(std.render().ends_with("verdict: PASS final n = 6 = gcd(12,18) after 2 iterations\n"));
    assert!(demo_nsn_halt(&cfg).pass);
    let div = demo_nsn_diverge(&cfg.clone().with_budget(1000));
    assert!(div.pass, "{}", div.render());
    assert!(div.render().starts_with("demo: nsn-diverge\nstep | n | m\n0 | NSN(12,0,1) | NSN(15,1,2)\n"));
    assert!(run_demo("nope", 1, 1, &cfg).is_err());
    assert!(demo_standard(0, 3, &cfg).is_err());
}
