use std::cmp::Ordering;

use alwb::models::{Nsn, StdNat};
use alwb::proof::{check_proof, check_rule, parse_script, corpus, Extras, Rule};
use alwb::semantics::{run_program, EvalConfig, Evaluator, RunOutcome, Structure, TruthValue, Valuation};
use alwb::syntax::gen::TreeGen;
use alwb::syntax::{
    alpha_eq, assigned_vars, iterate, parse_formula, parse_open, parse_program, parse_term, substitute, Formula,
    Open, Program, Term,
};
use num_bigint::BigUint;
use proptest::prelude::*;

const VARS: &[&str] = &["x", "y", "z", "n", "m", "t", "w", "r"];

fn valuation(vals: &[u8], p: bool, q: bool) -> Valuation<BigUint> {
    VARS.iter()
        .zip(vals)
        .fold(Valuation::new(), |v, (x, k)| v.with(*x, BigUint::from(*k)))
        .with_bool("p", p)
        .with_bool("q", q)
}

fn arb_valuation() -> impl Strategy<Value = Valuation<BigUint>> {
    (proptest::collection::vec(0u8..5, VARS.len()), any::<bool>(), any::<bool>())
        .prop_map(|(vals, p, q)| valuation(&vals, p, q))
}

fn small() -> EvalConfig {
    let mut cfg = EvalConfig::default().with_budget(40);
    cfg.iter_bound = 3;
    cfg.carrier_bound = 2;
    cfg
}

fn large() -> EvalConfig {
    let mut cfg = EvalConfig::default().with_budget(400);
    cfg.iter_bound = 10;
    cfg.carrier_bound = 4;
    cfg
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn terms_round_trip(seed in any::<u64>()) {
        let t = TreeGen::new(seed).term(6);
        prop_assert_eq!(parse_term(&t.to_string()).unwrap(), t);
    }

    #[test]
    fn open_formulas_round_trip(seed in any::<u64>()) {
        let g = TreeGen::new(seed).open(6);
        prop_assert_eq!(parse_open(&g.to_string()).unwrap(), g);
    }

    #[test]
    fn programs_round_trip(seed in any::<u64>()) {
        let k = TreeGen::new(seed).program(6);
        prop_assert_eq!(parse_program(&k.to_string()).unwrap(), k);
    }

    #[test]
    fn formulas_round_trip(seed in any::<u64>()) {
        let f = TreeGen::new(seed).formula(6);
        prop_assert_eq!(parse_formula(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn substituting_a_variable_for_itself_changes_nothing(seed in any::<u64>(), x in 0usize..8) {
        let f = TreeGen::new(seed).formula(5);
        let x = VARS[x];
        let g = substitute(&f, x, &Term::var(x)).unwrap();
        prop_assert!(alpha_eq(&f, &g), "{} became {}", f, g);
    }

    #[test]
    fn iterate_adds_one_box(seed in any::<u64>(), i in 0usize..=8) {
        let mut gen = TreeGen::new(seed);
        let (k, f) = (gen.program(3), gen.formula(3));
        prop_assert_eq!(iterate(&k, i + 1, &f), Formula::boxed(k.clone(), iterate(&k, i, &f)));
    }

    #[test]
    fn runs_are_deterministic(seed in any::<u64>(), v in arb_valuation()) {
        let k = TreeGen::new(seed).program(4);
        let cfg = EvalConfig::default().with_budget(200).with_trace();
        prop_assert_eq!(run_program(&StdNat, &k, &v, &cfg), run_program(&StdNat, &k, &v, &cfg));
    }

    #[test]
    fn more_budget_keeps_the_result(seed in any::<u64>(), v in arb_valuation(), budget in 1u64..100) {
        let k = TreeGen::new(seed).program(4);
        let short = run_program(&StdNat, &k, &v, &EvalConfig::default().with_budget(budget));
        if let RunOutcome::Halted { final_state, .. } = short {
            let long = run_program(&StdNat, &k, &v, &EvalConfig::default().with_budget(budget * 3 + 5));
            prop_assert_eq!(long.final_state(), Some(&final_state));
        }
    }

    #[test]
    fn unassigned_variables_are_framed(seed in any::<u64>(), v in arb_valuation()) {
        let k = TreeGen::new(seed).program(4);
        if let RunOutcome::Halted { final_state, .. } = run_program(&StdNat, &k, &v, &EvalConfig::default().with_budget(200)) {
            let assigned = assigned_vars(&k);
            for x in VARS.iter().filter(|x| !assigned.contains(**x)) {
                prop_assert_eq!(final_state.get(x), v.get(x), "{} changed", x);
            }
            for q in ["p", "q"].iter().filter(|q| !assigned.contains(**q)) {
                prop_assert_eq!(final_state.boolean.get(*q), v.boolean.get(*q));
            }
        }
    }

    #[test]
    fn box_agrees_with_one_iteration(seed in any::<u64>(), v in arb_valuation()) {
        let mut gen = TreeGen::new(seed);
        let (k, a) = (gen.program(3), gen.formula(3));
        let ev = Evaluator::new(&StdNat, small());
        let boxed = ev.eval(&Formula::boxed(k.clone(), a.clone()), &v);
        prop_assert_eq!(boxed, ev.eval(&iterate(&k, 1, &a), &v));
    }

    #[test]
    fn raising_bounds_only_resolves_unknowns(seed in any::<u64>(), v in arb_valuation()) {
        let f = TreeGen::new(seed).formula(4);
        let lo = Evaluator::new(&StdNat, small()).eval(&f, &v);
        let hi = Evaluator::new(&StdNat, large()).eval(&f, &v);
        if let (Ok(lo), Ok(hi)) = (lo, hi) {
            prop_assert!(lo.refined_by(hi), "{} went from {:?} to {:?}", f, lo, hi);
        }
    }

    #[test]
    fn modus_ponens_preserves_truth(seed in any::<u64>(), v in arb_valuation()) {
        let mut gen = TreeGen::new(seed);
        let (a, b) = (gen.formula(3), gen.formula(3));
        let imp = Formula::implies(a.clone(), b.clone());
        prop_assert!(check_rule(Rule::R1, &[a.clone(), imp.clone()], &b, &Extras::default()).is_ok());
        let ev = Evaluator::new(&StdNat, small());
        if let (Ok(TruthValue::True), Ok(TruthValue::True), Ok(conc)) = (ev.eval(&a, &v), ev.eval(&imp, &v), ev.eval(&b, &v)) {
            prop_assert_ne!(conc, TruthValue::False);
        }
    }
}

#[test]
fn one_branch_conditional_desugars() {
    let k = parse_program("if (x < y) then x := y fi").unwrap();
    let want = Program::If(
        Open::less(Term::var("x"), Term::var("y")),
        Box::new(Program::assign("x", Term::var("y"))),
        Box::new(Program::Skip),
    );
    assert_eq!(k, want);
}

#[test]
fn existential_introduction_is_sound_on_samples() {
    // From (x < y) -> (0 < y) infer exists x . (x < y) -> (0 < y).
    let premise = parse_formula("((x < y) -> (0 < y))").unwrap();
    let conclusion = parse_formula("(exists x . (x < y) -> (0 < y))").unwrap();
    check_rule(Rule::R6, &[premise.clone()], &conclusion, &Extras::default()).unwrap();
    let ev = Evaluator::new(&StdNat, EvalConfig::default());
    for y in 0u8..5 {
        let all = (0u8..7).all(|x| {
            let v = Valuation::new().with("x", BigUint::from(x)).with("y", BigUint::from(y));
            ev.eval(&premise, &v) == Ok(TruthValue::True)
        });
        let v = Valuation::new().with("x", BigUint::from(0u8)).with("y", BigUint::from(y));
        assert!(all);
        assert_ne!(ev.eval(&conclusion, &v).unwrap(), TruthValue::False);
    }
}

#[test]
fn nsn_divergence_pairs() {
    let s = Nsn::default();
    let sample = s.enumerate(4);
    let mut seen = 0;
    for n in &sample {
        for m in &sample {
            let fits = n.is_standard() && n.intpart() > &0.into() && !m.is_standard();
            if !fits {
                continue;
            }
            seen += 1;
            assert!(s.less(n, m));
            assert!(!n.equal(m));
            let d = s.subtract(m, n).unwrap();
            assert_eq!(d.cmp_fraction(m), Ordering::Equal, "{m} - {n} = {d}");
        }
    }
    assert!(seen > 0);
}

#[test]
fn standard_monus_and_pred_clamp() {
    for a in 0u32..20 {
        let x = BigUint::from(a);
        assert_eq!(StdNat.pred(&x).unwrap(), BigUint::from(a.saturating_sub(1)));
        for b in 0u32..20 {
            let y = BigUint::from(b);
            assert_eq!(StdNat.monus(&x, &y).unwrap(), BigUint::from(a.saturating_sub(b)));
        }
    }
}

#[test]
fn proof_reports_are_reproducible() {
    let script = parse_script(corpus::STANDARD_LEMMA).unwrap();
    assert_eq!(check_proof(&script).render(), check_proof(&script).render());
}
