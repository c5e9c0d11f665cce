//! The nine acceptance criteria, each at its stated tolerance and runtime.
//! Prints one PASS/FAIL line per criterion and fails if any criterion fails.

use std::time::{Duration, Instant};

use alwb::euclid::{demo_nsn_diverge, demo_nsn_halt, engeler_disjunction, engeler_witness, formula, gcd_oracle, program};
use alwb::models::{th1_violations, Nsn, NsnValue, StdNat};
use alwb::par::{map_range, ExecMode};
use alwb::proof::{check_proof, corpus, parse_script, theory_axiom, validate_trusted, Justification, Theory, TrustedOutcome};
use alwb::semantics::{
    bounded_validate, bounded_validate_on, loop_iterations, run_program, CertVerdict, EvalConfig,
    Evaluator, RunOutcome, TruthValue, Valuation, Validation,
};
use alwb::syntax::gen::TreeGen;
use alwb::syntax::{assigned_vars, parse_formula, parse_open, parse_program, parse_term, Formula, Program};
use num_bigint::BigUint;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn nsn(i: i64, n: i64, d: i64) -> NsnValue {
    NsnValue::new(i, n, d).unwrap()
}

fn nm(n: u64, m: u64) -> Valuation<BigUint> {
    Valuation::new().with("n", BigUint::from(n)).with("m", BigUint::from(m))
}

fn final_n(k: &Program, n: u64, m: u64) -> Option<BigUint> {
    run_program(&StdNat, k, &nm(n, m), &EvalConfig::default())
        .final_state()
        .and_then(|f| f.get("n").cloned())
}

fn divergence_trace() -> Outcome {
    let r = demo_nsn_diverge(&EvalConfig::default().with_budget(1000));
    let RunOutcome::BudgetExhausted { trace, .. } = &r.outcome else {
        return Err(format!("outcome {}", r.outcome_label()));
    };
    let expected_m = [(15, 1, 2), (3, 1, 2), (-9, 1, 2), (-21, 1, 2), (-33, 1, 2)];
    for (i, (a, b, c)) in expected_m.iter().enumerate() {
        let row = &trace.rows[i].state;
        ensure(row.get("n") == Some(&nsn(12, 0, 1)) && row.get("m") == Some(&nsn(*a, *b, *c)), || {
            format!("row {i}: {row:?}")
        })?;
    }
    ensure(trace.rows.len() > 80, || format!("only {} rows", trace.rows.len()))?;
    for i in 0..=80 {
        let want = nsn(15 - 12 * i as i64, 1, 2);
        ensure(trace.rows[i].state.get("m") == Some(&want), || format!("row {i} m differs"))?;
    }
    ensure(r.certificate == Some(CertVerdict::Certified), || format!("{:?}", r.certificate))?;
    Ok(format!("BudgetExhausted, {} rows, certificate Certified", trace.rows.len()))
}

fn halting_case() -> Outcome {
    let r = demo_nsn_halt(&EvalConfig::default());
    let got = r.outcome.final_state().and_then(|f| f.get("n").cloned());
    match got {
        Some(n) if r.outcome.is_halted() && n.equal(&nsn(3, 0, 1)) => Ok(format!("Halted with n = {n}")),
        other => Err(format!("{} with n = {other:?}", r.outcome_label())),
    }
}

fn oracle_equivalence() -> Outcome {
    let mode = ExecMode::default();
    let mut cases = 0;
    for name in ["E", "E-nested"] {
        let k = program(name).unwrap();
        let bad = map_range(mode, 64 * 64, |i| {
            let (n, m) = (i as u64 / 64 + 1, i as u64 % 64 + 1);
            (final_n(&k, n, m) != Some(BigUint::from(gcd_oracle(n, m).unwrap()))).then_some((n, m))
        });
        if let Some(p) = bad.into_iter().flatten().next() {
            return Err(format!("{name} wrong at {p:?}"));
        }
        cases += 64 * 64;
    }
    let k = program("E-gcd-remainder").unwrap();
    let pairs: Vec<(u64, u64)> = (2..=64u64).flat_map(|n| (1..n).map(move |m| (n, m))).collect();
    let bad = map_range(mode, pairs.len(), |i| {
        let (n, m) = pairs[i];
        (final_n(&k, n, m) != Some(BigUint::from(gcd_oracle(n, m).unwrap()))).then_some((n, m))
    });
    if let Some(p) = bad.into_iter().flatten().next() {
        return Err(format!("E-gcd-remainder wrong at {p:?}"));
    }
    Ok(format!("{} cases agree with the oracle", cases + pairs.len()))
}

fn halting_formula() -> Outcome {
    let Formula::Forall(_, inner) = formula("H").unwrap() else { unreachable!() };
    let Formula::Forall(_, matrix) = *inner else { unreachable!() };
    let union = formula("H-union-matrix").unwrap();
    let Formula::IterUnion(step, goal) = &union else { unreachable!() };
    let e = program("E").unwrap();
    let results = map_range(ExecMode::default(), 32 * 32, |i| {
        let (n, m) = (i as u64 / 32 + 1, i as u64 % 32 + 1);
        let cfg = EvalConfig::default().with_budget(10 * (n + m));
        let ev = Evaluator::new(&StdNat, cfg.clone());
        if ev.eval(&matrix, &nm(n, m)) != Ok(TruthValue::True) {
            return Err(format!("H false or unknown at ({n},{m})"));
        }
        let witness = ev.iterations(step, goal, &nm(n, m)).map_err(|e| e.to_string())?.least_witness();
        let loops = loop_iterations(&StdNat, &e, &nm(n, m), &cfg).map_err(|e| e.to_string())?;
        if witness.map(|w| w as u64) != loops {
            return Err(format!("witness {witness:?} vs {loops:?} iterations at ({n},{m})"));
        }
        Ok(())
    });
    results.into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok("H true and H' witness = loop count on 1024 points".into())
}

fn axiom_suite() -> Outcome {
    let instances = corpus::axiom_instances().map_err(|e| e.to_string())?;
    for n in 1..=23 {
        let id = format!("Ax{n}");
        let count = instances.iter().filter(|(s, _)| *s == id).count();
        ensure(count >= 3, || format!("{id} has {count} instances"))?;
    }
    let ev = Evaluator::new(&StdNat, EvalConfig::default().with_budget(200));
    let (mut valid, mut inconclusive) = (0, 0);
    for (id, f) in &instances {
        match bounded_validate(&ev, f, 4).map_err(|e| format!("{id}: {e}"))? {
            Validation::ValidUpToBound { .. } => valid += 1,
            Validation::Inconclusive { .. } => inconclusive += 1,
            Validation::Refuted { at } => return Err(format!("{id} refuted at {}", at.render(&StdNat))),
        }
    }
    Ok(format!("{valid} ValidUpToBound, {inconclusive} Inconclusive, 0 Refuted"))
}

fn theory_separation() -> Outcome {
    let model = Nsn::default();
    let sample = alwb::semantics::Structure::enumerate(&model, 4);
    let violations = th1_violations(&model, &sample, ExecMode::default());
    ensure(violations.is_empty(), || format!("{} Th1 violations, first {:?}", violations.len(), violations[0]))?;
    let s_ax = theory_axiom(Theory::Th3, "S", None).unwrap();
    let domain = vec![nsn(0, 0, 1), nsn(1, 0, 1), nsn(2, 0, 1), nsn(0, 1, 2)];
    let plain = Evaluator::new(&model, EvalConfig::default().without_certificates());
    let without = bounded_validate_on(&plain, &s_ax, &domain).map_err(|e| e.to_string())?;
    ensure(!without.is_refuted(), || "refuted without a certificate".into())?;
    let ev = Evaluator::new(&model, EvalConfig::default());
    match bounded_validate_on(&ev, &s_ax, &domain).map_err(|e| e.to_string())? {
        Validation::Refuted { at } if at.get("x") == Some(&nsn(0, 1, 2)) => {}
        other => return Err(format!("(S) on NSN gave {}", other.label())),
    }
    let std = Evaluator::new(&StdNat, EvalConfig::default());
    let v = bounded_validate(&std, &s_ax, 6).map_err(|e| e.to_string())?;
    ensure(v.label() == "ValidUpToBound", || format!("(S) on StdNat gave {}", v.label()))?;
    Ok(format!("Th1 holds on {} NSN samples; (S) Refuted at x = NSN(0,1,2); (S) ValidUpToBound on StdNat", sample.len()))
}

fn proof_checker() -> Outcome {
    let script = parse_script(corpus::STANDARD_LEMMA).map_err(|e| e.to_string())?;
    let report = check_proof(&script);
    ensure(report.accepted(), || report.render())?;
    ensure(report.trusted == corpus::STANDARD_LEMMA_TRUSTED, || format!("trusting {:?}", report.trusted))?;
    for step in &script.steps {
        if let Justification::Trusted { name, bound, budget } = &step.by {
            let out = validate_trusted(&step.formula, *bound, *budget, ExecMode::default());
            ensure(matches!(out, TrustedOutcome::Passed(_)), || format!("{name}: {out:?}"))?;
        }
    }
    for m in corpus::MUTATIONS {
        let r = check_proof(&parse_script(m.text).map_err(|e| e.to_string())?);
        let at = r.first_failure().map(|s| s.id.clone());
        ensure(at.as_deref() == Some(m.step), || format!("{} rejected at {at:?}", m.name))?;
    }
    Ok("lemma ACCEPTED trusting 2 lemmas; 3 mutations REJECTED at the mutated step".into())
}

fn engeler_suite() -> Outcome {
    let ev = Evaluator::new(&StdNat, EvalConfig::default());
    for n in 1..=20u64 {
        for m in 1..=20u64 {
            let (a, b, k) = engeler_witness(n, m);
            ensure(num_integer::Integer::gcd(&a, &b) == 1 && a * n == b * m, || format!("({n},{m}) -> ({a},{b})"))?;
            ensure(k <= n.max(m), || format!("k = {k} at ({n},{m})"))?;
            let d = engeler_disjunction(k)
                .into_iter()
                .find(|d| (d.a, d.b) == (a, b))
                .ok_or_else(|| format!("({a},{b}) not in row {k}"))?;
            let truth = ev.eval(&Formula::Open(d.render()), &nm(n, m)).map_err(|e| e.to_string())?;
            ensure(truth == TruthValue::True, || format!("{d} is {truth:?} at ({n},{m})"))?;
        }
    }
    Ok("400 witnesses coprime, true, within max(n,m)".into())
}

fn seed() -> u64 {
    std::env::var("ALWB_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(20_240_601)
}

fn round_trip_and_invariants() -> Outcome {
    let base = seed();
    let mut gen = TreeGen::new(base);
    for i in 0..1000 {
        let t = gen.term(6);
        ensure(parse_term(&t.to_string()).as_ref() == Ok(&t), || format!("term {i}: {t}"))?;
        let g = gen.open(6);
        ensure(parse_open(&g.to_string()).as_ref() == Ok(&g), || format!("open {i}: {g}"))?;
        let k = gen.program(6);
        ensure(parse_program(&k.to_string()).as_ref() == Ok(&k), || format!("program {i}: {k}"))?;
        let f = gen.formula(6);
        ensure(parse_formula(&f.to_string()).as_ref() == Ok(&f), || format!("formula {i}: {f}"))?;
    }
    let vars = ["x", "y", "z", "n", "m", "t", "w", "r"];
    let mut lo = EvalConfig::default().with_budget(40);
    lo.iter_bound = 3;
    lo.carrier_bound = 2;
    let mut hi = EvalConfig::default().with_budget(400);
    hi.iter_bound = 10;
    hi.carrier_bound = 4;
    let (ev_lo, ev_hi) = (Evaluator::new(&StdNat, lo), Evaluator::new(&StdNat, hi));
    let mut gen = TreeGen::new(base ^ 0x9e37_79b9);
    for i in 0..200u64 {
        let v = vars
            .iter()
            .enumerate()
            .fold(Valuation::new(), |v, (j, x)| v.with(*x, BigUint::from((i + j as u64 * 3) % 5)))
            .with_bool("p", i % 2 == 0)
            .with_bool("q", i % 3 == 0);
        let f = gen.formula(4);
        if let (Ok(a), Ok(b)) = (ev_lo.eval(&f, &v), ev_hi.eval(&f, &v)) {
            ensure(a.refined_by(b), || format!("{f}: {a:?} then {b:?}"))?;
        }
        let k = gen.program(4);
        if let RunOutcome::Halted { final_state, .. } =
            run_program(&StdNat, &k, &v, &EvalConfig::default().with_budget(200))
        {
            let assigned = assigned_vars(&k);
            for x in vars.iter().filter(|x| !assigned.contains(**x)) {
                ensure(final_state.get(x) == v.get(x), || format!("{k} changed {x}"))?;
            }
        }
    }
    Ok(format!("4000 trees round-trip; 200 monotonicity and frame checks (seed {base})"))
}

#[test]
fn acceptance_criteria() {
    let criteria: [(&str, fn() -> Outcome, u64); 9] = [
        ("divergence trace", divergence_trace, 1),
        ("halting case", halting_case, 1),
        ("oracle equivalence", oracle_equivalence, 5),
        ("halting formula", halting_formula, 2),
        ("axiom tautology suite", axiom_suite, 5),
        ("theory separation", theory_separation, 3),
        ("proof checker", proof_checker, 2),
        ("engeler suite", engeler_suite, 1),
        ("round-trip and invariants", round_trip_and_invariants, 5),
    ];
    let mut failed = Vec::new();
    for (i, (name, run, limit)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let took = start.elapsed();
        let result = match result {
            Ok(msg) if took > Duration::from_secs(limit) => Err(format!("{msg}; took {took:.2?}, limit {limit}s")),
            other => other,
        };
        match result {
            Ok(msg) => println!("criterion {}: PASS {name} ({took:.2?}) {msg}", i + 1),
            Err(msg) => {
                println!("criterion {}: FAIL {name} ({took:.2?}) {msg}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
