//! Sweeps reachable through `alwb demo <name>` besides the Euclid demos.

use alwb::euclid::{engeler_disjunction, engeler_witness, formula, gcd_oracle, program};
use alwb::models::{th1_violations, Nsn, NsnValue, StdNat};
use alwb::par::{map_range, ExecMode};
use alwb::proof::{corpus, theory_axiom, Theory};
use alwb::semantics::{
    bounded_validate, bounded_validate_on, eval_open, loop_iterations, run_program, EvalConfig, Evaluator,
    Structure, TruthValue, Validation, Valuation,
};
use alwb::syntax::gen::TreeGen;
use alwb::syntax::{parse_formula, parse_open, parse_program, parse_term, Formula, Program};
use num_bigint::BigUint;
use serde_json::json;

use crate::Report;

pub const NAMES: &[&str] = &[
    "oracle-sweep",
    "halting-formula",
    "axiom-instances",
    "th1-laws",
    "standardization",
    "engeler",
    "round-trip",
];

pub struct SuiteReport {
    name: &'static str,
    lines: Vec<String>,
    pass: bool,
    detail: String,
}

impl SuiteReport {
    pub fn into_report(self) -> Report {
        let mut text = format!("demo: {}\n", self.name);
        for l in &self.lines {
            text.push_str(l);
            text.push('\n');
        }
        text.push_str(&format!("verdict: {} {}\n", if self.pass { "PASS" } else { "FAIL" }, self.detail));
        Report {
            json: json!({
                "demo": self.name,
                "lines": self.lines,
                "verdict": if self.pass { "PASS" } else { "FAIL" },
                "detail": self.detail,
            }),
            text,
            ok: self.pass,
        }
    }
}

fn nm(n: u64, m: u64) -> Valuation<BigUint> {
    Valuation::new().with("n", BigUint::from(n)).with("m", BigUint::from(m))
}

fn gcd_run(k: &Program, n: u64, m: u64) -> bool {
    let out = run_program(&StdNat, k, &nm(n, m), &EvalConfig::default());
    out.final_state().and_then(|f| f.get("n")) == Some(&BigUint::from(gcd_oracle(n, m).expect("positive")))
}

/// Runs the sweep `name`; `None` for an unknown name.
pub fn run(name: &str, var_bound: usize) -> Option<SuiteReport> {
    let mode = ExecMode::default();
    let (name, lines, failures): (&'static str, Vec<String>, Vec<String>) = match name {
        "oracle-sweep" => {
            let mut lines = Vec::new();
            let mut bad = Vec::new();
            for p in ["E", "E-nested"] {
                let k = program(p).expect("registered");
                let wrong: Vec<String> = map_range(mode, 64 * 64, |i| {
                    let (n, m) = (i as u64 / 64 + 1, i as u64 % 64 + 1);
                    (!gcd_run(&k, n, m)).then(|| format!("{p} at ({n},{m})"))
                })
                .into_iter()
                .flatten()
                .collect();
                lines.push(format!("{p}: {} of 4096 cases wrong", wrong.len()));
                bad.extend(wrong);
            }
            let k = program("E-gcd-remainder").expect("registered");
            let pairs: Vec<(u64, u64)> = (2..=64u64).flat_map(|n| (1..n).map(move |m| (n, m))).collect();
            let wrong: Vec<String> = map_range(mode, pairs.len(), |i| {
                let (n, m) = pairs[i];
                (!gcd_run(&k, n, m)).then(|| format!("E-gcd-remainder at ({n},{m})"))
            })
            .into_iter()
            .flatten()
            .collect();
            lines.push(format!("E-gcd-remainder: {} of {} cases wrong", wrong.len(), pairs.len()));
            bad.extend(wrong);
            ("oracle-sweep", lines, bad)
        }
        "halting-formula" => {
            let h = formula("H").expect("registered");
            let matrix = match h {
                Formula::Forall(_, a) => match *a {
                    Formula::Forall(_, b) => *b,
                    other => other,
                },
                other => other,
            };
            let union = formula("H-union-matrix").expect("registered");
            let Formula::IterUnion(step, goal) = &union else {
                unreachable!("H-union-matrix is a union")
            };
            let e = program("E").expect("registered");
            let bad: Vec<String> = map_range(mode, 32 * 32, |i| {
                let (n, m) = (i as u64 / 32 + 1, i as u64 % 32 + 1);
                let cfg = EvalConfig::default().with_budget(10 * (n + m));
                let ev = Evaluator::new(&StdNat, cfg.clone());
                if ev.eval(&matrix, &nm(n, m)) != Ok(TruthValue::True) {
                    return Some(format!("H not True at ({n},{m})"));
                }
                let w = ev.iterations(step, goal, &nm(n, m)).ok()?.least_witness().map(|w| w as u64);
                let loops = loop_iterations(&StdNat, &e, &nm(n, m), &cfg).ok().flatten();
                (w != loops).then(|| format!("witness {w:?} vs {loops:?} loops at ({n},{m})"))
            })
            .into_iter()
            .flatten()
            .collect();
            ("halting-formula", vec!["1 <= n, m <= 32, budget 10(n+m)".into()], bad)
        }
        "axiom-instances" => {
            let ev = Evaluator::new(&StdNat, EvalConfig::default().with_budget(200));
            let mut lines = Vec::new();
            let mut bad = Vec::new();
            for (id, f) in corpus::axiom_instances().expect("shipped instances parse") {
                let label = match bounded_validate(&ev, &f, 4) {
                    Ok(v) => v.label().to_string(),
                    Err(e) => e.to_string(),
                };
                if label != "ValidUpToBound" && label != "Inconclusive" {
                    bad.push(format!("{id}: {f}"));
                }
                lines.push(format!("{id} {label}"));
            }
            ("axiom-instances", lines, bad)
        }
        "th1-laws" => {
            let s = Nsn::default();
            let sample = s.enumerate(var_bound);
            let v = th1_violations(&s, &sample, mode);
            let lines = vec![format!("{} NSN samples, {} violations", sample.len(), v.len())];
            ("th1-laws", lines, v.iter().map(|x| format!("{} at {}", x.law, x.at)).collect())
        }
        "standardization" => {
            let s_ax = theory_axiom(Theory::Th3, "S", None).expect("S exists");
            let model = Nsn::default();
            let nsn = |i, n, d| NsnValue::new(i, n, d).expect("valid");
            let domain = vec![nsn(0, 0, 1), nsn(1, 0, 1), nsn(2, 0, 1), nsn(0, 1, 2)];
            let on_nsn = bounded_validate_on(&Evaluator::new(&model, EvalConfig::default()), &s_ax, &domain);
            let on_std = bounded_validate(&Evaluator::new(&StdNat, EvalConfig::default()), &s_ax, 6);
            let mut lines = Vec::new();
            let mut bad = Vec::new();
            match &on_nsn {
                Ok(Validation::Refuted { at }) => lines.push(format!("nsn: Refuted at {}", at.render(&model))),
                other => bad.push(format!("nsn: {other:?}")),
            }
            match &on_std {
                Ok(v @ Validation::ValidUpToBound { .. }) => lines.push(format!("standard: {}", v.label())),
                other => bad.push(format!("standard: {other:?}")),
            }
            ("standardization", lines, bad)
        }
        "engeler" => {
            let mut bad = Vec::new();
            for n in 1..=20u64 {
                for m in 1..=20u64 {
                    let (a, b, k) = engeler_witness(n, m);
                    let holds = engeler_disjunction(k)
                        .into_iter()
                        .find(|d| (d.a, d.b) == (a, b))
                        .map(|d| eval_open(&StdNat, &d.render(), &nm(n, m)) == Ok(true));
                    if holds != Some(true) || k > n.max(m) || a * n != b * m {
                        bad.push(format!("({n},{m}) -> ({a},{b},{k})"));
                    }
                }
            }
            let rows = engeler_disjunction(3).iter().map(|d| d.to_string()).collect::<Vec<_>>();
            ("engeler", vec![format!("k=3: {}", rows.join(" | "))], bad)
        }
        "round-trip" => {
            let seed = std::env::var("ALWB_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(20_240_601);
            let mut gen = TreeGen::new(seed);
            let mut bad = Vec::new();
            for _ in 0..1000 {
                let t = gen.term(6);
                if parse_term(&t.to_string()).as_ref() != Ok(&t) {
                    bad.push(t.to_string());
                }
                let g = gen.open(6);
                if parse_open(&g.to_string()).as_ref() != Ok(&g) {
                    bad.push(g.to_string());
                }
                let k = gen.program(6);
                if parse_program(&k.to_string()).as_ref() != Ok(&k) {
                    bad.push(k.to_string());
                }
                let f = gen.formula(6);
                if parse_formula(&f.to_string()).as_ref() != Ok(&f) {
                    bad.push(f.to_string());
                }
            }
            ("round-trip", vec![format!("seed {seed}, 1000 trees per sort")], bad)
        }
        _ => return None,
    };
    let pass = failures.is_empty();
    let detail = match failures.first() {
        None => "no failures".to_string(),
        Some(first) => format!("{} failures, first: {first}", failures.len()),
    };
    Some(SuiteReport {
        name,
        lines,
        pass,
        detail,
    })
}
