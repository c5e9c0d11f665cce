use alwb::euclid::{gcd_oracle, program};
use alwb::models::StdNat;
use alwb::par::{map_range, ExecMode};
use alwb::proof::corpus;
use alwb::semantics::{bounded_validate, run_program, EvalConfig, Evaluator, Valuation};
use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use num_bigint::BigUint;

const MODES: [(&str, ExecMode); 2] = [("sequential", ExecMode::Sequential), ("parallel", ExecMode::Parallel)];

fn oracle_sweep(c: &mut Criterion) {
    let e = program("E").unwrap();
    let cfg = EvalConfig::default();
    let mut group = c.benchmark_group("oracle_sweep_64x64");
    for (name, mode) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &mode, |b, &mode| {
            b.iter(|| {
                let wrong = map_range(mode, 64 * 64, |i| {
                    let (n, m) = (i as u64 / 64 + 1, i as u64 % 64 + 1);
                    let v = Valuation::new().with("n", BigUint::from(n)).with("m", BigUint::from(m));
                    let out = run_program(&StdNat, &e, &v, &cfg);
                    out.final_state().and_then(|f| f.get("n")) != Some(&BigUint::from(gcd_oracle(n, m).unwrap()))
                });
                black_box(wrong.iter().filter(|w| **w).count())
            })
        });
    }
    group.finish();
}

fn validation_sweep(c: &mut Criterion) {
    let instances = corpus::axiom_instances().unwrap();
    let mut group = c.benchmark_group("axiom_validation_bound4");
    group.sample_size(20);
    for (name, mode) in MODES {
        let ev_cfg = EvalConfig::default().with_budget(200).with_mode(mode);
        group.bench_with_input(BenchmarkId::from_parameter(name), &ev_cfg, |b, cfg| {
            let ev = Evaluator::new(&StdNat, cfg.clone());
            b.iter(|| {
                for (_, f) in &instances {
                    black_box(bounded_validate(&ev, f, 4).unwrap());
                }
            })
        });
    }
    group.finish();
}

criterion_group!(benches, oracle_sweep, validation_sweep);
criterion_main!(benches);
