//! `alwb`: parse, run, evaluate and check algorithmic-logic artifacts.

mod suites;

use std::path::Path;
use std::process::ExitCode;

use alwb::euclid::{self, demo_nsn_diverge, demo_nsn_halt, demo_standard, DemoReport};
use alwb::models::{Nsn, StdNat};
use alwb::proof::{parse_script, theory_axiom, CheckConfig, Checker, Theory, TheoryError};
use alwb::semantics::{
    bounded_validate_with, run_program, EvalConfig, Evaluator, RunOutcome, Structure, Trace, TruthValue,
    Validation, Valuation,
};
use alwb::syntax::{free_bool_vars, free_vars, parse, parse_formula, parse_program, Formula, Sort};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "alwb", version, about = "Algorithmic-logic workbench")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(clap::Args, Debug, Clone)]
struct Opts {
    /// Structure to interpret in.
    #[arg(long, global = true, value_enum, default_value_t = Model::Standard)]
    model: Model,
    /// Steps allowed per program run.
    #[arg(long, global = true, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
    budget: u64,
    /// Largest iteration tried for U[K] and I[K].
    #[arg(long = "iter-bound", global = true, default_value_t = 64, value_parser = clap::value_parser!(u64).range(1..))]
    iter_bound: u64,
    /// Carrier sample size for quantifiers.
    #[arg(long = "carrier-bound", global = true, default_value_t = 6, value_parser = clap::value_parser!(u64).range(1..))]
    carrier_bound: u64,
    /// Carrier sample size for variables swept by `eval`.
    #[arg(long = "var-bound", global = true, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
    var_bound: u64,
    /// Print the memory after every assignment.
    #[arg(long, global = true)]
    trace: bool,
    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    output: Output,
    /// NAME=VALUE; `?q=true` for boolean variables.
    #[arg(long = "set", global = true, value_name = "NAME=VALUE")]
    set: Vec<String>,
    /// Sweep unset variables over these values instead of the default sample.
    #[arg(long = "domain", global = true, value_name = "VALUE")]
    domain: Vec<String>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Model {
    Standard,
    Nsn,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse and pretty-print a term, open formula, program or formula.
    Parse { sort: Sort, input: String },
    /// Run a program from the valuation given by --set.
    Run { program: String },
    /// Evaluate a formula; unset free variables are swept.
    Eval { formula: String },
    /// Check a proof script.
    Check { file: String },
    /// Run a named demo or suite.
    Demo { name: String },
}

/// Exit status 2.
#[derive(Debug, thiserror::Error)]
enum UsageError {
    #[error("{0}")]
    Input(String),
}

struct Report {
    text: String,
    json: Value,
    ok: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match dispatch(&cli) {
        Ok(r) => {
            match cli.opts.output {
                Output::Text => print!("{}", r.text),
                Output::Json => println!("{}", serde_json::to_string_pretty(&r.json).expect("json values serialize")),
            }
            ExitCode::from(if r.ok { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cli: &Cli) -> Result<Report, UsageError> {
    let o = &cli.opts;
    match &cli.command {
        Command::Parse { sort, input } => cmd_parse(*sort, input),
        Command::Run { program } => {
            let k = parse_program(&resolve(program)?).map_err(|e| UsageError::Input(e.to_string()))?;
            match o.model {
                Model::Standard => cmd_run(&StdNat, &k, o),
                Model::Nsn => cmd_run(&Nsn::default(), &k, o),
            }
        }
        Command::Eval { formula } => {
            let f = parse_formula(&resolve(formula)?).map_err(|e| UsageError::Input(e.to_string()))?;
            match o.model {
                Model::Standard => cmd_eval(&StdNat, &f, o),
                Model::Nsn => cmd_eval(&Nsn::default(), &f, o),
            }
        }
        Command::Check { file } => cmd_check(file),
        Command::Demo { name } => cmd_demo(name, o),
    }
}

/// `@name` is a registered artifact and `@Th3:S` a theory axiom; an
/// existing path is read, and anything else is taken literally. A bare
/// artifact name also works.
fn resolve(input: &str) -> Result<String, UsageError> {
    if let Some(name) = input.strip_prefix('@') {
        if let Some((theory, axiom)) = name.split_once(':') {
            let th: Theory = theory.parse().map_err(|e: TheoryError| UsageError::Input(e.to_string()))?;
            return theory_axiom(th, axiom, None)
                .map(|f| f.to_string())
                .map_err(|e| UsageError::Input(e.to_string()));
        }
        return euclid::artifact_entry(name)
            .map(|a| a.text.to_string())
            .map_err(|e| UsageError::Input(e.to_string()));
    }
    if let Ok(a) = euclid::artifact_entry(input) {
        return Ok(a.text.to_string());
    }
    if Path::new(input).is_file() {
        return std::fs::read_to_string(input).map_err(|e| UsageError::Input(format!("{input}: {e}")));
    }
    Ok(input.to_string())
}

fn eval_config(o: &Opts) -> EvalConfig {
    let mut cfg = EvalConfig::default().with_budget(o.budget);
    cfg.iter_bound = o.iter_bound as usize;
    cfg.carrier_bound = o.carrier_bound as usize;
    cfg.trace_on = o.trace;
    cfg
}

fn valuation<S: Structure>(s: &S, sets: &[String]) -> Result<Valuation<S::Elem>, UsageError> {
    let mut v = Valuation::new();
    for item in sets {
        let (name, value) = item
            .split_once('=')
            .ok_or_else(|| UsageError::Input(format!("--set expects NAME=VALUE, got `{item}`")))?;
        if let Some(q) = name.trim().strip_prefix('?') {
            let b = value
                .trim()
                .parse::<bool>()
                .map_err(|_| UsageError::Input(format!("`{value}` is not true or false")))?;
            v = v.with_bool(q, b);
        } else {
            v = v.with(name.trim(), s.parse_elem(value).map_err(UsageError::Input)?);
        }
    }
    Ok(v)
}

fn cmd_parse(sort: Sort, input: &str) -> Result<Report, UsageError> {
    let tree = parse(sort, &resolve(input)?).map_err(|e| UsageError::Input(e.to_string()))?;
    Ok(Report {
        text: format!("{tree}\n"),
        json: json!({ "sort": format!("{sort:?}").to_lowercase(), "tree": tree.to_string() }),
        ok: true,
    })
}

fn trace_json<S: Structure>(s: &S, t: &Trace<S::Elem>) -> Value {
    let rows: Vec<Value> = t
        .rows
        .iter()
        .map(|r| {
            let cells: Vec<Value> = t
                .columns
                .iter()
                .map(|c| r.state.get(c).map_or(Value::Null, |e| Value::String(s.format_elem(e))))
                .collect();
            json!({ "step": r.step, "values": cells })
        })
        .collect();
    json!({ "columns": t.columns, "rows": rows })
}

fn cmd_run<S: Structure>(s: &S, k: &alwb::syntax::Program, o: &Opts) -> Result<Report, UsageError> {
    let v = valuation(s, &o.set)?;
    let cfg = eval_config(o);
    let out = run_program(s, k, &v, &cfg);
    let mut text = String::new();
    let mut json = json!({});
    if let Some(t) = out.trace().filter(|_| o.trace) {
        text.push_str(&t.render(s));
        json["trace"] = trace_json(s, t);
    }
    let ok = match &out {
        RunOutcome::Halted { final_state, steps, .. } => {
            text.push_str(&format!("Halted after {steps} steps\nfinal: {}\n", final_state.render(s)));
            json["outcome"] = json!("Halted");
            json["steps"] = json!(steps);
            json["final"] = json!(final_state.render(s));
            true
        }
        RunOutcome::BudgetExhausted {
            state,
            steps,
            active_loops,
            ..
        } => {
            let ev = Evaluator::new(s, cfg.clone());
            let certified = ev.certified_divergent(active_loops);
            text.push_str(&format!("BudgetExhausted after {steps} steps\nstate: {}\n", state.render(s)));
            if certified {
                text.push_str("divergence: Certified\n");
            }
            json["outcome"] = json!("BudgetExhausted");
            json["steps"] = json!(steps);
            json["state"] = json!(state.render(s));
            json["divergence_certified"] = json!(certified);
            false
        }
        RunOutcome::RuntimeError(e) => {
            text.push_str(&format!("RuntimeError: {e}\n"));
            json["outcome"] = json!("RuntimeError");
            json["error"] = json!(e.to_string());
            false
        }
    };
    Ok(Report { text, json, ok })
}

fn cmd_eval<S: Structure>(s: &S, f: &Formula, o: &Opts) -> Result<Report, UsageError> {
    let v = valuation(s, &o.set)?;
    let ev = Evaluator::new(s, eval_config(o));
    let mut matrix = f;
    let mut leading = Vec::new();
    while let Formula::Forall(x, a) = matrix {
        leading.push(x.clone());
        matrix = a;
    }
    let unset = leading.iter().any(|x| v.get(x).is_none())
        || free_vars(f).into_iter().any(|x| v.get(&x).is_none())
        || free_bool_vars(f).into_iter().any(|q| !v.boolean.contains_key(&q));
    if unset {
        let domain = if o.domain.is_empty() {
            s.enumerate(o.var_bound as usize)
        } else {
            o.domain
                .iter()
                .map(|d| s.parse_elem(d))
                .collect::<Result<Vec<_>, _>>()
                .map_err(UsageError::Input)?
        };
        let verdict = bounded_validate_with(&ev, f, &v, &domain).map_err(|e| UsageError::Input(e.to_string()))?;
        let (text, json) = match &verdict {
            Validation::ValidUpToBound { cases } => (
                format!("ValidUpToBound ({cases} valuations)\n"),
                json!({ "verdict": "ValidUpToBound", "cases": cases }),
            ),
            Validation::Refuted { at } => (
                format!("Refuted at {}\n", at.render(s)),
                json!({ "verdict": "Refuted", "at": at.render(s) }),
            ),
            Validation::Inconclusive { cases, unknown } => (
                format!("Inconclusive ({unknown} of {cases} valuations unknown)\n"),
                json!({ "verdict": "Inconclusive", "cases": cases, "unknown": unknown }),
            ),
        };
        return Ok(Report {
            text,
            json,
            ok: matches!(verdict, Validation::ValidUpToBound { .. }),
        });
    }
    // Every leading variable is set: evaluate the matrix there.
    let f = matrix;
    let value = ev.eval(f, &v).map_err(|e| UsageError::Input(e.to_string()))?;
    let mut text = format!("{value}\n");
    let mut json = json!({ "value": value.to_string() });
    if let Formula::IterUnion(k, a) | Formula::IterInter(k, a) = f {
        let scan = ev.iterations(k, a, &v).map_err(|e| UsageError::Input(e.to_string()))?;
        let found = match f {
            Formula::IterUnion(..) => scan.least_witness().map(|i| ("witness", i)),
            _ => scan
                .values
                .iter()
                .position(|t| *t == TruthValue::False)
                .map(|i| ("counterexample", i)),
        };
        if let Some((kind, i)) = found {
            text.push_str(&format!("{kind}: i={i}\n"));
            json[kind] = json!(i);
        }
    }
    Ok(Report {
        text,
        json,
        ok: value == TruthValue::True,
    })
}

fn cmd_check(file: &str) -> Result<Report, UsageError> {
    let text = std::fs::read_to_string(file).map_err(|e| UsageError::Input(format!("{file}: {e}")))?;
    let script = parse_script(&text).map_err(|e| UsageError::Input(format!("{file}: {e}")))?;
    let report = Checker::new(CheckConfig::default()).check_script(&script);
    let steps: Vec<Value> = report
        .steps
        .iter()
        .map(|s| json!({ "id": s.id, "verdict": s.verdict.to_string(), "note": s.note, "detail": s.detail }))
        .collect();
    let accepted = report.accepted();
    let mut json = json!({ "steps": steps, "accepted": accepted, "trusted": report.trusted });
    if let Some(f) = report.first_failure() {
        json["rejected_at"] = json!(f.id);
    }
    Ok(Report {
        text: report.render(),
        json,
        ok: accepted,
    })
}

fn demo_report<E>(r: DemoReport<E>) -> Report {
    Report {
        text: r.render(),
        json: json!({
            "demo": r.name,
            "outcome": r.outcome_label(),
            "table": r.table.lines().collect::<Vec<_>>(),
            "verdict": if r.pass { "PASS" } else { "FAIL" },
            "detail": r.detail,
        }),
        ok: r.pass,
    }
}

fn cmd_demo(name: &str, o: &Opts) -> Result<Report, UsageError> {
    let cfg = eval_config(o);
    match name {
        "standard" => {
            let v = valuation(&StdNat, &o.set)?;
            let arg = |x: &str, default: u64| -> Result<u64, UsageError> {
                v.get(x).map_or(Ok(default), |e| {
                    u64::try_from(e).map_err(|_| UsageError::Input(format!("{x} is too large")))
                })
            };
            let r = demo_standard(arg("n", 12)?, arg("m", 18)?, &cfg).map_err(|e| UsageError::Input(e.to_string()))?;
            Ok(demo_report(r))
        }
        "nsn-halt" => Ok(demo_report(demo_nsn_halt(&cfg))),
        "nsn-diverge" => Ok(demo_report(demo_nsn_diverge(&cfg))),
        other => match suites::run(other, o.var_bound as usize) {
            Some(r) => Ok(r.into_report()),
            None => Err(UsageError::Input(format!(
                "unknown demo `{other}`; expected one of {}",
                euclid::DEMOS.iter().chain(suites::NAMES).copied().collect::<Vec<_>>().join(", ")
            ))),
        },
    }
}
