use std::process::{Command, Output};

fn alwb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_alwb"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const LEMMA: &str = "../core/data/standard_lemma.proof";

#[test]
fn parse_prints_canonically() {
    let o = alwb(&["parse", "program", "skip"]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "skip\n"));
    let o = alwb(&["parse", "program", "if (x<y) then x:=y fi"]);
    assert_eq!(stdout(&o), "if (x < y) then x := y fi\n");
    let o = alwb(&["parse", "term", "@E"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn syntax_and_usage_errors_exit_two() {
    let o = alwb(&["parse", "formula", "(x ="]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("1:5"));
    assert_eq!(alwb(&[]).status.code(), Some(2));
    assert_eq!(alwb(&["run", "--model", "reals", "skip"]).status.code(), Some(2));
    assert_eq!(alwb(&["run", "--set", "n", "skip"]).status.code(), Some(2));
    assert_eq!(alwb(&["demo", "nothing"]).status.code(), Some(2));
    assert_eq!(alwb(&["run", "--budget", "0", "skip"]).status.code(), Some(2));
}

#[test]
fn nsn_run_reproduces_the_table() {
    let o = alwb(&[
        "run", "--model", "nsn", "--set", "n=NSN(12,0,1)", "--set", "m=NSN(15,1,2)", "--budget", "100", "--trace", "E",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    let head: Vec<&str> = out.lines().take(6).collect();
    assert_eq!(
        head,
        [
            "step | n | m",
            "0 | NSN(12,0,1) | NSN(15,1,2)",
            "3 | NSN(12,0,1) | NSN(3,1,2)",
            "6 | NSN(12,0,1) | NSN(-9,1,2)",
            "9 | NSN(12,0,1) | NSN(-21,1,2)",
            "12 | NSN(12,0,1) | NSN(-33,1,2)",
        ]
    );
    assert!(out.contains("BudgetExhausted after 100 steps"));
    assert!(out.contains("divergence: Certified"));
}

#[test]
fn standard_run_halts() {
    let o = alwb(&["run", "--set", "n=12", "--set", "m=18", "@E"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("final: {m = 6, n = 6}"));
}

#[test]
fn eval_reports_union_witness() {
    let o = alwb(&["eval", "--model", "standard", "--set", "n=4", "--set", "m=6", "@H-union-matrix"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "True\nwitness: i=2\n");
}

#[test]
fn eval_sweeps_unset_variables() {
    let o = alwb(&["eval", "@H"]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "ValidUpToBound (25 valuations)\n"));
    let o = alwb(&["eval", "((x < y) | (y < x))"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "Refuted at {x = 0, y = 0}\n");
    let o = alwb(&["eval", "--model", "nsn", "--domain", "0", "--domain", "NSN(0,1,2)", "@Th3:S"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("Refuted at {x = NSN(0,1,2)"));
}

#[test]
fn check_accepts_and_rejects() {
    let o = alwb(&["check", LEMMA]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("ACCEPTED trusting [while-as-iteration, guarded-iteration]\n"));
    for (file, at) in [
        ("standard_lemma_swapped.proof", "s11"),
        ("standard_lemma_free_var.proof", "s12"),
        ("standard_lemma_altered.proof", "s11"),
    ] {
        let o = alwb(&["check", &format!("../core/data/{file}")]);
        assert_eq!(o.status.code(), Some(1), "{file}");
        assert!(stdout(&o).ends_with(&format!("REJECTED at {at}\n")), "{file}");
    }
    assert_eq!(alwb(&["check", "no-such-file.proof"]).status.code(), Some(2));
}

#[test]
fn demos_and_suites_pass() {
    let o = alwb(&["demo", "nsn-diverge", "--budget", "1000"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("demo: nsn-diverge\nstep | n | m\n"));
    assert!(out.lines().last().unwrap().starts_with("verdict: PASS BudgetExhausted"));
    for name in [
        "standard",
        "nsn-halt",
        "oracle-sweep",
        "halting-formula",
        "axiom-instances",
        "th1-laws",
        "standardization",
        "engeler",
        "round-trip",
    ] {
        let o = alwb(&["demo", name]);
        assert_eq!(o.status.code(), Some(0), "{name}: {}", stdout(&o));
        assert!(stdout(&o).lines().last().unwrap().starts_with("verdict: PASS"), "{name}");
    }
    let o = alwb(&["demo", "standard", "--set", "n=12", "--set", "m=18"]);
    assert!(stdout(&o).ends_with("verdict: PASS final n = 6 = gcd(12,18) after 2 iterations\n"));
}

#[test]
fn json_mirrors_text() {
    let o = alwb(&["check", LEMMA, "--output", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["accepted"], true);
    assert_eq!(v["steps"].as_array().unwrap().len(), 11);
    assert_eq!(v["trusted"][1], "guarded-iteration");
    let o = alwb(&["eval", "--set", "n=4", "--set", "m=6", "@H-union-matrix", "--output", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!((v["value"].as_str(), v["witness"].as_u64()), (Some("True"), Some(2)));
}

#[test]
fn output_is_byte_identical_across_runs() {
    let args = ["demo", "oracle-sweep"];
    assert_eq!(alwb(&args).stdout, alwb(&args).stdout);
    let args = ["run", "--model", "nsn", "--set", "n=NSN(12,0,1)", "--set", "m=NSN(15,1,2)", "--trace", "--budget", "300", "@E"];
    assert_eq!(alwb(&args).stdout, alwb(&args).stdout);
}

#[test]
fn round_trip_seed_is_configurable() {
    let o = Command::new(env!("CARGO_BIN_EXE_alwb"))
        .args(["demo", "round-trip"])
        .env("ALWB_SEED", "7")
        .output()
        .unwrap();
    assert!(stdout(&o).contains("seed 7,"));
}
