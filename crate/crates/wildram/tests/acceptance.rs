use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use serde_json::{json, Value};
use wildram::report::{render, strip_timing};
use wildram::selftest::{Criterion, Selftest, DEFAULT_SEED};

const BUDGET: Duration = Duration::from_secs(600);

/// Criteria 3 and 4 fail as stated; pin the exact shape of the failure.
fn check_known_failure(c: &Criterion) {
    let d = &c.detail;
    match c.id {
        3 => {
            assert!(!c.passed);
            assert_eq!(d["errors"], json!([]));
            assert_eq!(d["counterexamples"].as_array().unwrap().len(), 12, "{d}");
            assert_eq!(d["exact_condition_disagreements"], json!([]));
            assert_eq!(d["discriminating"]["ok"], json!(true));
            for cx in d["counterexamples"].as_array().unwrap() {
                assert_eq!(cx["exact_condition"], json!(false), "{cx}");
            }
        }
        4 => {
            assert!(!c.passed);
            assert_eq!(d["errors"], json!([]));
            assert_eq!(d["non_cocycles"], json!(0));
            assert_eq!(d["mismatches_against_negated_formula"], json!(0));
            assert_eq!(d["mismatches_by_p"]["2"], json!(0));
            assert!(d["mismatches_by_p"]["3"].as_u64().unwrap() > 0);
            assert!(d["mismatches_by_p"]["5"].as_u64().unwrap() > 0);
        }
        _ => unreachable!(),
    }
}

fn selftest_once(out: &Path) -> (Value, Duration) {
    let t = Instant::now();
    let o = Command::new(env!("CARGO_BIN_EXE_wildram"))
        .args(["selftest", "--out"])
        .arg(out)
        .output()
        .unwrap();
    let elapsed = t.elapsed();
    // Exit 1 reflects the criteria above; anything else is a crash or config error.
    assert_eq!(o.status.code(), Some(1), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    (v, elapsed)
}

#[test]
fn acceptance() {
    let st = Selftest::new(DEFAULT_SEED, false).unwrap();
    let criteria = st.criteria();
    assert_eq!(criteria.iter().map(|c| c.id).collect::<Vec<_>>(), (1..=9).collect::<Vec<_>>());
    for c in &criteria {
        println!("{}", c.line());
        if !c.passed {
            println!("    {}", c.detail);
        }
    }

    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("acceptance");
    std::fs::create_dir_all(&dir).unwrap();
    let (a, ta) = selftest_once(&dir.join("a.json"));
    let (b, tb) = selftest_once(&dir.join("b.json"));
    let identical = render(&strip_timing(&a)) == render(&strip_timing(&b));
    let in_budget = ta < BUDGET && tb < BUDGET;
    let in_process: Vec<Value> = criteria.iter().map(Criterion::to_json).collect();
    let consistent = strip_timing(&a["criteria"]) == strip_timing(&Value::Array(in_process));
    let c10 = Criterion {
        id: 10,
        name: "deterministic selftest in budget",
        passed: identical && in_budget && consistent,
        detail: json!({ "identical": identical, "consistent": consistent, "seconds": [ta.as_secs_f64(), tb.as_secs_f64()] }),
    };
    println!("{}", c10.line());
    println!("    {}", c10.detail);

    for c in &criteria {
        match c.id {
            3 | 4 => check_known_failure(c),
            _ => assert!(c.passed, "{}: {}", c.line(), c.detail),
        }
    }
    assert!(c10.passed, "{}", c10.detail);
}
