//! Reports and golden-file comparison.

use std::path::Path;
use std::time::Instant;

use serde_json::{json, Map, Value};

use crate::codec;
use crate::config::JobConfig;
use crate::error::CliError;
use crate::tasks;

pub const REPORT_SCHEMA: &str = "wildram.report/1";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

fn millis(start: Instant) -> f64 {
    (start.elapsed().as_secs_f64() * 1e6).round() / 1e3
}

pub fn run(cfg: &JobConfig, parallel: bool) -> Result<Value, CliError> {
    let plan = tasks::plan(cfg)?;
    let start = Instant::now();
    let mut results = Map::new();
    let mut timing = Map::new();
    let mut failed = Vec::new();
    for (i, (spec, task)) in cfg.tasks.iter().zip(&plan).enumerate() {
        let t0 = Instant::now();
        let r = tasks::execute(cfg, task, i, parallel);
        timing.insert(spec.id.clone(), json!(millis(t0)));
        if r.get("passed") != Some(&Value::Bool(true)) {
            failed.push(spec.id.clone());
        }
        results.insert(spec.id.clone(), r);
    }
    let k = &cfg.field;
    let ch = &cfg.character;
    Ok(json!({
        "schema": REPORT_SCHEMA,
        "version": VERSION,
        "seed": cfg.seed,
        "config": {
            "p": k.p(),
            "d": k.degree(),
            "modulus": k.modulus(),
            "artin_order": cfg.artin_order,
            "s": ch.s(),
            "m": ch.m(),
            "vals": codec::fes(k, ch.vals()),
            "precision": cfg.precision,
            "tasks": cfg.tasks.iter().map(|t| json!({ "id": t.id, "task": t.task })).collect::<Vec<_>>(),
        },
        "tasks": results,
        "summary": { "tasks": cfg.tasks.len(), "failed": failed, "passed": failed.is_empty() },
        "timing": { "total_ms": millis(start), "tasks": timing },
    }))
}

pub fn passed(report: &Value) -> bool {
    report.pointer("/summary/passed") == Some(&Value::Bool(true))
}

/// Removes every `timing` member, at any depth.
pub fn strip_timing(v: &Value) -> Value {
    match v {
        Value::Object(o) => Value::Object(o.iter().filter(|(k, _)| *k != "timing").map(|(k, x)| (k.clone(), strip_timing(x))).collect()),
        Value::Array(a) => Value::Array(a.iter().map(strip_timing).collect()),
        x => x.clone(),
    }
}

/// Pretty JSON with a trailing newline.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

#[derive(Clone, Debug, PartialEq)]
pub struct DiffEntry {
    pub pointer: String,
    pub expected: Option<Value>,
    pub actual: Option<Value>,
}

impl DiffEntry {
    pub fn to_json(&self) -> Value {
        json!({ "pointer": self.pointer, "expected": self.expected, "actual": self.actual })
    }
}

fn escape(key: &str) -> String {
    key.replace('~', "~0").replace('/', "~1")
}

fn diff_into(ptr: &str, expected: &Value, actual: &Value, out: &mut Vec<DiffEntry>) {
    match (expected, actual) {
        (Value::Object(a), Value::Object(b)) => {
            for (k, x) in a.iter().filter(|(k, _)| *k != "timing") {
                let p = format!("{ptr}/{}", escape(k));
                match b.get(k) {
                    Some(y) => diff_into(&p, x, y, out),
                    None => out.push(DiffEntry { pointer: p, expected: Some(x.clone()), actual: None }),
                }
            }
            for (k, y) in b.iter().filter(|(k, _)| *k != "timing" && !a.contains_key(*k)) {
                out.push(DiffEntry { pointer: format!("{ptr}/{}", escape(k)), expected: None, actual: Some(y.clone()) });
            }
        }
        (Value::Array(a), Value::Array(b)) if a.len() == b.len() => {
            for (i, (x, y)) in a.iter().zip(b).enumerate() {
                diff_into(&format!("{ptr}/{i}"), x, y, out);
            }
        }
        (x, y) if x == y => {}
        (x, y) => out.push(DiffEntry { pointer: ptr.to_string(), expected: Some(x.clone()), actual: Some(y.clone()) }),
    }
}

/// Structural differences between two reports, ignoring `timing`.
pub fn diff(expected: &Value, actual: &Value) -> Vec<DiffEntry> {
    let mut out = Vec::new();
    diff_into("", expected, actual, &mut out);
    out
}

pub fn compare_golden(report: &Value, golden: &Path) -> Result<Vec<DiffEntry>, CliError> {
    if !golden.exists() {
        return Err(CliError::GoldenMissing(golden.display().to_string()));
    }
    let text = std::fs::read_to_string(golden).map_err(|source| CliError::Io { context: golden.display().to_string(), source })?;
    let expected: Value = serde_json::from_str(&text)
        .map_err(|e| CliError::invalid("", format!("golden file {} is not JSON: {e}", golden.display())))?;
    Ok(diff(&expected, report))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diff_examples() {
        let a = json!({ "tasks": { "cohomology": { "h1_dim": 2, "formula_dim": 2 } }, "timing": { "total_ms": 1.0 } });
        assert!(diff(&a, &a).is_empty());
        let mut b = a.clone();
        b["tasks"]["cohomology"]["h1_dim"] = json!(3);
        let d = diff(&a, &b);
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].pointer, "/tasks/cohomology/h1_dim");
        assert_eq!((d[0].expected.clone(), d[0].actual.clone()), (Some(json!(2)), Some(json!(3))));
        let mut c = a.clone();
        c["timing"]["total_ms"] = json!(99.0);
        assert!(diff(&a, &c).is_empty());
    }

    #[test]
    fn missing_and_extra_members() {
        let a = json!({ "x": [1, 2], "y": { "a/b": 1 } });
        let b = json!({ "x": [1], "z": 0, "y": {} });
        let ptrs: Vec<String> = diff(&a, &b).into_iter().map(|d| d.pointer).collect();
        assert_eq!(ptrs, ["/x", "/y/a~1b", "/z"]);
    }

    #[test]
    fn strip_timing_is_deep() {
        let v = json!({ "timing": 1, "a": [{ "timing": 2, "b": 3 }] });
        assert_eq!(strip_timing(&v), json!({ "a": [{ "b": 3 }] }));
    }
}
