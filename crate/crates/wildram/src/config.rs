//! Job descriptions: parsing and validation with JSON-pointer errors.

use serde_json::{Map, Value};
use wildram_core::autoreps::Character;
use wildram_core::{ArtinAlgebra, Fe, FiniteField};

use crate::error::CliError;

pub const TASKS: [&str; 5] = ["rho", "cohomology", "ascover", "deform", "predicates"];

#[derive(Clone, Debug)]
pub struct TaskSpec {
    pub task: String,
    pub id: String,
    pub params: Map<String, Value>,
    pub pointer: String,
}

#[derive(Clone, Debug)]
pub struct JobConfig {
    pub field: FiniteField,
    pub artin_order: usize,
    pub character: Character,
    pub precision: i64,
    pub seed: u64,
    pub tasks: Vec<TaskSpec>,
}

fn at<'a>(v: &'a Value, ptr: &str, key: &str) -> Result<&'a Value, CliError> {
    v.get(key).ok_or_else(|| CliError::invalid(format!("{ptr}/{key}"), "missing"))
}

pub fn as_u64(v: &Value, ptr: &str) -> Result<u64, CliError> {
    v.as_u64().ok_or_else(|| CliError::invalid(ptr, "expected a non-negative integer"))
}

pub fn as_u32(v: &Value, ptr: &str) -> Result<u32, CliError> {
    u32::try_from(as_u64(v, ptr)?).map_err(|_| CliError::invalid(ptr, "integer out of range"))
}

pub fn as_array<'a>(v: &'a Value, ptr: &str) -> Result<&'a Vec<Value>, CliError> {
    v.as_array().ok_or_else(|| CliError::invalid(ptr, "expected an array"))
}

/// A field element given as its coefficient list, or as a bare integer
/// for prime-field elements.
pub fn parse_fe(k: &FiniteField, v: &Value, ptr: &str) -> Result<Fe, CliError> {
    let cs: Vec<u32> = match v {
        Value::Number(_) => vec![as_u32(v, ptr)?],
        Value::Array(a) => a.iter().enumerate().map(|(i, x)| as_u32(x, &format!("{ptr}/{i}"))).collect::<Result<_, _>>()?,
        _ => return Err(CliError::invalid(ptr, "expected a coefficient list")),
    };
    if cs.len() > k.degree() as usize {
        return Err(CliError::invalid(ptr, format!("at most {} coefficients", k.degree())));
    }
    if cs.iter().any(|&c| c >= k.p()) {
        return Err(CliError::invalid(ptr, format!("coefficients must be below {}", k.p())));
    }
    k.from_coeffs(&cs).map_err(|e| CliError::invalid(ptr, e.to_string()))
}

pub fn parse_fes(k: &FiniteField, v: &Value, ptr: &str, len: Option<usize>) -> Result<Vec<Fe>, CliError> {
    let a = as_array(v, ptr)?;
    if let Some(n) = len {
        if a.len() != n {
            return Err(CliError::invalid(ptr, format!("expected {n} entries, found {}", a.len())));
        }
    }
    a.iter().enumerate().map(|(i, x)| parse_fe(k, x, &format!("{ptr}/{i}"))).collect()
}

fn parse_field(v: &Value) -> Result<FiniteField, CliError> {
    let p = as_u32(at(v, "/field", "p")?, "/field/p")?;
    let d = match v.get("d") {
        Some(x) => as_u32(x, "/field/d")?,
        None => 1,
    };
    let modulus = match v.get("modulus") {
        Some(Value::Null) | None => None,
        Some(x) => Some(
            as_array(x, "/field/modulus")?
                .iter()
                .enumerate()
                .map(|(i, c)| as_u32(c, &format!("/field/modulus/{i}")))
                .collect::<Result<Vec<_>, _>>()?,
        ),
    };
    if d == 0 {
        return Err(CliError::invalid("/field/d", "degree must be positive"));
    }
    FiniteField::new(p, d, modulus.as_deref()).map_err(|e| {
        let ptr = match e {
            wildram_core::Error::NonPrimeP(_) => "/field/p",
            wildram_core::Error::ReducibleModulus => "/field/modulus",
            _ => "/field",
        };
        CliError::invalid(ptr, e.to_string())
    })
}

fn parse_character(k: &FiniteField, v: &Value) -> Result<Character, CliError> {
    let s = as_u32(at(v, "/character", "s")?, "/character/s")? as usize;
    let m = as_u32(at(v, "/character", "m")?, "/character/m")?;
    if s == 0 {
        return Err(CliError::invalid("/character/s", "rank must be positive"));
    }
    if m == 0 {
        return Err(CliError::invalid("/character/m", "conductor must be positive"));
    }
    let vals = parse_fes(k, at(v, "/character", "vals")?, "/character/vals", Some(s))?;
    Character::new(k.clone(), vals, m).map_err(|e| {
        let ptr = match e {
            wildram_core::Error::ConductorNotPrimeToP => "/character/m",
            _ => "/character/vals",
        };
        CliError::invalid(ptr, e.to_string())
    })
}

fn parse_tasks(v: &Value) -> Result<Vec<TaskSpec>, CliError> {
    let mut out: Vec<TaskSpec> = Vec::new();
    for (i, t) in as_array(v, "/tasks")?.iter().enumerate() {
        let ptr = format!("/tasks/{i}");
        let obj = t.as_object().ok_or_else(|| CliError::invalid(&ptr, "expected an object"))?;
        let name = obj
            .get("task")
            .and_then(Value::as_str)
            .ok_or_else(|| CliError::invalid(format!("{ptr}/task"), "expected a task name"))?;
        if !TASKS.contains(&name) {
            return Err(CliError::UnknownTask { pointer: format!("{ptr}/task"), name: name.to_string() });
        }
        let id = match obj.get("id") {
            None => name.to_string(),
            Some(x) => x.as_str().ok_or_else(|| CliError::invalid(format!("{ptr}/id"), "expected a string"))?.to_string(),
        };
        if id.is_empty() || id.contains('/') || id.contains('~') {
            return Err(CliError::invalid(format!("{ptr}/id"), "ids must be nonempty and free of '/' and '~'"));
        }
        if out.iter().any(|o| o.id == id) {
            return Err(CliError::invalid(format!("{ptr}/id"), format!("duplicate task id {id:?}")));
        }
        let params = obj.iter().filter(|(k, _)| *k != "task" && *k != "id").map(|(k, v)| (k.clone(), v.clone())).collect();
        out.push(TaskSpec { task: name.to_string(), id, params, pointer: ptr });
    }
    Ok(out)
}

impl JobConfig {
    pub fn from_json(v: &Value) -> Result<Self, CliError> {
        if !v.is_object() {
            return Err(CliError::invalid("", "expected an object"));
        }
        let field = parse_field(at(v, "", "field")?)?;
        let artin_order = match v.get("artin_order") {
            Some(x) => as_u32(x, "/artin_order")? as usize,
            None => 2,
        };
        ArtinAlgebra::new(field.clone(), artin_order).map_err(|e| CliError::invalid("/artin_order", e.to_string()))?;
        if artin_order < 2 {
            return Err(CliError::invalid("/artin_order", "need at least the dual numbers"));
        }
        let character = parse_character(&field, at(v, "", "character")?)?;
        let precision = match v.get("precision") {
            Some(x) => {
                let n = as_u32(x, "/precision")? as i64;
                if n <= character.m() as i64 + 1 {
                    return Err(CliError::invalid("/precision", "precision must exceed m+1"));
                }
                n
            }
            None => character.default_precision(),
        };
        let seed = match v.get("seed") {
            Some(x) => as_u64(x, "/seed")?,
            None => 0,
        };
        let tasks = parse_tasks(at(v, "", "tasks")?)?;
        Ok(JobConfig { field, artin_order, character, precision, seed, tasks })
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let v: Value = serde_json::from_str(text).map_err(|e| CliError::invalid("", format!("malformed JSON: {e}")))?;
        Self::from_json(&v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn base() -> Value {
        json!({ "field": { "p": 2, "d": 2 }, "character": { "s": 2, "m": 3, "vals": [[1], [0, 1]] }, "tasks": [] })
    }

    fn pointer_of(v: Value) -> String {
        match JobConfig::from_json(&v).unwrap_err() {
            CliError::ConfigInvalid { pointer, .. } | CliError::UnknownTask { pointer, .. } => pointer,
            e => panic!("{e}"),
        }
    }

    #[test]
    fn parses_defaults() {
        let c = JobConfig::from_json(&base()).unwrap();
        assert_eq!((c.artin_order, c.precision, c.seed), (2, 32, 0));
        assert_eq!(c.character.vals()[1], c.field.generator());
    }

    #[test]
    fn errors_carry_pointers() {
        let mut v = base();
        v["character"]["vals"] = json!([[1]]);
        assert_eq!(pointer_of(v), "/character/vals");
        let mut v = base();
        v["character"]["vals"] = json!([[1], [1]]);
        assert_eq!(pointer_of(v), "/character/vals");
        let mut v = base();
        v["character"]["vals"] = json!([[1], [0, 2]]);
        assert_eq!(pointer_of(v), "/character/vals/1");
        let mut v = base();
        v["character"]["m"] = json!(4);
        assert_eq!(pointer_of(v), "/character/m");
        let mut v = base();
        v["field"]["p"] = json!(4);
        assert_eq!(pointer_of(v), "/field/p");
        let mut v = base();
        v.as_object_mut().unwrap().remove("tasks");
        assert_eq!(pointer_of(v), "/tasks");
        let mut v = base();
        v["tasks"] = json!([{ "task": "rho" }, { "task": "frobnicate" }]);
        assert_eq!(pointer_of(v), "/tasks/1/task");
        let mut v = base();
        v["tasks"] = json!([{ "task": "rho" }, { "task": "rho" }]);
        assert_eq!(pointer_of(v), "/tasks/1/id");
    }
}
