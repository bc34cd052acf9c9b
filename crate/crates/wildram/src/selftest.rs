//! The acceptance grid behind `wildram selftest`.

use std::sync::OnceLock;
use std::time::Instant;

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};
use wildram_core::addpoly::{moore_swap_identity_check, root_space_check};
use wildram_core::ascover::{class_reduce, conductor, default_mu, germ_model, normalized_generators, verify_reduction, CoverRhs};
use wildram_core::autoreps::{ramification_data, verify_group_law, Character};
use wildram_core::cohomology::{check_cyclic_basis, h1_brute_force, h1_closed_formula, split_check, H1Result};
use wildram_core::deform::{rep_validate, DeformationDatum};
use wildram_core::{ArtinAlgebra, Error, Fe, FiniteField};

use crate::checks;
use crate::report::VERSION;

pub const SELFTEST_SCHEMA: &str = "wildram.selftest/1";
pub const DEFAULT_SEED: u64 = 20240601;

/// `(p, s, m)` for `p ∈ {2,3,5}`, `s ∈ {1,2}`, `m ≤ 20`, `gcd(m,p) = 1`
/// (and `m > 1` when `s = 2`), sorted.
pub fn grid() -> Vec<(u32, usize, u32)> {
    let mut out = Vec::new();
    for p in [2u32, 3, 5] {
        for s in [1usize, 2] {
            for m in 1..=20u32 {
                if m % p != 0 && (s == 1 || m > 1) {
                    out.push((p, s, m));
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct Criterion {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub detail: Value,
}

impl Criterion {
    pub fn to_json(&self) -> Value {
        json!({ "id": self.id, "name": self.name, "passed": self.passed, "detail": self.detail })
    }

    pub fn line(&self) -> String {
        format!("criterion {:>2} {:<34} {}", self.id, self.name, if self.passed { "PASS" } else { "FAIL" })
    }
}

pub struct Point {
    pub key: (u32, usize, u32),
    pub ch: Character,
    h1: OnceLock<Result<H1Result, Error>>,
}

impl Point {
    pub fn h1(&self) -> Result<&H1Result, Error> {
        self.h1.get_or_init(|| h1_brute_force(&self.ch)).as_ref().map_err(|e| *e)
    }

    fn json_key(&self) -> Value {
        json!({ "p": self.key.0, "s": self.key.1, "m": self.key.2 })
    }
}

pub struct Selftest {
    pub seed: u64,
    pub parallel: bool,
    pub points: Vec<Point>,
}

/// Results in input order either way.
fn pmap<T: Sync, U: Send>(items: &[T], parallel: bool, f: impl Fn(&T) -> U + Sync + Send) -> Vec<U> {
    if parallel {
        items.par_iter().map(f).collect()
    } else {
        items.iter().map(f).collect()
    }
}

fn key_json(key: (u32, usize, u32)) -> Value {
    json!({ "p": key.0, "s": key.1, "m": key.2 })
}

fn failure(pt: &Point, e: Error) -> Value {
    let mut v = pt.json_key();
    v["error"] = json!(e.to_string());
    v
}

impl Selftest {
    pub fn new(seed: u64, parallel: bool) -> Result<Self, Error> {
        let points = grid()
            .into_iter()
            .map(|key| Ok(Point { key, ch: Character::standard(key.0, key.1, key.2)?, h1: OnceLock::new() }))
            .collect::<Result<_, Error>>()?;
        Ok(Selftest { seed, parallel, points })
    }

    /// An independent stream per criterion and grid point.
    fn rng(&self, criterion: u32, key: (u32, usize, u32)) -> ChaCha8Rng {
        let mut r = ChaCha8Rng::seed_from_u64(self.seed);
        r.set_stream(((criterion as u64) << 32) | ((key.0 as u64) << 16) | ((key.1 as u64) << 8) | key.2 as u64);
        r
    }

    fn sweep(&self, select: impl Fn(&Point) -> bool + Sync, f: impl Fn(&Point) -> Result<Option<Value>, Error> + Sync + Send) -> (usize, Vec<Value>) {
        let pts: Vec<&Point> = self.points.iter().filter(|p| select(p)).collect();
        let bad = pmap(&pts, self.parallel, |pt| match f(pt) {
            Ok(x) => x,
            Err(e) => Some(failure(pt, e)),
        });
        (pts.len(), bad.into_iter().flatten().collect())
    }

    pub fn cohomology_formula(&self) -> Criterion {
        let (n, bad) = self.sweep(
            |_| true,
            |pt| {
                let (p, s, m) = pt.key;
                let brute = pt.h1()?.dim as i64;
                let formula = h1_closed_formula(p, s, m).dim;
                Ok((brute != formula).then(|| json!({ "p": p, "s": s, "m": m, "brute_force": brute, "formula": formula })))
            },
        );
        Criterion { id: 1, name: "cohomology formula vs brute force", passed: bad.is_empty(), detail: json!({ "points": n, "mismatches": bad }) }
    }

    pub fn cyclic_basis(&self) -> Criterion {
        let pts: Vec<&Point> = self.points.iter().filter(|p| p.key.1 == 1).collect();
        let rows = pmap(&pts, self.parallel, |pt| check_cyclic_basis(&pt.ch));
        let mut bad = Vec::new();
        let mut leading_only = Vec::new();
        for (pt, r) in pts.iter().zip(rows) {
            match r {
                Ok(cb) => {
                    if !cb.holds() {
                        let mut v = pt.json_key();
                        v["rank"] = json!(cb.rank);
                        v["h1_dim"] = json!(cb.h1_dim);
                        v["leading_terms"] = json!(cb.leading_terms);
                        bad.push(v);
                    } else if !cb.all_cocycles {
                        leading_only.push(pt.json_key());
                    }
                }
                Err(e) => bad.push(failure(pt, e)),
            }
        }
        Criterion {
            id: 2,
            name: "cyclic basis spans H1",
            passed: bad.is_empty(),
            detail: json!({ "points": pts.len(), "failures": bad, "leading_terms_only": leading_only }),
        }
    }

    pub fn splitting(&self) -> Criterion {
        let pts: Vec<&Point> = self.points.iter().filter(|p| p.key.1 == 2).collect();
        let rows = pmap(&pts, self.parallel, |pt| -> Result<Value, Error> {
            let sc = split_check(&pt.ch, pt.h1()?)?;
            let mut v = pt.json_key();
            v["condition"] = json!(sc.condition.holds);
            v["exact_condition"] = json!(sc.exact_condition.holds);
            v["dim"] = json!(sc.dim);
            v["cyclic_dims"] = json!(sc.cyclic_dims);
            v["dims_split"] = json!(sc.dims_split());
            Ok(v)
        });
        let mut errors = Vec::new();
        let mut with_condition = 0;
        let mut counterexamples = Vec::new();
        let mut exact_disagreements = Vec::new();
        let mut discriminating = Value::Null;
        for (pt, r) in pts.iter().zip(rows) {
            let v = match r {
                Ok(v) => v,
                Err(e) => {
                    errors.push(failure(pt, e));
                    continue;
                }
            };
            let split = v["dims_split"] == json!(true);
            if v["condition"] == json!(true) {
                with_condition += 1;
                if !split {
                    counterexamples.push(v.clone());
                }
            }
            if (v["exact_condition"] == json!(true)) != split {
                exact_disagreements.push(v.clone());
            }
            if pt.key == (3, 2, 2) {
                let sum: u64 = v["cyclic_dims"].as_array().unwrap().iter().filter_map(Value::as_u64).sum();
                discriminating = json!({
                    "p": 3, "s": 2, "m": 2,
                    "condition": v["condition"],
                    "dim": v["dim"],
                    "cyclic_sum": sum,
                    "ok": v["condition"] == json!(false) && v["dim"] == json!(3) && sum == 4,
                });
            }
        }
        let passed = errors.is_empty() && counterexamples.is_empty() && discriminating["ok"] == json!(true);
        Criterion {
            id: 3,
            name: "splitting criterion",
            passed,
            detail: json!({
                "points": pts.len(),
                "points_with_condition": with_condition,
                "counterexamples": counterexamples,
                "exact_condition_disagreements": exact_disagreements,
                "discriminating": discriminating,
                "errors": errors,
            }),
        }
    }

    pub fn tangent_formula(&self) -> Criterion {
        const EXHAUSTIVE: [(u32, usize, u32); 6] = [(2, 1, 3), (2, 1, 5), (2, 1, 7), (3, 1, 2), (3, 1, 4), (3, 1, 5)];
        let tasks: Vec<&Point> = self.points.iter().collect();
        let rows = pmap(&tasks, self.parallel, |pt| -> Result<[usize; 4], Error> {
            let data: Vec<DeformationDatum> = if EXHAUSTIVE.contains(&pt.key) {
                exhaustive_data(&pt.ch)?
            } else {
                let mut rng = self.rng(4, pt.key);
                (0..20).map(|_| DeformationDatum::random(&pt.ch, &mut rng)).collect()
            };
            let mut row = [data.len(), 0, 0, 0];
            for d in &data {
                let x = checks::extract(d)?;
                row[1] += !x.matches_formula() as usize;
                row[2] += !x.matches_rederived() as usize;
                row[3] += !x.is_cocycle as usize;
            }
            Ok(row)
        });
        let mut checked = 0;
        let mut by_p = serde_json::Map::new();
        let (mut literal, mut rederived, mut non_cocycles) = (0, 0, 0);
        let mut errors = Vec::new();
        let mut exhaustive = 0;
        for (pt, r) in tasks.iter().zip(rows) {
            match r {
                Ok([n, a, b, c]) => {
                    checked += n;
                    if EXHAUSTIVE.contains(&pt.key) {
                        exhaustive += n;
                    }
                    literal += a;
                    rederived += b;
                    non_cocycles += c;
                    let e = by_p.entry(pt.key.0.to_string()).or_insert(json!(0));
                    *e = json!(e.as_u64().unwrap() + a as u64);
                }
                Err(e) => errors.push(failure(pt, e)),
            }
        }
        Criterion {
            id: 4,
            name: "tangent cocycle vs closed formula",
            passed: errors.is_empty() && literal == 0 && non_cocycles == 0,
            detail: json!({
                "data": checked,
                "exhaustive_data": exhaustive,
                "mismatches": literal,
                "mismatches_by_p": by_p,
                "mismatches_against_negated_formula": rederived,
                "non_cocycles": non_cocycles,
                "errors": errors,
            }),
        }
    }

    pub fn group_law(&self) -> Criterion {
        let (n, bad) = self.sweep(
            |_| true,
            |pt| {
                let mut rng = self.rng(5, pt.key);
                let r = verify_group_law(&pt.ch, pt.ch.default_precision(), Some(&mut rng))?;
                Ok((!r.passed).then(|| {
                    let mut v = pt.json_key();
                    v["defining_equation_ok"] = json!(r.defining_equation_ok);
                    v["routes_agree"] = json!(r.routes_agree);
                    v["first_discrepancy_exponent"] = json!(r.first_discrepancy.map(|d| d.exponent));
                    v
                }))
            },
        );
        Criterion { id: 5, name: "defining equation and group law", passed: bad.is_empty(), detail: json!({ "points": n, "failures": bad }) }
    }

    pub fn artin_schreier(&self) -> Criterion {
        let (n, bad) = self.sweep(
            |_| true,
            |pt| {
                let ch = &pt.ch;
                let k = ch.field();
                let model = germ_model(ch, &default_mu(ch))?;
                let CoverRhs::Germ(g) = &model.downstairs.rhs else { return Err(Error::InvalidArgument("symbolic germ")) };
                let cls = class_reduce(k, g, ch.s() as u32)?;
                let cond = conductor(k, &cls)?;
                let ram = ramification_data(ch)?;
                let witness = verify_reduction(k, g, &cls);
                let ok = witness && cond == ch.m() as i64 && ram.single_jump && ram.jumps == [cond];
                Ok((!ok).then(|| {
                    let mut v = pt.json_key();
                    v["conductor"] = json!(cond);
                    v["jumps"] = json!(ram.jumps);
                    v["witness_verified"] = json!(witness);
                    v
                }))
            },
        );
        Criterion { id: 6, name: "Artin-Schreier pipeline", passed: bad.is_empty(), detail: json!({ "points": n, "failures": bad }) }
    }

    pub fn normalization(&self) -> Criterion {
        let (n, shift_bad) = self.sweep(
            |pt| pt.key.1 == 2,
            |pt| {
                let ok = normalized_generators(&pt.ch)?.iter().all(|g| g.shift_check.iter().all(|&b| b));
                Ok((!ok).then(|| pt.json_key()))
            },
        );
        let fields = small_fields();
        let rows = pmap(&fields, self.parallel, |&(p, d)| exhaustive_moore(p, d));
        let mut tuples = 0;
        let mut moore_bad = Vec::new();
        let mut roots_bad = Vec::new();
        let mut errors = Vec::new();
        for (&(p, d), r) in fields.iter().zip(rows) {
            match r {
                Ok((n, a, b)) => {
                    tuples += n;
                    if a > 0 {
                        moore_bad.push(json!({ "p": p, "d": d, "failures": a }));
                    }
                    if b > 0 {
                        roots_bad.push(json!({ "p": p, "d": d, "failures": b }));
                    }
                }
                Err(e) => errors.push(json!({ "p": p, "d": d, "error": e.to_string() })),
            }
        }
        Criterion {
            id: 7,
            name: "normalization identities",
            passed: shift_bad.is_empty() && moore_bad.is_empty() && roots_bad.is_empty() && errors.is_empty(),
            detail: json!({
                "shift_points": n,
                "shift_failures": shift_bad,
                "fields": fields.len(),
                "tuples": tuples,
                "moore_swap_failures": moore_bad,
                "root_space_failures": roots_bad,
                "errors": errors,
            }),
        }
    }

    pub fn obstruction(&self) -> Criterion {
        let cases: Vec<(&Point, usize)> = self.points.iter().flat_map(|pt| [(pt, 2), (pt, 3)]).collect();
        let rows = pmap(&cases, self.parallel, |&(pt, n)| -> Result<checks::ObstructionOutcome, Error> {
            let mut rng = self.rng(8, pt.key);
            rng.set_word_pos(n as u128 * (1 << 40));
            let (rep, ft) = checks::random_matrix_data(&pt.ch, n, &mut rng)?;
            checks::obstruction(&rep, &ft)
        });
        let mut bad = Vec::new();
        let mut at_identity = Vec::new();
        for ((pt, n), r) in cases.iter().zip(rows) {
            match r {
                Ok(o) => {
                    if !o.passed() {
                        let mut v = pt.json_key();
                        v["artin_order"] = json!(n);
                        v["rep_valid"] = json!(o.rep_valid);
                        v["matrix_lifts_vanish"] = json!(o.matrix_lifts_vanish());
                        v["perturbed_nonzero_coboundary"] = json!(o.perturbed_nonzero_coboundary());
                        bad.push(v);
                    }
                    if o.perturbed_at.is_identity() && *n == 2 {
                        at_identity.push(pt.json_key());
                    }
                }
                Err(e) => {
                    let mut v = failure(pt, e);
                    v["artin_order"] = json!(n);
                    bad.push(v);
                }
            }
        }
        Criterion {
            id: 8,
            name: "obstruction vanishing",
            passed: bad.is_empty(),
            detail: json!({ "cases": cases.len(), "failures": bad, "perturbed_at_identity": at_identity }),
        }
    }

    pub fn conjugation(&self) -> Criterion {
        const CONJUGATORS: usize = 20;
        let (n, bad) = self.sweep(
            |_| true,
            |pt| {
                let mut rng = self.rng(9, pt.key);
                let d = DeformationDatum::random(&pt.ch, &mut rng);
                let alg = ArtinAlgebra::dual(pt.ch.field().clone());
                let x = checks::extract(&d)?;
                let mut failures = 0;
                for _ in 0..CONJUGATORS {
                    let (mu, lam0) = checks::random_conjugator(&alg, &mut rng);
                    let c = checks::conjugation(&d, &x.extracted, &mu, &lam0)?;
                    failures += !(c.valid && c.same_class) as usize;
                }
                Ok((failures > 0 || !rep_validate(&d.rep).valid).then(|| {
                    let mut v = pt.json_key();
                    v["failures"] = json!(failures);
                    v
                }))
            },
        );
        Criterion {
            id: 9,
            name: "conjugation invariance",
            passed: bad.is_empty(),
            detail: json!({ "points": n, "conjugators_per_point": CONJUGATORS, "failures": bad }),
        }
    }

    pub fn criteria(&self) -> Vec<Criterion> {
        vec![
            self.cohomology_formula(),
            self.cyclic_basis(),
            self.splitting(),
            self.tangent_formula(),
            self.group_law(),
            self.artin_schreier(),
            self.normalization(),
            self.obstruction(),
            self.conjugation(),
        ]
    }
}

/// Every valid first-order datum over the prime field with `s = 1`.
fn exhaustive_data(ch: &Character) -> Result<Vec<DeformationDatum>, Error> {
    let k = ch.field();
    let q = k.size() as usize;
    let m = ch.m() as usize;
    let mut out = Vec::new();
    for code in 0..q.pow(m as u32 + 2) {
        let digits: Vec<Fe> = (0..m + 2).map(|i| Fe(((code / q.pow(i as u32)) % q) as u16)).collect();
        let d = DeformationDatum::new(ch, &digits[0..1], &digits[1..2], &digits[2..])?;
        if rep_validate(&d.rep).valid {
            out.push(d);
        }
    }
    Ok(out)
}

/// `(p, d)` with `p^d ≤ 64`.
pub fn small_fields() -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for p in (2..=64u32).filter(|&p| wildram_core::coeffring::is_prime(p)) {
        let mut d = 1;
        while p.pow(d) <= 64 {
            out.push((p, d));
            d += 1;
        }
    }
    out
}

/// All ordered `F_p`-independent tuples of length `s ≤ min(d, 3)` in `F_{p^d}`:
/// (tuples, Moore swap failures, root-space failures).
fn exhaustive_moore(p: u32, d: u32) -> Result<(usize, usize, usize), Error> {
    let k = FiniteField::new(p, d, None)?;
    let m = p + 1;
    let mut counts = (0, 0, 0);
    let units: Vec<Fe> = k.elements().filter(|x| !x.is_zero()).collect();
    for s in 1..=d.min(3) as usize {
        let mut stack: Vec<Vec<Fe>> = vec![Vec::new()];
        while let Some(t) = stack.pop() {
            if t.len() == s {
                let ch = Character::new(k.clone(), t, m)?;
                counts.0 += 1;
                let swap = (1..=s).map(|i| moore_swap_identity_check(&ch, i)).collect::<Result<Vec<_>, _>>()?;
                counts.1 += !swap.iter().all(|&b| b) as usize;
                counts.2 += !root_space_check(&ch)? as usize;
                continue;
            }
            for &x in &units {
                let mut u = t.clone();
                u.push(x);
                if k.fp_independent(&u) {
                    stack.push(u);
                }
            }
        }
    }
    Ok(counts)
}

pub fn report(seed: u64, parallel: bool) -> Result<(Value, Vec<Criterion>), Error> {
    let start = Instant::now();
    let st = Selftest::new(seed, parallel)?;
    let mut crits = Vec::new();
    let mut timing = serde_json::Map::new();
    for f in [
        Selftest::cohomology_formula,
        Selftest::cyclic_basis,
        Selftest::splitting,
        Selftest::tangent_formula,
        Selftest::group_law,
        Selftest::artin_schreier,
        Selftest::normalization,
        Selftest::obstruction,
        Selftest::conjugation,
    ] {
        let t0 = Instant::now();
        let c = f(&st);
        timing.insert(c.id.to_string(), json!((t0.elapsed().as_secs_f64() * 1e3).round()));
        crits.push(c);
    }
    let failed: Vec<u32> = crits.iter().filter(|c| !c.passed).map(|c| c.id).collect();
    let v = json!({
        "schema": SELFTEST_SCHEMA,
        "version": VERSION,
        "seed": seed,
        "grid": grid().into_iter().map(key_json).collect::<Vec<_>>(),
        "criteria": crits.iter().map(Criterion::to_json).collect::<Vec<_>>(),
        "summary": { "criteria": crits.len(), "failed": failed, "passed": failed.is_empty() },
        "timing": { "total_ms": (start.elapsed().as_secs_f64() * 1e3).round(), "criteria_ms": timing },
    });
    Ok((v, crits))
}
