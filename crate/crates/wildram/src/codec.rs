//! JSON encodings of field elements, Artin elements, series and classes.

use serde_json::{json, Value};
use wildram_core::addpoly::PPolynomial;
use wildram_core::autoreps::GroupElem;
use wildram_core::cohomology::{OneCochain, PolePartClass, TwoCochain};
use wildram_core::{ArtinAlgebra, ArtinElem, CoeffRing, Fe, FiniteField, Series};

const EXACT: i64 = i64::MAX / 4;

/// Coefficients of the polynomial representative, constant term first.
pub fn fe(k: &FiniteField, x: Fe) -> Value {
    json!(k.coeffs(x))
}

pub fn fes(k: &FiniteField, xs: &[Fe]) -> Value {
    Value::Array(xs.iter().map(|x| fe(k, *x)).collect())
}

/// One field element per power of `ε`.
pub fn artin(alg: &ArtinAlgebra, a: &ArtinElem) -> Value {
    fes(alg.base(), &alg.comps(a))
}

/// `{lead, prec, coeffs}`; `prec` is `null` for exact series.
pub fn series<R: CoeffRing>(ring: &R, s: &Series<R::Elem>, elem: impl Fn(&R::Elem) -> Value) -> Value {
    let prec = if s.prec() >= EXACT { Value::Null } else { json!(s.prec()) };
    let terms: Vec<(i64, R::Elem)> = s.terms(ring).collect();
    let (lead, coeffs) = match (terms.first(), terms.last()) {
        (Some(&(lo, _)), Some(&(hi, _))) => {
            let dense = s.dense(ring.zero(), lo, hi + 1);
            (json!(lo), dense.iter().map(&elem).collect())
        }
        _ => (Value::Null, Vec::new()),
    };
    json!({ "lead": lead, "prec": prec, "coeffs": coeffs })
}

pub fn fe_series(k: &FiniteField, s: &Series<Fe>) -> Value {
    series(k, s, |c| fe(k, *c))
}

pub fn artin_series(alg: &ArtinAlgebra, s: &Series<ArtinElem>) -> Value {
    series(alg, s, |c| artin(alg, c))
}

/// `[[ν, coeff], …]` for the terms `coeff·X^{p^ν}`.
pub fn ppoly(k: &FiniteField, f: &PPolynomial<Fe>) -> Value {
    Value::Array(f.terms().iter().map(|(nu, c)| json!([nu, fe(k, *c)])).collect())
}

/// Coefficients of `t^{-1}, …, t^{-(m+1)}`.
pub fn pole(k: &FiniteField, x: &PolePartClass) -> Value {
    fes(k, &x.coeffs)
}

pub fn one_cochain(k: &FiniteField, x: &OneCochain) -> Value {
    Value::Array(x.vals.iter().map(|v| pole(k, v)).collect())
}

/// Only the nonzero values, keyed by the pair of exponent vectors.
pub fn two_cochain_support(k: &FiniteField, elements: &[GroupElem], c: &TwoCochain) -> Value {
    let n = elements.len();
    let mut out = Vec::new();
    for (i, v) in c.vals.iter().enumerate() {
        if !v.is_zero() {
            out.push(json!({ "g": elements[i / n].exps(), "h": elements[i % n].exps(), "value": pole(k, v) }));
        }
    }
    Value::Array(out)
}

pub fn group_elem(g: &GroupElem) -> Value {
    json!(g.exps())
}
