//! The representation `σ ↦ ρ_σ` of `V = (Z/p)^s` on `k[[t]]` attached to
//! a character `c` and a conductor `m`:
//! `ρ_σ(t) = t·(1 + c(σ)tᵐ)^{-1/m}`, i.e. `1/ρ_σ(t)ᵐ = 1/tᵐ + c(σ)`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand_core::RngCore;

use crate::addpoly::moore_det;
use crate::coeffring::{CoeffRing, Fe, FiniteField};
use crate::error::Error;
use crate::series::Series;

/// An element of `(Z/p)^s`, written multiplicatively as `∏ σ_i^{e_i}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElem {
    exps: Vec<u32>,
}

impl fmt::Debug for GroupElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps)
    }
}

impl GroupElem {
    pub fn new(p: u32, exps: &[i64]) -> Self {
        GroupElem { exps: exps.iter().map(|&e| e.rem_euclid(p as i64) as u32).collect() }
    }

    pub fn identity(s: usize) -> Self {
        GroupElem { exps: vec![0; s] }
    }

    /// The generator `σ_i` (0-based).
    pub fn generator(s: usize, i: usize) -> Self {
        let mut exps = vec![0; s];
        exps[i] = 1;
        GroupElem { exps }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn is_identity(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Self, p: u32) -> Self {
        GroupElem { exps: self.exps.iter().zip(&other.exps).map(|(a, b)| (a + b) % p).collect() }
    }

    pub fn inverse(&self, p: u32) -> Self {
        GroupElem { exps: self.exps.iter().map(|a| (p - a) % p).collect() }
    }
}

/// A faithful additive character `c: V → k` together with the conductor `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    field: FiniteField,
    vals: Vec<Fe>,
    m: u32,
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl Character {
    pub fn new(field: FiniteField, vals: Vec<Fe>, m: u32) -> Result<Self, Error> {
        let p = field.p();
        if vals.is_empty() {
            return Err(Error::InvalidArgument("a character needs at least one value"));
        }
        if m == 0 || gcd(m, p) != 1 || (vals.len() >= 2 && m == 1) {
            return Err(Error::ConductorNotPrimeToP);
        }
        if (vals.len() as u32) > field.degree() || moore_det(&field, &vals).is_zero() {
            return Err(Error::DependentCharacter);
        }
        Ok(Character { field, vals, m })
    }

    /// Values `(1, β, β², …)` with `β` generating `F_{p^s}` inside the
    /// smallest field `F_{p^s}` itself.
    pub fn standard(p: u32, s: usize, m: u32) -> Result<Self, Error> {
        let field = FiniteField::new(p, s as u32, None)?;
        let vals = power_basis(&field, s as u32);
        Character::new(field, vals, m)
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }
    pub fn vals(&self) -> &[Fe] {
        &self.vals
    }
    pub fn m(&self) -> u32 {
        self.m
    }
    pub fn p(&self) -> u32 {
        self.field.p()
    }
    pub fn s(&self) -> usize {
        self.vals.len()
    }
    pub fn order(&self) -> u64 {
        (self.p() as u64).pow(self.s() as u32)
    }

    /// `Σ e_i c(σ_i)`.
    pub fn value(&self, g: &GroupElem) -> Fe {
        let k = &self.field;
        g.exps.iter().zip(&self.vals).fold(Fe::ZERO, |acc, (&e, &c)| k.add(acc, k.mul(k.from_int(e as i64), c)))
    }

    pub fn generators(&self) -> Vec<GroupElem> {
        (0..self.s()).map(|i| GroupElem::generator(self.s(), i)).collect()
    }

    /// All of `V`, in lexicographic order of exponent vectors.
    pub fn elements(&self) -> Vec<GroupElem> {
        let p = self.p() as u64;
        let s = self.s();
        (0..self.order())
            .map(|code| {
                let mut exps = vec![0u32; s];
                let mut c = code;
                for i in (0..s).rev() {
                    exps[i] = (c % p) as u32;
                    c /= p;
                }
                GroupElem { exps }
            })
            .collect()
    }

    /// The restriction to the cyclic factor `⟨σ_i⟩` (0-based).
    pub fn restrict(&self, i: usize) -> Character {
        Character { field: self.field.clone(), vals: vec![self.vals[i]], m: self.m }
    }

    pub fn default_precision(&self) -> i64 {
        4 * (self.m as i64 + 1) * self.p() as i64
    }
}

/// `(1, β, …, β^{s-1})` where `β` generates `F_{p^s} ⊆ k`
/// (`β = g^{(q-1)/(p^s-1)}` for the primitive element `g`).
pub fn power_basis(k: &FiniteField, s: u32) -> Vec<Fe> {
    let q = k.size() as u64;
    let ps = (k.p() as u64).pow(s);
    let beta = if s == k.degree() && s > 1 { k.generator() } else { k.pow(k.primitive(), (q - 1) / (ps - 1)) };
    (0..s as u64).map(|i| k.pow(beta, i)).collect()
}

pub fn character_value(ch: &Character, g: &GroupElem) -> Fe {
    ch.value(g)
}

/// `inner·(1 + c·innerᵐ)^{-1/m}`: the automorphism `ρ_c` applied to `inner`.
pub fn rho_apply<R: CoeffRing>(ring: &R, c: &R::Elem, m: u32, inner: &Series<R::Elem>) -> Result<Series<R::Elem>, Error> {
    if ring.is_zero(c) {
        return Ok(inner.clone());
    }
    let base = inner.pow(ring, m as u64).scale(ring, c).add(ring, &Series::one(ring, i64::MAX / 4));
    let y = base.inverse_mth_root_unit(ring, m as u64)?;
    Ok(inner.mul(ring, &y))
}

/// `ρ_c(t) = t(1 + c tᵐ)^{-1/m}` modulo `t^prec`.
pub fn rho_series(k: &FiniteField, c: Fe, m: u32, prec: i64) -> Result<Series<Fe>, Error> {
    rho_apply(k, &c, m, &Series::var(k, prec + 1)).map(|s| s.truncate(k, prec))
}

/// Same automorphism, obtained by Newton iteration on `T^{-m} = t^{-m} + c`:
/// `T ← T + (T − (t^{-m} + c)T^{m+1})/m`.
pub fn rho_series_hensel(k: &FiniteField, c: Fe, m: u32, prec: i64) -> Result<Series<Fe>, Error> {
    let inv_m = k.from_ratio(1, m as i64)?;
    let mut t = Series::var(k, prec);
    for _ in 0..128 {
        let tm1 = t.with_prec(k, prec + m as i64).pow(k, m as u64 + 1);
        let s_tm1 = tm1.shift(-(m as i64)).add(k, &tm1.scale(k, &c));
        let next = t.add(k, &t.sub(k, &s_tm1).scale(k, &inv_m)).truncate(k, prec);
        if next == t {
            return Ok(t);
        }
        t = next;
    }
    Err(Error::NoSolution)
}

pub fn build_rho(ch: &Character, g: &GroupElem, prec: i64) -> Result<Series<Fe>, Error> {
    if prec <= ch.m() as i64 + 1 {
        return Err(Error::PrecisionTooLow);
    }
    rho_series(ch.field(), ch.value(g), ch.m(), prec)
}

/// First exponent where two series differ below their common precision.
pub fn first_difference<R: CoeffRing>(ring: &R, a: &Series<R::Elem>, b: &Series<R::Elem>) -> Option<i64> {
    let n = a.prec().min(b.prec());
    let d = a.truncate(ring, n).sub(ring, &b.truncate(ring, n));
    if d.is_zero() {
        None
    } else {
        Some(d.lead())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Discrepancy {
    pub g: GroupElem,
    pub h: GroupElem,
    pub exponent: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupLawReport {
    pub prec: i64,
    pub pairs_checked: usize,
    pub order_checked: usize,
    pub defining_equation_ok: bool,
    pub routes_agree: bool,
    pub passed: bool,
    pub first_discrepancy: Option<Discrepancy>,
}

/// Checks `ρ_g ∘ ρ_h = ρ_{gh}` on all generator pairs (all pairs when
/// `|V| ≤ 4`, plus a random sample when `|V| > 25`), the order relation
/// `ρ_σ^{∘p} = t`, the defining equation, and agreement of both
/// constructions of `ρ`.
pub fn verify_group_law(ch: &Character, prec: i64, rng: Option<&mut dyn RngCore>) -> Result<GroupLawReport, Error> {
    let k = ch.field();
    let p = ch.p();
    let mut pairs: Vec<(GroupElem, GroupElem)> = Vec::new();
    if ch.order() <= 4 {
        let els = ch.elements();
        for g in &els {
            for h in &els {
                pairs.push((g.clone(), h.clone()));
            }
        }
    } else {
        let gens = ch.generators();
        for g in &gens {
            for h in &gens {
                pairs.push((g.clone(), h.clone()));
            }
        }
        if ch.order() > 25 {
            if let Some(rng) = rng {
                let els = ch.elements();
                for _ in 0..8 {
                    let a = els[(rng.next_u64() % els.len() as u64) as usize].clone();
                    let b = els[(rng.next_u64() % els.len() as u64) as usize].clone();
                    pairs.push((a, b));
                }
            }
        }
    }

    let mut first = None;
    for (g, h) in &pairs {
        let rg = build_rho(ch, g, prec)?;
        let rh = build_rho(ch, h, prec)?;
        let lhs = rg.compose(k, &rh)?;
        let rhs = build_rho(ch, &g.mul(h, p), prec)?;
        if let Some(e) = first_difference(k, &lhs, &rhs) {
            first = Some(Discrepancy { g: g.clone(), h: h.clone(), exponent: e });
            break;
        }
    }

    let mut defining_ok = true;
    let mut routes_agree = true;
    let t = Series::var(k, prec);
    for g in ch.generators() {
        let r = build_rho(ch, &g, prec)?;
        if first.is_none() {
            let mut acc = t.clone();
            for _ in 0..p {
                acc = r.compose(k, &acc)?;
            }
            if let Some(e) = first_difference(k, &acc, &t) {
                first = Some(Discrepancy { g: g.clone(), h: g.clone(), exponent: e });
            }
        }
        routes_agree &= r == rho_series_hensel(k, ch.value(&g), ch.m(), prec)?;
        defining_ok &= defining_equation_holds(ch, &g, &r)?;
    }
    Ok(GroupLawReport {
        prec,
        pairs_checked: pairs.len(),
        order_checked: ch.s(),
        defining_equation_ok: defining_ok,
        routes_agree,
        passed: first.is_none() && defining_ok && routes_agree,
        first_discrepancy: first,
    })
}

/// `1/ρ(t)ᵐ = 1/tᵐ + c(g)` to the precision `ρ` supports.
pub fn defining_equation_holds(ch: &Character, g: &GroupElem, rho: &Series<Fe>) -> Result<bool, Error> {
    let k = ch.field();
    let m = ch.m() as i64;
    let lhs = rho.pow(k, m as u64).inverse(k)?;
    let rhs = Series::from_terms(k, &[(-m, Fe::ONE), (0, ch.value(g))], lhs.prec());
    Ok(lhs == rhs)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamificationData {
    /// `i(σ) = v(ρ_σ(t) − t)` for each `σ ≠ 1`.
    pub lower_index: Vec<(GroupElem, i64)>,
    pub ar_nontrivial: Vec<(GroupElem, i64)>,
    pub ar_identity: i64,
    pub ar_identity_expected: i64,
    /// Lower ramification jumps `i(σ) − 1`.
    pub jumps: Vec<i64>,
    pub single_jump: bool,
}

pub fn ramification_data(ch: &Character) -> Result<RamificationData, Error> {
    let k = ch.field();
    let m = ch.m() as i64;
    let prec = 2 * (m + 1) + 2;
    let t = Series::var(k, prec);
    let mut lower = Vec::new();
    for g in ch.elements().into_iter().filter(|g| !g.is_identity()) {
        let r = build_rho(ch, &g, prec)?;
        let d = r.sub(k, &t);
        lower.push((g, d.valuation(k).unwrap_or(prec)));
    }
    let ar_nontrivial = lower.iter().map(|(g, i)| (g.clone(), -i)).collect();
    let ar_identity = lower.iter().map(|(_, i)| i).sum();
    let mut jumps: Vec<i64> = lower.iter().map(|(_, i)| i - 1).collect();
    jumps.sort_unstable();
    jumps.dedup();
    Ok(RamificationData {
        ar_nontrivial,
        ar_identity,
        ar_identity_expected: (ch.order() as i64 - 1) * (m + 1),
        single_jump: jumps == [m],
        jumps,
        lower_index: lower,
    })
}
