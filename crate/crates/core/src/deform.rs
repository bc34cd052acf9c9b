//! Matrix deformations of the two-dimensional representation and the
//! automorphisms of `A[[t]]` they induce.
//!
//! A deformation over `A = k[ε]/εⁿ` is a lower-triangular matrix datum
//! `σ ↦ [[1, 0], [C(σ), λ(σ)]]` acting on the basis `1, f̃`, so that
//! `ρ̃_σ(f̃) = λ(σ)f̃ + C(σ)`. The automorphism `ρ̃_σ(t)` is recovered by
//! lifting along the `ε`-adic filtration.

use alloc::vec;
use alloc::vec::Vec;

use crate::autoreps::{build_rho, rho_apply, Character, GroupElem};
use crate::coeffring::{ArtinAlgebra, ArtinElem, CoeffRing, Fe, FiniteField};
use crate::cohomology::{elem_index, is_cocycle, CoboundaryTester, OneCochain, PolePartClass, TwoCochain};
use crate::error::Error;
use crate::linalg::RowSpace;
use crate::series::Series;
use rand_core::RngCore;

const EXACT: i64 = i64::MAX / 4;

/// Lower-left entries `C` and diagonal entries `λ` on the generators of `V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixRep {
    alg: ArtinAlgebra,
    ch: Character,
    c: Vec<ArtinElem>,
    lam: Vec<ArtinElem>,
}

impl MatrixRep {
    pub fn new(alg: ArtinAlgebra, ch: Character, c: Vec<ArtinElem>, lam: Vec<ArtinElem>) -> Result<Self, Error> {
        if c.len() != ch.s() || lam.len() != ch.s() {
            return Err(Error::InvalidArgument("one matrix entry per generator expected"));
        }
        if alg.base() != ch.field() {
            return Err(Error::RingMismatch);
        }
        Ok(MatrixRep { alg, ch, c, lam })
    }

    /// `C = c`, `λ = 1`.
    pub fn trivial(alg: ArtinAlgebra, ch: Character) -> Self {
        let c = ch.vals().iter().map(|v| alg.embed(*v)).collect();
        let lam = vec![alg.one(); ch.s()];
        MatrixRep { alg, ch, c, lam }
    }

    pub fn alg(&self) -> &ArtinAlgebra {
        &self.alg
    }

    pub fn ch(&self) -> &Character {
        &self.ch
    }

    pub fn c_gens(&self) -> &[ArtinElem] {
        &self.c
    }

    pub fn lam_gens(&self) -> &[ArtinElem] {
        &self.lam
    }

    /// `(C(g), λ(g))` extended from the generators by
    /// `C(gσ_i) = C(g) + λ(g)C(σ_i)`, `λ(gσ_i) = λ(g)λ(σ_i)`.
    pub fn value(&self, g: &GroupElem) -> (ArtinElem, ArtinElem) {
        let a = &self.alg;
        let (mut c, mut lam) = (a.zero(), a.one());
        for (i, &e) in g.exps().iter().enumerate() {
            for _ in 0..e {
                c = a.add(&c, &a.mul(&lam, &self.c[i]));
                lam = a.mul(&lam, &self.lam[i]);
            }
        }
        (c, lam)
    }

    /// The same datum read in `F_q[ε]/εᵏ`.
    pub fn reduce_to(&self, k: usize) -> Result<MatrixRep, Error> {
        let alg = ArtinAlgebra::new(self.ch.field().clone(), k)?;
        let red = |v: &Vec<ArtinElem>| v.iter().map(|x| self.alg.reduce_to(x, k)).collect();
        Ok(MatrixRep { c: red(&self.c), lam: red(&self.lam), alg, ch: self.ch.clone() })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepReport {
    /// `C ≡ c` and `λ ≡ 1` modulo `m_A`.
    pub reduction_ok: bool,
    /// `λ(σ_i)^p = 1` and `C(σ_i)·Σ_{ν<p} λ(σ_i)^ν = 0`.
    pub order_ok: bool,
    /// `C(σ_i) + λ(σ_i)C(σ_j) = C(σ_j) + λ(σ_j)C(σ_i)`.
    pub commuting_ok: bool,
    /// The extension to `V` satisfies the product rule on all of `V × V`.
    pub homomorphism_ok: bool,
    pub valid: bool,
}

pub fn rep_validate(rep: &MatrixRep) -> RepReport {
    let a = &rep.alg;
    let ch = &rep.ch;
    let p = ch.p();
    let reduction_ok = rep.c.iter().zip(ch.vals()).all(|(c, v)| a.residue(c) == *v)
        && rep.lam.iter().all(|l| a.residue(l) == Fe::ONE);
    let order_ok = rep.c.iter().zip(&rep.lam).all(|(c, l)| {
        let mut sum = a.zero();
        let mut pw = a.one();
        for _ in 0..p {
            sum = a.add(&sum, &pw);
            pw = a.mul(&pw, l);
        }
        pw == a.one() && a.is_zero(&a.mul(c, &sum))
    });
    let mut commuting_ok = true;
    for i in 0..ch.s() {
        for j in i + 1..ch.s() {
            let l = a.add(&rep.c[i], &a.mul(&rep.lam[i], &rep.c[j]));
            let r = a.add(&rep.c[j], &a.mul(&rep.lam[j], &rep.c[i]));
            commuting_ok &= l == r;
        }
    }
    let els = ch.elements();
    let vals: Vec<_> = els.iter().map(|g| rep.value(g)).collect();
    let mut homomorphism_ok = true;
    'outer: for (gi, g) in els.iter().enumerate() {
        for (hi, h) in els.iter().enumerate() {
            let (cg, lg) = vals[gi];
            let (ch_, lh) = vals[hi];
            let gh = vals[elem_index(ch, &g.mul(h, p))];
            if gh != (a.add(&cg, &a.mul(&lg, &ch_)), a.mul(&lg, &lh)) {
                homomorphism_ok = false;
                break 'outer;
            }
        }
    }
    let valid = reduction_ok && order_ok && commuting_ok && homomorphism_ok;
    RepReport { reduction_ok, order_ok, commuting_ok, homomorphism_ok, valid }
}

/// Conjugation by `[[1, 0], [μ, λ₀]]`: `C′(g) = μ + λ₀C(g) − λ(g)μ`.
pub fn conjugate_rep(rep: &MatrixRep, mu: &ArtinElem, lam0: &ArtinElem) -> Result<MatrixRep, Error> {
    let a = &rep.alg;
    if !a.residue(mu).is_zero() || a.residue(lam0) != Fe::ONE {
        return Err(Error::ReductionMismatch);
    }
    let c = rep
        .c
        .iter()
        .zip(&rep.lam)
        .map(|(c, l)| a.sub(&a.add(mu, &a.mul(lam0, c)), &a.mul(l, mu)))
        .collect();
    Ok(MatrixRep { c, ..rep.clone() })
}

/// `λ₀f̃ + μ`, the basis function matching [`conjugate_rep`].
pub fn conjugate_ftilde(alg: &ArtinAlgebra, ftilde: &Series<ArtinElem>, mu: &ArtinElem, lam0: &ArtinElem) -> Series<ArtinElem> {
    ftilde.scale(alg, lam0).add(alg, &Series::monomial(alg, *mu, 0, EXACT))
}

/// A first-order deformation over `k[ε]/ε²`: `λ = 1 + λ₁ε`, `C = c + δε`
/// on the generators, and `1/f̃ = tᵐ + ε Σ_μ a_{μ,1} t^μ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeformationDatum {
    pub rep: MatrixRep,
    pub a1: Vec<Fe>,
}

impl DeformationDatum {
    pub fn new(ch: &Character, lambda1: &[Fe], delta: &[Fe], a1: &[Fe]) -> Result<Self, Error> {
        if lambda1.len() != ch.s() || delta.len() != ch.s() {
            return Err(Error::InvalidArgument("lambda1 and delta need one value per generator"));
        }
        if a1.len() != ch.m() as usize {
            return Err(Error::InvalidArgument("a1 needs m values"));
        }
        let alg = ArtinAlgebra::dual(ch.field().clone());
        let c = ch.vals().iter().zip(delta).map(|(v, d)| alg.from_comps(&[*v, *d])).collect::<Result<_, _>>()?;
        let lam = lambda1.iter().map(|l| alg.from_comps(&[Fe::ONE, *l])).collect::<Result<_, _>>()?;
        Ok(DeformationDatum { rep: MatrixRep::new(alg, ch.clone(), c, lam)?, a1: a1.to_vec() })
    }

    pub fn zero(ch: &Character) -> Self {
        let s = ch.s();
        DeformationDatum::new(ch, &vec![Fe::ZERO; s], &vec![Fe::ZERO; s], &vec![Fe::ZERO; ch.m() as usize]).unwrap()
    }

    /// A random datum satisfying the matrix relations: `λ₁ = λ·c` (with
    /// `λ = 0` when `p = 2`), `δ` and `a₁` uniform.
    pub fn random(ch: &Character, rng: &mut dyn RngCore) -> Self {
        let k = ch.field();
        let mut pick = || Fe((rng.next_u32() % k.size()) as u16);
        let lam = if ch.p() == 2 { Fe::ZERO } else { pick() };
        let lambda1: Vec<Fe> = ch.vals().iter().map(|c| k.mul(lam, *c)).collect();
        let delta: Vec<Fe> = (0..ch.s()).map(|_| pick()).collect();
        let a1: Vec<Fe> = (0..ch.m()).map(|_| pick()).collect();
        DeformationDatum::new(ch, &lambda1, &delta, &a1).unwrap()
    }

    pub fn ch(&self) -> &Character {
        self.rep.ch()
    }

    /// `λ₁(g)` and `δ(g)`.
    pub fn first_order(&self, g: &GroupElem) -> (Fe, Fe) {
        let (c, l) = self.rep.value(g);
        (l.comp(1), c.comp(1))
    }

    /// `λ₁(σ)c(τ) = λ₁(τ)c(σ)` on generators.
    pub fn compatible(&self) -> bool {
        let k = self.ch().field();
        let vals = self.ch().vals();
        let l: Vec<Fe> = self.rep.lam.iter().map(|x| x.comp(1)).collect();
        (0..vals.len()).all(|i| (0..vals.len()).all(|j| k.mul(l[i], vals[j]) == k.mul(l[j], vals[i])))
    }

    /// `1/f̃ = tᵐ + ε Σ a_{μ,1} t^μ`, exact.
    pub fn weierstrass(&self) -> Series<ArtinElem> {
        let alg = self.rep.alg();
        let m = self.ch().m() as i64;
        let mut terms = vec![(m, alg.one())];
        for (mu, a) in self.a1.iter().enumerate() {
            terms.push((mu as i64, alg.from_comps(&[Fe::ZERO, *a]).unwrap()));
        }
        Series::from_terms(alg, &terms, EXACT)
    }

    /// `f̃` modulo `t^prec`.
    pub fn ftilde(&self, prec: i64) -> Result<Series<ArtinElem>, Error> {
        let m = self.ch().m() as i64;
        let w = self.weierstrass().with_prec(self.rep.alg(), prec + 2 * m);
        w.inverse(self.rep.alg()).map(|f| f.truncate(self.rep.alg(), prec))
    }
}

/// `1/f̃`, checked to reduce to `tᵐ`.
fn weierstrass_of(alg: &ArtinAlgebra, m: u32, ftilde: &Series<ArtinElem>) -> Result<Series<ArtinElem>, Error> {
    let w = ftilde.inverse(alg)?;
    let k = alg.base();
    let wbar = w.map(k, |c| alg.residue(c));
    if wbar.lead() != m as i64 || wbar.coeff(k, m as i64) != Fe::ONE || wbar.terms(k).count() != 1 {
        return Err(Error::ReductionMismatch);
    }
    Ok(w)
}

fn embed_series(alg: &ArtinAlgebra, s: &Series<Fe>) -> Series<ArtinElem> {
    s.map(alg, |c| alg.embed(*c))
}

fn component(alg: &ArtinAlgebra, s: &Series<ArtinElem>, j: usize) -> Series<Fe> {
    s.map(alg.base(), |c| c.comp(j))
}

/// `T(t) ∈ A[[t]]` with `T ≡ ρ_g(t)` and `f̃(T) = λ(g)f̃ + C(g)` modulo `t^prec`.
///
/// Writing `w = 1/f̃`, the equation is `w(T) = w/(λ + Cw)`. At step `j`
/// the residual is divisible by `εʲ` and the correction is
/// `−εʲ r_j/(m ρ^{m−1})`.
pub fn deformed_rho(rep: &MatrixRep, ftilde: &Series<ArtinElem>, g: &GroupElem, prec: i64) -> Result<Series<ArtinElem>, Error> {
    let alg = &rep.alg;
    let ch = &rep.ch;
    let k = ch.field();
    let m = ch.m() as i64;
    let big = prec + 2 * m + 2;
    let w = weierstrass_of(alg, ch.m(), ftilde)?;
    if w.prec() < big {
        return Err(Error::PrecisionTooLow);
    }
    let w = w.truncate(alg, big);
    let (c, lam) = rep.value(g);
    let denom = w.scale(alg, &c).add(alg, &Series::monomial(alg, lam, 0, EXACT));
    let target = w.mul(alg, &denom.inverse(alg)?);

    let rho = build_rho(ch, g, big)?;
    let lin = rho.pow(k, m as u64 - 1).scale(k, &k.from_int(m)).truncate(k, big);
    let lin_inv = lin.inverse(k)?;
    let mut t = embed_series(alg, &rho);
    for j in 1..alg.order() {
        let r = w.compose(alg, &t)?.sub(alg, &target);
        if (0..j).any(|i| !component(alg, &r, i).is_zero()) {
            return Err(Error::NoSolution);
        }
        let d = component(alg, &r, j).mul(k, &lin_inv).neg(k);
        if d.lead() < 0 {
            return Err(Error::NoSolution);
        }
        let step = d.map(alg, |x| alg.mul_eps_pow(&alg.embed(*x), j));
        t = t.add(alg, &step);
    }
    let r = w.compose(alg, &t)?.sub(alg, &target);
    if !r.truncate(alg, prec + m - 1).is_zero() || t.prec() < prec {
        return Err(Error::NoSolution);
    }
    Ok(t.truncate(alg, prec))
}

/// Whether `f̃(T) = λ(g)f̃ + C(g)` to the common precision.
pub fn functional_equation_holds(
    rep: &MatrixRep,
    ftilde: &Series<ArtinElem>,
    g: &GroupElem,
    t: &Series<ArtinElem>,
) -> Result<bool, Error> {
    let alg = &rep.alg;
    let m = rep.ch.m() as i64;
    let (c, lam) = rep.value(g);
    let w = weierstrass_of(alg, rep.ch.m(), ftilde)?;
    // f̃(T) = 1/w(T); compare w(T) with w/(λ + Cw).
    let wt = w.truncate(alg, t.prec() + m).compose(alg, t)?;
    let denom = w.scale(alg, &c).add(alg, &Series::monomial(alg, lam, 0, EXACT));
    let target = w.mul(alg, &denom.inverse(alg)?);
    let n = wt.prec().min(target.prec());
    Ok(wt.truncate(alg, n) == target.truncate(alg, n))
}

/// The pole part of `h/t^{m+1}` as an element of `M`.
fn pole_class(k: &FiniteField, m: u32, h: &Series<Fe>) -> Result<PolePartClass, Error> {
    if h.prec() < m as i64 + 1 {
        return Err(Error::PrecisionTooLow);
    }
    PolePartClass::from_series(k, m, &h.truncate(k, m as i64 + 1).shift(-(m as i64 + 1)))
}

/// `σ_i ↦ h_i/t^{m+1}` where `ρ̃_{σ_i}∘ρ_{σ_i}^{-1}(t) = ρ_{σ_i}^{-1}(ρ̃_{σ_i}(t)) = t + ε h_i(t)`.
pub fn tangent_cocycle_extract(rep: &MatrixRep, ftilde: &Series<ArtinElem>, prec: i64) -> Result<OneCochain, Error> {
    let alg = &rep.alg;
    if alg.order() != 2 {
        return Err(Error::InvalidArgument("tangent extraction needs the dual numbers"));
    }
    let ch = &rep.ch;
    let k = ch.field();
    let m = ch.m();
    let mut vals = Vec::with_capacity(ch.s());
    for g in ch.generators() {
        let t = deformed_rho(rep, ftilde, &g, prec)?;
        let cinv = alg.embed(ch.value(&g.inverse(ch.p())));
        let s = rho_apply(alg, &cinv, m, &t)?;
        let base = component(alg, &s, 0);
        if base.sub(k, &Series::var(k, base.prec())).truncate(k, m as i64 + 2) != Series::zero(m as i64 + 2) {
            return Err(Error::ReductionMismatch);
        }
        vals.push(pole_class(k, m, &component(alg, &s, 1))?);
    }
    let x = OneCochain { vals };
    if !is_cocycle(ch, &x)? {
        return Err(Error::NoSolution);
    }
    Ok(x)
}

/// `(1/m)(λ₁(σ)/tᵐ + Σ_μ ((2m−μ)/m) a_{μ,1} c(σ)/t^{m−μ})`: the pole part of
/// the closed formula; `λ₁(σ)c(σ) − δ(σ)` is a constant and drops out.
pub fn cocycle_formula(datum: &DeformationDatum, g: &GroupElem) -> Result<PolePartClass, Error> {
    let ch = datum.ch();
    let k = ch.field();
    let m = ch.m();
    let mi = m as i64;
    let (l1, _) = datum.first_order(g);
    let c = ch.value(g);
    let mut x = PolePartClass::zero(m);
    x.coeffs[m as usize - 1] = k.mul(l1, k.from_ratio(1, mi)?);
    for (mu, a) in datum.a1.iter().enumerate() {
        let coef = k.from_ratio(2 * mi - mu as i64, mi * mi)?;
        let i = m as usize - mu;
        x.coeffs[i - 1] = k.add(x.coeffs[i - 1], k.mul(coef, k.mul(*a, c)));
    }
    Ok(x)
}

/// The negative of [`cocycle_formula`]: the pole part of
/// `d/dε (ρ̃_σ∘ρ_σ^{-1})/t^{m+1}` expanded directly, which is
/// `−(1/m)(λ₁(σ)/tᵐ + Σ_μ ((2m−μ)/m) a_{μ,1} c(σ)/t^{m−μ})`.
/// The two agree in characteristic 2.
pub fn cocycle_formula_rederived(datum: &DeformationDatum, g: &GroupElem) -> Result<PolePartClass, Error> {
    let k = datum.ch().field();
    cocycle_formula(datum, g).map(|x| x.scale(k, k.neg(Fe::ONE)))
}

/// [`cocycle_formula`] on every generator.
pub fn cocycle_formula_cochain(datum: &DeformationDatum) -> Result<OneCochain, Error> {
    let vals = datum.ch().generators().iter().map(|g| cocycle_formula(datum, g)).collect::<Result<_, _>>()?;
    Ok(OneCochain { vals })
}

/// Whether `a − b` is a coboundary on `M`.
pub fn same_class(ch: &Character, a: &OneCochain, b: &OneCochain) -> Result<bool, Error> {
    let k = ch.field();
    let n = ch.m() as usize + 1;
    let flat = |x: &OneCochain| -> Vec<Fe> { x.vals.iter().flat_map(|v| v.coeffs.iter().copied()).collect() };
    let mut rs = RowSpace::new(n * ch.s());
    for i in 1..=n {
        let e = PolePartClass::monomial(ch.m(), i as u32, Fe::ONE);
        rs.insert(k, &flat(&crate::cohomology::coboundary(ch, &e)?));
    }
    let d: Vec<Fe> = flat(a).iter().zip(flat(b)).map(|(x, y)| k.sub(*x, y)).collect();
    Ok(rs.contains(k, &d))
}

/// For each pole order `i`, the coefficients of `t^{-i}` across generators
/// are a scalar multiple of `(c(σ_1), …, c(σ_s))`.
pub fn proportional_to_character(ch: &Character, x: &OneCochain) -> bool {
    let k = ch.field();
    let c = ch.vals();
    (0..=ch.m() as usize).all(|i| {
        let b: Vec<Fe> = x.vals.iter().map(|v| v.coeffs[i]).collect();
        (0..c.len()).all(|a| (0..c.len()).all(|j| k.mul(b[a], c[j]) == k.mul(b[j], c[a])))
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Obstruction {
    pub cochain: TwoCochain,
    pub is_cocycle: bool,
    pub vanishes_identically: bool,
    pub vanishes_in_h2: bool,
}

/// `X ∘ Y` as ring maps, i.e. the series `Y(X(t))`.
fn ring_compose(alg: &ArtinAlgebra, x: &Series<ArtinElem>, y: &Series<ArtinElem>) -> Result<Series<ArtinElem>, Error> {
    y.compose(alg, x)
}

/// Lifts on all of `V` from generator lifts, `ρ̃_g = ρ̃_{σ_1}^{e_1}∘…∘ρ̃_{σ_s}^{e_s}`.
pub fn word_lifts(alg: &ArtinAlgebra, ch: &Character, lifts: &[Series<ArtinElem>], prec: i64) -> Result<Vec<Series<ArtinElem>>, Error> {
    ch.elements()
        .iter()
        .map(|g| {
            let mut acc = Series::var(alg, prec);
            for (i, &e) in g.exps().iter().enumerate() {
                for _ in 0..e {
                    acc = ring_compose(alg, &acc, &lifts[i])?;
                }
            }
            Ok(acc)
        })
        .collect()
}

/// The obstruction to lifting `{ρ̃_σ}` across `A′ = F_q[ε]/εⁿ⁺¹ → A`.
///
/// `lifts` holds either one lift per generator (extended to `V` by
/// [`word_lifts`]) or one lift per element in the order of
/// [`Character::elements`]. With `κ = εⁿ`,
/// `ρ̃_σρ̃_τρ̃_{στ}^{-1}(t) = t + κh`; writing
/// `ρ̃_σρ̃_τ(t) − ρ̃_{στ}(t) = κe`, one has `h = e/ρ′_{στ}` because
/// `κ·m_{A′} = 0`.
pub fn obstruction_two_cocycle(
    rep: &MatrixRep,
    ftilde: &Series<ArtinElem>,
    lifts: &[Series<ArtinElem>],
    prec: i64,
) -> Result<Obstruction, Error> {
    let alg = &rep.alg;
    let ch = &rep.ch;
    let k = ch.field();
    let m = ch.m();
    let n1 = alg.order();
    let els = ch.elements();
    if n1 < 2 {
        return Err(Error::InvalidArgument("need a proper small extension"));
    }
    let all = if lifts.len() == ch.s() {
        word_lifts(alg, ch, lifts, prec)?
    } else if lifts.len() == els.len() {
        lifts.to_vec()
    } else {
        return Err(Error::InvalidArgument("lifts must be indexed by the generators or by all of V"));
    };
    let lower = rep.reduce_to(n1 - 1)?;
    let la = lower.alg();
    let ft_lower = ftilde.map(la, |c| alg.reduce_to(c, n1 - 1));
    for (g, l) in els.iter().zip(&all) {
        let expect = deformed_rho(&lower, &ft_lower, g, prec)?;
        let red = l.map(la, |c| alg.reduce_to(c, n1 - 1));
        let n = red.prec().min(expect.prec());
        if n < prec || red.truncate(la, n) != expect.truncate(la, n) {
            return Err(Error::ReductionMismatch);
        }
    }

    let mut vals = Vec::with_capacity(els.len() * els.len());
    for (gi, g) in els.iter().enumerate() {
        for (hi, h) in els.iter().enumerate() {
            let gh = g.mul(h, ch.p());
            let x = ring_compose(alg, &all[gi], &all[hi])?;
            let diff = x.sub(alg, &all[elem_index(ch, &gh)]).truncate(alg, prec);
            if (0..n1 - 1).any(|i| !component(alg, &diff, i).is_zero()) {
                return Err(Error::ReductionMismatch);
            }
            let e = component(alg, &diff, n1 - 1);
            let dy = build_rho(ch, &gh, prec + 1)?.derivative(k);
            vals.push(pole_class(k, m, &e.mul(k, &dy.inverse(k)?))?);
        }
    }
    let cochain = TwoCochain { vals };
    let is_cocycle = crate::cohomology::is_two_cocycle(ch, &cochain)?;
    let vanishes_identically = cochain.vals.iter().all(|v| v.is_zero());
    let vanishes_in_h2 = vanishes_identically || CoboundaryTester::new(ch)?.is_coboundary(&cochain);
    Ok(Obstruction { cochain, is_cocycle, vanishes_identically, vanishes_in_h2 })
}

/// Matrix-data lifts: `deformed_rho` over `A′` on each generator.
pub fn matrix_lifts(rep: &MatrixRep, ftilde: &Series<ArtinElem>, prec: i64) -> Result<Vec<Series<ArtinElem>>, Error> {
    rep.ch.generators().iter().map(|g| deformed_rho(rep, ftilde, g, prec)).collect()
}

/// `deformed_rho` on every element of `V`.
pub fn matrix_lifts_all(rep: &MatrixRep, ftilde: &Series<ArtinElem>, prec: i64) -> Result<Vec<Series<ArtinElem>>, Error> {
    rep.ch.elements().iter().map(|g| deformed_rho(rep, ftilde, g, prec)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftingPredicates {
    /// `p^{s−1} | m+1`.
    pub char0_lift_necessary_condition: bool,
    /// `s = 1` or `p ∤ m+1`.
    pub invariant_divisor_exists: bool,
    /// More than two cyclic components, the stated hypothesis.
    pub invariant_divisor_excluded_mixed: bool,
    /// `s ≥ 2`: every orbit on the generic fibre has size divisible by `p`.
    pub orbit_argument_applies: bool,
    /// `m < p^s`.
    pub stichtenoth_two_dim: bool,
    /// `gcd(m, p) = 1` and `(s = 1 or m > 1)`.
    pub two_dim_wellformed: bool,
}

/// Evaluated for any `m`; `two_dim_wellformed` records whether `gcd(m, p) = 1`.
pub fn lifting_predicates(p: u32, s: u32, m: u32) -> LiftingPredicates {
    let (pp, mm) = (p as u64, m as u64);
    LiftingPredicates {
        char0_lift_necessary_condition: (mm + 1) % pp.pow(s.saturating_sub(1)) == 0,
        invariant_divisor_exists: s == 1 || (mm + 1) % pp != 0,
        invariant_divisor_excluded_mixed: s > 2,
        orbit_argument_applies: s >= 2,
        stichtenoth_two_dim: mm < pp.pow(s),
        two_dim_wellformed: !m.is_multiple_of(p) && (s == 1 || m > 1),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dual_rep(ch: &Character, lambda1: &[u16], delta: &[u16]) -> MatrixRep {
        let l: Vec<Fe> = lambda1.iter().map(|x| Fe(*x)).collect();
        let d: Vec<Fe> = delta.iter().map(|x| Fe(*x)).collect();
        DeformationDatum::new(ch, &l, &d, &vec![Fe::ZERO; ch.m() as usize]).unwrap().rep
    }

    #[test]
    fn validate_examples() {
        let ch = Character::standard(2, 1, 3).unwrap();
        let alg = ArtinAlgebra::new(ch.field().clone(), 3).unwrap();
        assert!(rep_validate(&MatrixRep::trivial(alg, ch.clone())).valid);
        // For p = 2, Σ_{ν<2} λ^ν = 2 + ε = ε, so λ₁ ≠ 0 breaks the order relation.
        let r = rep_validate(&dual_rep(&ch, &[1], &[0]));
        assert!(!r.order_ok && !r.homomorphism_ok);
        let ch3 = Character::standard(3, 1, 2).unwrap();
        assert!(rep_validate(&dual_rep(&ch3, &[1], &[2])).valid);

        let ch = Character::standard(2, 2, 3).unwrap();
        let r = rep_validate(&dual_rep(&ch, &[1, 0], &[0, 0]));
        assert!(!r.commuting_ok && !r.valid);
        assert!(rep_validate(&dual_rep(&ch, &[0, 0], &[1, 1])).valid);
        let ch = Character::standard(3, 2, 2).unwrap();
        let b = ch.vals()[1].0;
        assert!(rep_validate(&dual_rep(&ch, &[1, b], &[0, 1])).valid);
        assert!(!rep_validate(&dual_rep(&ch, &[1, 0], &[0, 1])).valid);
    }

    #[test]
    fn conjugation_examples() {
        let ch = Character::standard(2, 1, 3).unwrap();
        let rep = dual_rep(&ch, &[0], &[0]);
        let alg = rep.alg().clone();
        assert_eq!(conjugate_rep(&rep, &alg.zero(), &alg.one()).unwrap(), rep);
        assert_eq!(conjugate_rep(&rep, &alg.epsilon(), &alg.one()).unwrap(), rep);
        let lam0 = alg.add(&alg.one(), &alg.epsilon());
        let c2 = conjugate_rep(&rep, &alg.zero(), &lam0).unwrap();
        assert_eq!(c2.c_gens()[0], alg.from_comps(&[Fe::ONE, Fe::ONE]).unwrap());
        assert!(rep_validate(&c2).valid);
    }

    #[test]
    fn deformed_rho_examples() {
        let ch = Character::standard(2, 1, 3).unwrap();
        let g = GroupElem::generator(1, 0);
        let prec = 30;
        let rep = dual_rep(&ch, &[0], &[0]);
        let ft = DeformationDatum::zero(&ch).ftilde(prec + 20).unwrap();
        let t = deformed_rho(&rep, &ft, &g, prec).unwrap();
        assert_eq!(t, embed_series(rep.alg(), &build_rho(&ch, &g, prec).unwrap()));

        // 1/T³ = 1/t³ + 1 + ε.
        let rep = dual_rep(&ch, &[0], &[1]);
        let t = deformed_rho(&rep, &ft, &g, prec).unwrap();
        let alg = rep.alg();
        let lhs = t.pow(alg, 3).inverse(alg).unwrap();
        let rhs = Series::from_terms(alg, &[(-3, alg.one()), (0, alg.from_comps(&[Fe::ONE, Fe::ONE]).unwrap())], prec - 6);
        assert_eq!(lhs.truncate(alg, prec - 6), rhs);
        assert!(functional_equation_holds(&rep, &ft, &g, &t).unwrap());
    }

    #[test]
    fn extraction_examples() {
        let ch = Character::standard(2, 1, 3).unwrap();
        let k = ch.field();
        let d = DeformationDatum::zero(&ch);
        let x = tangent_cocycle_extract(&d.rep, &d.ftilde(60).unwrap(), 24).unwrap();
        assert!(x.vals.iter().all(|v| v.is_zero()));

        let d = DeformationDatum::new(&ch, &[Fe::ZERO], &[Fe::ZERO], &[Fe::ZERO, Fe::ONE, Fe::ZERO]).unwrap();
        let x = tangent_cocycle_extract(&d.rep, &d.ftilde(60).unwrap(), 24).unwrap();
        assert_eq!(x.vals[0], PolePartClass::monomial(3, 2, Fe::ONE));
        assert_eq!(cocycle_formula(&d, &ch.generators()[0]).unwrap(), PolePartClass::monomial(3, 2, Fe::ONE));

        let d = DeformationDatum::new(&ch, &[Fe::ONE], &[Fe::ZERO], &[Fe::ZERO; 3]).unwrap();
        assert_eq!(cocycle_formula(&d, &ch.generators()[0]).unwrap(), PolePartClass::monomial(3, 3, Fe::ONE));
        let x = tangent_cocycle_extract(&d.rep, &d.ftilde(60).unwrap(), 24).unwrap();
        assert_eq!(x.vals[0], PolePartClass::monomial(3, 3, Fe::ONE));

        // δ alone gives a trivial class.
        let d = DeformationDatum::new(&ch, &[Fe::ZERO], &[Fe::ONE], &[Fe::ZERO; 3]).unwrap();
        let x = tangent_cocycle_extract(&d.rep, &d.ftilde(60).unwrap(), 24).unwrap();
        assert!(same_class(&ch, &x, &OneCochain { vals: vec![PolePartClass::zero(3)] }).unwrap());
        let _ = k;
    }

    #[test]
    fn predicates() {
        let a = lifting_predicates(3, 2, 5);
        assert!(a.char0_lift_necessary_condition);
        let c = lifting_predicates(3, 2, 3);
        assert!(!c.char0_lift_necessary_condition && !c.two_dim_wellformed);
        let b = lifting_predicates(2, 2, 3);
        assert!(!b.invariant_divisor_exists && b.stichtenoth_two_dim && b.two_dim_wellformed);
        assert!(!b.invariant_divisor_excluded_mixed && b.orbit_argument_applies);
        assert!(!lifting_predicates(2, 2, 1).two_dim_wellformed);
    }
}
