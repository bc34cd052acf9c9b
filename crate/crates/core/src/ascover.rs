//! The generalized Artin-Schreier model `y^{p^s} − y = u` of the cover
//! `X → X/V`, class reduction, conductors and equivalence of covers.

use alloc::vec;
use alloc::vec::Vec;

use crate::addpoly::{additive_poly_from_character, det, moore_det, PPolynomial};
use crate::autoreps::{power_basis, Character};
use crate::coeffring::{ArtinAlgebra, ArtinElem, CoeffRing, Fe, FiniteField};
use crate::error::Error;
use crate::series::Series;

/// Precision used for Laurent polynomials that are known exactly.
pub const EXACT: i64 = i64::MAX / 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoverRhs {
    /// A p-polynomial in the abstract function `f`.
    Symbolic(PPolynomial<Fe>),
    /// A Laurent series in a local parameter.
    Germ(Series<Fe>),
}

/// `y^{p^s} − y = rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ASCover {
    pub s: u32,
    pub field: FiniteField,
    pub rhs: CoverRhs,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuildU {
    pub u1: PPolynomial<Fe>,
    pub u: PPolynomial<Fe>,
    /// `o_ν`, the coefficient of `f^{p^{ν−1}}` in `u₁`.
    pub o: Vec<Fe>,
    /// `a_{ν+s} = −a_ν^{p^s}` for the coefficients `a` of `u`.
    pub relation_holds: bool,
}

/// Coefficients of `f^{p^{i}}`, `i < s`, in the determinant with first row
/// `(μ₁,…,μ_s, 0)` and rows `(x_j^{p^i}, f^{p^i})` below it.
fn bordered_coeffs<R: CoeffRing>(ring: &R, mu: &[R::Elem], xs: &[R::Elem]) -> Vec<R::Elem> {
    let s = xs.len();
    let mut rows: Vec<Vec<R::Elem>> = vec![mu.to_vec()];
    let mut pw = xs.to_vec();
    for _ in 0..s {
        rows.push(pw.clone());
        pw = pw.iter().map(|x| ring.frobenius(x)).collect();
    }
    // Expansion along the last column: the entry f^{p^i} sits in row i+1.
    (0..s)
        .map(|i| {
            let minor: Vec<Vec<R::Elem>> =
                rows.iter().enumerate().filter(|(r, _)| *r != i + 1).map(|(_, r)| r.clone()).collect();
            let d = det(ring, &minor);
            if (i + 1 + s) % 2 == 0 {
                d
            } else {
                ring.neg(&d)
            }
        })
        .collect()
}

fn check_mu(ch: &Character, mu: &[Fe]) -> Result<(), Error> {
    let k = ch.field();
    let s = ch.s() as u32;
    if mu.len() != ch.s() || !mu.iter().all(|x| k.in_subfield(*x, s)) || moore_det(k, mu).is_zero() {
        return Err(Error::DependentMu);
    }
    Ok(())
}

pub fn default_mu(ch: &Character) -> Vec<Fe> {
    power_basis(ch.field(), ch.s() as u32)
}

pub fn build_u(ch: &Character, mu: &[Fe]) -> Result<BuildU, Error> {
    check_mu(ch, mu)?;
    let k = ch.field();
    let s = ch.s() as u32;
    let den = k.inv(moore_det(k, ch.vals()))?;
    let o: Vec<Fe> = bordered_coeffs(k, mu, ch.vals()).into_iter().map(|c| k.mul(c, den)).collect();
    let u1 = PPolynomial::from_terms(k, o.iter().enumerate().map(|(i, c)| (i as u32, *c)));
    let u = u1.artin_schreier(k, s);
    let relation_holds = (0..s).all(|nu| u.coeff(k, nu + s) == k.neg(k.frobenius_pow(u.coeff(k, nu), s)));
    Ok(BuildU { u1, u, o, relation_holds })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedGenerator {
    pub yi: PPolynomial<Fe>,
    /// `y_i(f + c(σ_j)) − y_i(f) = δ_{ij}` for each `j`.
    pub shift_check: Vec<bool>,
}

/// `y_i = ad_i(f)/ad_i(c(σ_i))`, with the translation behaviour checked
/// through additivity: `y_i(f + c) = y_i(f) + y_i(c)`.
pub fn normalized_generators(ch: &Character) -> Result<Vec<NormalizedGenerator>, Error> {
    let k = ch.field();
    (1..=ch.s())
        .map(|i| {
            let ad = additive_poly_from_character(ch, Some(i))?;
            let norm = k.inv(ad.apply(k, &ch.vals()[i - 1]))?;
            let yi = ad.scale(k, &norm);
            let shift_check = ch
                .vals()
                .iter()
                .enumerate()
                .map(|(j, c)| {
                    let (linear, constant) = yi.apply_affine(k, &PPolynomial::identity(k), c);
                    linear == yi && constant == if j + 1 == i { Fe::ONE } else { Fe::ZERO }
                })
                .collect();
            Ok(NormalizedGenerator { yi, shift_check })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GermModel {
    /// `u(t^{-m})` in the parameter `t` at `P`.
    pub upstairs: ASCover,
    /// `Q(x^{-m})` where `u = Q ∘ Φ` and `x^{-m} = Φ(f) = N(f)` is the
    /// norm of `f`, a function on `X/V` with a pole of order `m`.
    pub downstairs: ASCover,
    pub quotient: PPolynomial<Fe>,
}

/// Substitutes `f = t^{-m}` into a p-polynomial.
fn substitute_pole(k: &FiniteField, p: &PPolynomial<Fe>, m: u32) -> Series<Fe> {
    p.apply_series(k, &Series::monomial(k, Fe::ONE, -(m as i64), EXACT))
}

pub fn germ_model(ch: &Character, mu: &[Fe]) -> Result<GermModel, Error> {
    let k = ch.field();
    let bu = build_u(ch, mu)?;
    let phi = additive_poly_from_character(ch, None)?;
    let (quotient, rem) = bu.u.right_divide(k, &phi)?;
    if !rem.is_zero() {
        return Err(Error::NoSolution);
    }
    let s = ch.s() as u32;
    let cover = |rhs| ASCover { s, field: k.clone(), rhs: CoverRhs::Germ(rhs) };
    Ok(GermModel {
        upstairs: cover(substitute_pole(k, &bu.u, ch.m())),
        downstairs: cover(substitute_pole(k, &quotient, ch.m())),
        quotient,
    })
}

/// A reduced representative of a class in
/// `k((t))/(k[[t]] + D(k((t))))`, `D(x) = x^{p^s} − x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverClass {
    pub s: u32,
    /// Pole part with no exponent divisible by `p^s`.
    pub reduced: Series<Fe>,
    /// The smallest of `ζ·reduced` over `ζ ∈ F_{p^s}^*` (by coefficient
    /// encoding from the most negative exponent); equal for covers that
    /// are isomorphic after scaling.
    pub orbit_marker: Series<Fe>,
    /// `g − reduced − holomorphic(g) = D(witness)`.
    pub witness: Series<Fe>,
    pub holomorphic: Series<Fe>,
}

fn subfield_units(k: &FiniteField, s: u32) -> Vec<Fe> {
    k.elements().filter(|x| !x.is_zero() && k.in_subfield(*x, s)).collect()
}

fn encode(g: &Series<Fe>) -> Vec<u16> {
    if g.is_zero() {
        return Vec::new();
    }
    g.dense(Fe::ZERO, g.lead(), 0).iter().map(|c| c.0).collect()
}

pub fn class_reduce(k: &FiniteField, g: &Series<Fe>, s: u32) -> Result<CoverClass, Error> {
    if g.prec() < 0 {
        return Err(Error::PrecisionTooLow);
    }
    let q = (k.p() as i64).pow(s);
    let holomorphic = g.holomorphic_part(k);
    let mut coeffs: Vec<Fe> = if g.lead() < 0 { g.dense(Fe::ZERO, g.lead(), 0) } else { Vec::new() };
    let lo = g.lead().min(0);
    let mut witness: Vec<(i64, Fe)> = Vec::new();
    // coeffs[i] is the coefficient of t^{lo + i}; reductions move terms to
    // less negative exponents, so one pass from the bottom suffices.
    for i in 0..coeffs.len() {
        let e = lo + i as i64;
        let a = coeffs[i];
        if a.is_zero() || (-e) % q != 0 {
            continue;
        }
        let b = k.p_power_root(a, s);
        let target = e / q;
        coeffs[i] = Fe::ZERO;
        let j = (target - lo) as usize;
        coeffs[j] = k.add(coeffs[j], b);
        witness.push((target, b));
    }
    let terms: Vec<(i64, Fe)> = coeffs.iter().enumerate().map(|(i, c)| (lo + i as i64, *c)).collect();
    let reduced = Series::from_terms(k, &terms, EXACT);
    let witness = combine_terms(k, &witness);
    let orbit_marker = subfield_units(k, s)
        .into_iter()
        .map(|z| reduced.scale(k, &z))
        .min_by_key(encode)
        .unwrap_or_else(|| reduced.clone());
    Ok(CoverClass { s, reduced, orbit_marker, witness, holomorphic })
}

fn combine_terms(k: &FiniteField, terms: &[(i64, Fe)]) -> Series<Fe> {
    terms.iter().fold(Series::zero(EXACT), |acc, (e, c)| acc.add(k, &Series::monomial(k, *c, *e, EXACT)))
}

/// `D(d) = d^{p^s} − d`.
pub fn artin_schreier_op(k: &FiniteField, d: &Series<Fe>, s: u32) -> Series<Fe> {
    d.frobenius_pow(k, s).sub(k, d)
}

/// Checks `g − reduced − holomorphic = D(witness)` exactly.
pub fn verify_reduction(k: &FiniteField, g: &Series<Fe>, cls: &CoverClass) -> bool {
    let lhs = g.sub(k, &cls.reduced).sub(k, &cls.holomorphic);
    let rhs = artin_schreier_op(k, &cls.witness, cls.s);
    let n = lhs.prec().min(rhs.prec());
    lhs.truncate(k, n) == rhs.truncate(k, n)
}

/// `max d` over the pole exponents `n = d·p^ν` of the reduced class, with
/// `p ∤ d`.
pub fn conductor(k: &FiniteField, cls: &CoverClass) -> Result<i64, Error> {
    if cls.reduced.is_zero() {
        return Err(Error::EmptyClass);
    }
    let p = k.p() as i64;
    let mut best = 0;
    for (e, _) in cls.reduced.terms(k) {
        let mut d = -e;
        while d % p == 0 {
            d /= p;
        }
        best = best.max(d);
    }
    Ok(best)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equivalence {
    pub equivalent: bool,
    pub zeta: Option<Fe>,
}

/// Whether `g₁ = ζ g₂ + D(d) + holomorphic` for some `ζ ∈ F_{p^s}^*`.
pub fn equivalent_covers(k: &FiniteField, g1: &Series<Fe>, g2: &Series<Fe>, s: u32) -> Result<Equivalence, Error> {
    let mut units = subfield_units(k, s);
    units.sort_by_key(|z| (*z != Fe::ONE, z.0));
    for z in units {
        if class_reduce(k, &g1.sub(k, &g2.scale(k, &z)), s)?.reduced.is_zero() {
            return Ok(Equivalence { equivalent: true, zeta: Some(z) });
        }
    }
    Ok(Equivalence { equivalent: false, zeta: None })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeformedU {
    pub u1: Series<ArtinElem>,
    pub u: Series<ArtinElem>,
    pub splits_branch: bool,
}

/// `U = D(U₁)` with `U₁` the bordered Moore determinant in the deformed
/// character values `C(σ_i)` and `f̃`, divided by `Δ(C(σ₁),…,C(σ_s))`.
pub fn deformed_u(
    ch: &Character,
    mu: &[Fe],
    alg: &ArtinAlgebra,
    cvals: &[ArtinElem],
    ftilde: &Series<ArtinElem>,
) -> Result<DeformedU, Error> {
    check_mu(ch, mu)?;
    let k = ch.field();
    if cvals.len() != ch.s() || cvals.iter().zip(ch.vals()).any(|(c, v)| alg.residue(c) != *v) {
        return Err(Error::ReductionMismatch);
    }
    let m = ch.m() as usize;
    let inv_f = ftilde.inverse(alg)?;
    let (dp, _) = inv_f.weierstrass_prepare(alg)?;
    if dp.degree() != m {
        return Err(Error::InvalidArgument("1/f̃ must reduce to t^m times a unit"));
    }

    let mu_a: Vec<ArtinElem> = mu.iter().map(|x| alg.embed(*x)).collect();
    let den = alg.inv(&moore_det(alg, cvals))?;
    let coeffs = bordered_coeffs(alg, &mu_a, cvals);
    let s = ch.s() as u32;
    let mut u1 = Series::zero(ftilde.prec().saturating_mul(1));
    for (i, c) in coeffs.iter().enumerate() {
        let term = ftilde.frobenius_pow(alg, i as u32).scale(alg, &alg.mul(c, &den));
        u1 = if i == 0 { term } else { u1.add(alg, &term) };
    }
    let u = u1.frobenius_pow(alg, s).sub(alg, &u1);

    let bu = build_u(ch, mu)?;
    let fbar = ftilde.map(k, |c| alg.residue(c));
    let expect = bu.u.apply_series(k, &fbar);
    let ubar = u.map(k, |c| alg.residue(c));
    let n = expect.prec().min(ubar.prec());
    if expect.truncate(k, n) != ubar.truncate(k, n) {
        return Err(Error::ReductionMismatch);
    }
    Ok(DeformedU { u1, u, splits_branch: !is_single_root_power(alg, &dp.coeffs) })
}

/// Whether `tᵐ + a_{m−1}t^{m−1} + … + a₀ = (t − r)ᵐ` for some `r`; since
/// `p ∤ m`, `r = −a_{m−1}/m` is forced.
pub fn is_single_root_power<R: CoeffRing>(ring: &R, coeffs: &[R::Elem]) -> bool {
    let m = coeffs.len();
    if m == 0 {
        return true;
    }
    let Ok(inv_m) = ring.inv(&ring.from_int(m as i64)) else {
        return false;
    };
    let r = ring.neg(&ring.mul(&coeffs[m - 1], &inv_m));
    let neg_r = ring.neg(&r);
    // (t − r)^m = Σ binom(m, j) (−r)^{m−j} t^j.
    let p = ring.field().p() as u64;
    let mut ok = true;
    for j in 0..m {
        let b = binomial_mod(m as u64, j as u64, p);
        let expected = ring.mul(&ring.from_int(b as i64), &ring.pow(&neg_r, (m - j) as u64));
        ok &= expected == coeffs[j];
    }
    ok
}

/// `binom(n, k) mod p` via Lucas' theorem.
pub fn binomial_mod(mut n: u64, mut k: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while n > 0 || k > 0 {
        let (a, b) = (n % p, k % p);
        if b > a {
            return 0;
        }
        let mut c = 1u64;
        for i in 0..b {
            c = c * ((a - i) % p) % p;
        }
        let mut f = 1u64;
        for i in 1..=b {
            f = f * i % p;
        }
        let mut inv = 1u64;
        for _ in 0..p.saturating_sub(2) {
            inv = inv * f % p;
        }
        acc = acc * c % p * inv % p;
        n /= p;
        k /= p;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::autoreps::ramification_data;

    fn f2() -> FiniteField {
        FiniteField::prime(2).unwrap()
    }

    fn laurent(k: &FiniteField, terms: &[(i64, u16)]) -> Series<Fe> {
        let t: Vec<(i64, Fe)> = terms.iter().map(|(e, c)| (*e, Fe(*c))).collect();
        Series::from_terms(k, &t, EXACT)
    }

    #[test]
    fn build_u_examples() {
        let ch = Character::standard(2, 1, 3).unwrap();
        let k = ch.field();
        let b = build_u(&ch, &[Fe::ONE]).unwrap();
        assert_eq!(b.u1, PPolynomial::identity(k));
        assert_eq!(b.u, PPolynomial::from_terms(k, [(0, Fe::ONE), (1, Fe::ONE)]));
        assert!(b.relation_holds);

        let k5 = FiniteField::prime(5).unwrap();
        let ch = Character::new(k5.clone(), vec![Fe(3)], 2).unwrap();
        let b = build_u(&ch, &[Fe::ONE]).unwrap();
        let ic = k5.inv(Fe(3)).unwrap();
        assert_eq!(b.u1, PPolynomial::from_terms(&k5, [(0, ic)]));
        assert_eq!(b.u, PPolynomial::from_terms(&k5, [(0, k5.neg(ic)), (1, k5.pow(ic, 5))]));

        let ch = Character::standard(2, 2, 3).unwrap();
        let b = build_u(&ch, &default_mu(&ch)).unwrap();
        assert!(b.relation_holds);
        // With mu equal to the character values, u1 is the identity.
        assert_eq!(b.u1, PPolynomial::identity(ch.field()));
        assert_eq!(b.u.top_index(), Some(2));
        let w = ch.field().generator();
        let b = build_u(&ch, &[w, Fe::ONE]).unwrap();
        assert!(b.relation_holds);
        assert_eq!(b.u.top_index(), Some(3));
        assert_eq!(build_u(&ch, &[Fe::ONE, Fe::ONE]), Err(Error::DependentMu));
    }

    #[test]
    fn u1_is_the_normalized_combination() {
        // The bordered determinant carries a global sign (-1)^(s+1).
        for (p, s, m) in [(2, 2, 3), (3, 2, 2), (2, 1, 3), (5, 2, 3), (3, 1, 4)] {
            let ch = Character::standard(p, s, m).unwrap();
            let k = ch.field();
            let w = k.generator();
            let mut mu = default_mu(&ch);
            mu[0] = k.add(mu[0], w);
            let gens = normalized_generators(&ch).unwrap();
            let mut combo = gens.iter().zip(&mu).fold(PPolynomial::zero(), |acc, (g, m)| acc.add(k, &g.yi.scale(k, m)));
            if s % 2 == 0 {
                combo = combo.neg(k);
            }
            assert_eq!(build_u(&ch, &mu).unwrap().u1, combo);
        }
    }

    #[test]
    fn normalized_generator_examples() {
        let ch = Character::standard(2, 2, 3).unwrap();
        let k = ch.field();
        let w = k.generator();
        let gens = normalized_generators(&ch).unwrap();
        assert_eq!(gens[0].yi, PPolynomial::from_terms(k, [(1, w), (0, k.mul(w, w))]));
        for g in &gens {
            assert!(g.shift_check.iter().all(|x| *x));
            assert!(g.yi.apply(k, &Fe::ZERO).is_zero());
        }
        let ch = Character::standard(3, 1, 2).unwrap();
        let g = &normalized_generators(&ch).unwrap()[0];
        assert_eq!(g.yi.apply(ch.field(), &ch.vals()[0]), Fe::ONE);
    }

    #[test]
    fn germ_examples() {
        let k = f2();
        let ch = Character::new(k.clone(), vec![Fe::ONE], 1).unwrap();
        let g = germ_model(&ch, &[Fe::ONE]).unwrap();
        assert_eq!(g.upstairs.rhs, CoverRhs::Germ(laurent(&k, &[(-2, 1), (-1, 1)])));
        let ch = Character::standard(2, 1, 3).unwrap();
        let g = germ_model(&ch, &[Fe::ONE]).unwrap();
        assert_eq!(g.upstairs.rhs, CoverRhs::Germ(laurent(&k, &[(-6, 1), (-3, 1)])));
        let ch = Character::standard(2, 2, 3).unwrap();
        let g = germ_model(&ch, &default_mu(&ch)).unwrap();
        let CoverRhs::Germ(up) = &g.upstairs.rhs else { panic!() };
        assert_eq!(up.lead(), -12);
        let g = germ_model(&ch, &[ch.field().generator(), Fe::ONE]).unwrap();
        let CoverRhs::Germ(up) = &g.upstairs.rhs else { panic!() };
        assert_eq!(up.lead(), -24);
    }

    #[test]
    fn upstairs_germ_is_a_trivial_class() {
        // u = D(u₁(f)) is split upstairs, so its class there vanishes.
        let ch = Character::standard(3, 2, 2).unwrap();
        let g = germ_model(&ch, &default_mu(&ch)).unwrap();
        let CoverRhs::Germ(up) = &g.upstairs.rhs else { panic!() };
        assert!(class_reduce(ch.field(), up, 2).unwrap().reduced.is_zero());
    }

    #[test]
    fn reduce_examples() {
        let k = f2();
        let c = class_reduce(&k, &laurent(&k, &[(0, 1), (3, 1)]), 1).unwrap();
        assert!(c.reduced.is_zero());
        let g = laurent(&k, &[(-4, 1)]);
        let c = class_reduce(&k, &g, 1).unwrap();
        assert_eq!(c.reduced, laurent(&k, &[(-1, 1)]));
        assert!(verify_reduction(&k, &g, &c));
        let c = class_reduce(&k, &laurent(&k, &[(-3, 1)]), 1).unwrap();
        assert_eq!(c.reduced, laurent(&k, &[(-3, 1)]));
        // t⁻⁶ + t⁻³ reduces to 2t⁻³ = 0 in characteristic 2.
        let c = class_reduce(&k, &laurent(&k, &[(-6, 1), (-3, 1)]), 1).unwrap();
        assert!(c.reduced.is_zero());
        assert_eq!(conductor(&k, &c), Err(Error::EmptyClass));
    }

    #[test]
    fn conductor_examples() {
        let k = f2();
        let c = class_reduce(&k, &laurent(&k, &[(-1, 1)]), 1).unwrap();
        assert_eq!(conductor(&k, &c), Ok(1));
        let k3 = FiniteField::prime(3).unwrap();
        let c = class_reduce(&k3, &laurent(&k3, &[(-4, 1), (-3, 1)]), 1).unwrap();
        assert_eq!(conductor(&k3, &c), Ok(4));
        let k4 = FiniteField::new(2, 2, None).unwrap();
        // s = 2: t^{-2} is not reducible, d = 1 with ν = 1.
        let c = class_reduce(&k4, &laurent(&k4, &[(-2, 1), (-6, 1)]), 2).unwrap();
        assert_eq!(conductor(&k4, &c), Ok(3));
    }

    #[test]
    fn germ_pipeline_recovers_conductor() {
        for (p, s, m) in [(2, 1, 3), (2, 2, 3), (3, 1, 2), (3, 2, 4), (5, 2, 3), (2, 2, 7)] {
            let ch = Character::standard(p, s, m).unwrap();
            let k = ch.field();
            let g = germ_model(&ch, &default_mu(&ch)).unwrap();
            let CoverRhs::Germ(down) = &g.downstairs.rhs else { panic!() };
            let cls = class_reduce(k, down, s as u32).unwrap();
            assert!(verify_reduction(k, down, &cls));
            let ram = ramification_data(&ch).unwrap();
            assert_eq!(Some(&conductor(k, &cls).unwrap()), ram.jumps.last());
        }
    }

    #[test]
    fn equivalence_examples() {
        let k = f2();
        let g = laurent(&k, &[(-5, 1), (-3, 1)]);
        assert_eq!(equivalent_covers(&k, &g, &g, 1).unwrap(), Equivalence { equivalent: true, zeta: Some(Fe::ONE) });
        let e = equivalent_covers(&k, &laurent(&k, &[(-4, 1)]), &laurent(&k, &[(-1, 1)]), 1).unwrap();
        assert_eq!(e, Equivalence { equivalent: true, zeta: Some(Fe::ONE) });
        let e = equivalent_covers(&k, &laurent(&k, &[(-3, 1)]), &laurent(&k, &[(-1, 1)]), 1).unwrap();
        assert!(!e.equivalent);
        let k4 = FiniteField::new(2, 2, None).unwrap();
        let w = k4.generator();
        let g = laurent(&k4, &[(-3, 1), (-1, 3)]);
        let e = equivalent_covers(&k4, &g.scale(&k4, &w), &g, 2).unwrap();
        assert_eq!(e.zeta, Some(w));
        let a = class_reduce(&k4, &g, 2).unwrap();
        let b = class_reduce(&k4, &g.scale(&k4, &w), 2).unwrap();
        assert_eq!(a.orbit_marker, b.orbit_marker);
    }

    #[test]
    fn deformed_u_examples() {
        let ch = Character::standard(2, 1, 3).unwrap();
        let k = ch.field().clone();
        let alg = ArtinAlgebra::dual(k.clone());
        let eps = alg.epsilon();
        let one = alg.one();
        let ft = Series::monomial(&alg, one, -3, 40);
        let d = deformed_u(&ch, &[Fe::ONE], &alg, &[one], &ft).unwrap();
        let bu = build_u(&ch, &[Fe::ONE]).unwrap();
        let u = bu.u.apply_series(&k, &Series::monomial(&k, Fe::ONE, -3, 40));
        assert_eq!(d.u.map(&k, |c| alg.residue(c)), u);
        assert!(d.u.terms(&alg).all(|(_, c)| alg.comps(&c)[1].is_zero()));
        assert!(!d.splits_branch);

        let c = alg.add(&one, &eps);
        let d = deformed_u(&ch, &[Fe::ONE], &alg, &[c], &ft).unwrap();
        // U = (f/C)² + f/C with 1/C = 1 + ε: U − u = ε t⁻³.
        let diff = d.u.sub(&alg, &bu.u.apply_series(&k, &Series::monomial(&k, Fe::ONE, -3, 40)).map(&alg, |x| alg.embed(*x)));
        assert_eq!(diff, Series::monomial(&alg, eps, -3, diff.prec()));

        // 1/f̃ = t³ + εt.
        let inv = Series::from_terms(&alg, &[(1, eps), (3, one)], 40);
        let ft = inv.inverse(&alg).unwrap();
        let d = deformed_u(&ch, &[Fe::ONE], &alg, &[one], &ft).unwrap();
        assert!(d.splits_branch);
        assert_eq!(deformed_u(&ch, &[Fe::ONE], &alg, &[eps], &ft), Err(Error::ReductionMismatch));
    }

    #[test]
    fn lucas_binomials() {
        assert_eq!(binomial_mod(5, 2, 3), 1);
        assert_eq!(binomial_mod(4, 2, 2), 0);
        assert_eq!(binomial_mod(6, 3, 5), 0);
        assert_eq!(binomial_mod(7, 3, 5), 0);
        assert_eq!(binomial_mod(7, 2, 7), 0);
        assert_eq!(binomial_mod(10, 4, 7), 210 % 7);
    }
}
