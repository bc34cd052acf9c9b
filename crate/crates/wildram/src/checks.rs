//! Checks shared by the `deform` task and the acceptance grid.

use rand_chacha::rand_core::RngCore;
use wildram_core::autoreps::{Character, GroupElem};
use wildram_core::cohomology::{elem_index, is_cocycle, OneCochain};
use wildram_core::deform::{
    cocycle_formula, cocycle_formula_rederived, conjugate_ftilde, conjugate_rep, matrix_lifts, matrix_lifts_all, obstruction_two_cocycle,
    rep_validate, same_class, tangent_cocycle_extract, DeformationDatum, MatrixRep, Obstruction,
};
use wildram_core::{ArtinAlgebra, ArtinElem, CoeffRing, Error, Fe, FiniteField, Series};

const EXACT: i64 = i64::MAX / 4;

pub fn random_fe(k: &FiniteField, rng: &mut dyn RngCore) -> Fe {
    Fe((rng.next_u32() % k.size()) as u16)
}

/// Working precision for extraction, and the precision of `f̃` feeding it.
pub fn extraction_precs(ch: &Character) -> (i64, i64) {
    let m = ch.m() as i64;
    (3 * (m + 1), 5 * (m + 1) + 2 * m)
}

#[derive(Clone, Debug)]
pub struct Extraction {
    pub extracted: OneCochain,
    pub formula: OneCochain,
    pub rederived: OneCochain,
    pub is_cocycle: bool,
}

impl Extraction {
    pub fn matches_formula(&self) -> bool {
        self.extracted == self.formula
    }

    pub fn matches_rederived(&self) -> bool {
        self.extracted == self.rederived
    }
}

pub fn extract(d: &DeformationDatum) -> Result<Extraction, Error> {
    let ch = d.ch();
    let (prec, fprec) = extraction_precs(ch);
    let extracted = tangent_cocycle_extract(&d.rep, &d.ftilde(fprec)?, prec)?;
    let gens = ch.generators();
    let formula = OneCochain { vals: gens.iter().map(|g| cocycle_formula(d, g)).collect::<Result<_, _>>()? };
    let rederived = OneCochain { vals: gens.iter().map(|g| cocycle_formula_rederived(d, g)).collect::<Result<_, _>>()? };
    let is_cocycle = is_cocycle(ch, &extracted)?;
    Ok(Extraction { extracted, formula, rederived, is_cocycle })
}

/// A conjugator `μ ∈ εk`, `λ₀ ∈ 1 + εk`.
pub fn random_conjugator(alg: &ArtinAlgebra, rng: &mut dyn RngCore) -> (ArtinElem, ArtinElem) {
    let k = alg.base();
    let mu = alg.from_comps(&[Fe::ZERO, random_fe(k, rng)]).unwrap();
    let lam0 = alg.from_comps(&[Fe::ONE, random_fe(k, rng)]).unwrap();
    (mu, lam0)
}

#[derive(Clone, Debug)]
pub struct ConjugationOutcome {
    pub valid: bool,
    pub same_class: bool,
}

pub fn conjugation(d: &DeformationDatum, base: &OneCochain, mu: &ArtinElem, lam0: &ArtinElem) -> Result<ConjugationOutcome, Error> {
    let ch = d.ch();
    let (prec, fprec) = extraction_precs(ch);
    let conj = conjugate_rep(&d.rep, mu, lam0)?;
    let valid = rep_validate(&conj).valid;
    let y = tangent_cocycle_extract(&conj, &d.ftilde(fprec)?, prec)?;
    Ok(ConjugationOutcome { valid, same_class: same_class(ch, base, &y)? })
}

/// Matrix data over `F_q[ε]/εⁿ` together with a basis function `f̃` for
/// which every `ρ̃_g` exists. For `n = 2`: `λ = 1`, `C(σ_i) = c_i + r_iε`,
/// `1/f̃ = tᵐ + ε Σ_μ a_μ t^μ`, all random. For `n ≥ 3` random second-order
/// terms are usually obstructed, so the data are `C(σ_i) = c_i + Σ_j r_{ij}εʲ`
/// with `f̃ = t^{-m}`, conjugated by a random `(μ, λ₀)`.
pub fn random_matrix_data(ch: &Character, n: usize, rng: &mut dyn RngCore) -> Result<(MatrixRep, Series<ArtinElem>), Error> {
    let k = ch.field();
    let alg = ArtinAlgebra::new(k.clone(), n)?;
    let mut comps = |c0: Fe| -> Result<ArtinElem, Error> {
        let mut cs = vec![c0];
        cs.extend((1..n).map(|_| random_fe(k, rng)));
        alg.from_comps(&cs)
    };
    let c = ch.vals().iter().map(|v| comps(*v)).collect::<Result<_, _>>()?;
    let rep = MatrixRep::new(alg.clone(), ch.clone(), c, vec![alg.one(); ch.s()])?;
    let m = ch.m() as i64;
    let prec = obstruction_prec(ch);
    let conj = if n > 2 { Some((comps(Fe::ZERO)?, comps(Fe::ONE)?)) } else { None };
    let mut terms = vec![(m, alg.one())];
    if conj.is_none() {
        for mu in 0..m {
            terms.push((mu, comps(Fe::ZERO)?));
        }
    }
    let w = Series::from_terms(&alg, &terms, EXACT);
    // Inverting through the nilpotent part loses precision; widen until
    // `1/f̃` supports `deformed_rho` at `prec`.
    let mut work = prec + 2 * m + 2;
    loop {
        let mut ft = w.with_prec(&alg, work).inverse(&alg)?;
        if let Some((mu, lam0)) = &conj {
            ft = conjugate_ftilde(&alg, &ft, mu, lam0);
        }
        if ft.inverse(&alg)?.prec() >= prec + 2 * m + 2 {
            return match &conj {
                Some((mu, lam0)) => Ok((conjugate_rep(&rep, mu, lam0)?, ft)),
                None => Ok((rep, ft)),
            };
        }
        work += m + 2;
    }
}

pub fn obstruction_prec(ch: &Character) -> i64 {
    2 * (ch.m() as i64 + 2)
}

#[derive(Clone, Debug)]
pub struct ObstructionOutcome {
    pub rep_valid: bool,
    pub generator_lifts: Obstruction,
    pub element_lifts: Obstruction,
    /// The perturbed element: `σ₁`, or the identity when `|V| = 2`, where
    /// every coboundary supported at `σ₁` vanishes.
    pub perturbed_at: GroupElem,
    pub perturbed: Obstruction,
}

impl ObstructionOutcome {
    pub fn matrix_lifts_vanish(&self) -> bool {
        [&self.generator_lifts, &self.element_lifts].iter().all(|o| o.vanishes_identically && o.is_cocycle)
    }

    pub fn perturbed_nonzero_coboundary(&self) -> bool {
        !self.perturbed.vanishes_identically && self.perturbed.is_cocycle && self.perturbed.vanishes_in_h2
    }

    pub fn passed(&self) -> bool {
        self.rep_valid && self.matrix_lifts_vanish() && self.perturbed_nonzero_coboundary()
    }
}

pub fn obstruction(rep: &MatrixRep, ft: &Series<ArtinElem>) -> Result<ObstructionOutcome, Error> {
    let ch = rep.ch();
    let alg = rep.alg();
    let n = alg.order();
    let prec = obstruction_prec(ch);
    let rep_valid = rep_validate(rep).valid;
    let generator_lifts = obstruction_two_cocycle(rep, ft, &matrix_lifts(rep, ft, prec)?, prec)?;
    let mut all = matrix_lifts_all(rep, ft, prec)?;
    let element_lifts = obstruction_two_cocycle(rep, ft, &all, prec)?;
    let perturbed_at = if ch.order() == 2 { GroupElem::identity(ch.s()) } else { GroupElem::generator(ch.s(), 0) };
    let i = elem_index(ch, &perturbed_at);
    all[i] = all[i].add(alg, &Series::monomial(alg, alg.eps_pow(n - 1), 1, prec));
    let perturbed = obstruction_two_cocycle(rep, ft, &all, prec)?;
    Ok(ObstructionOutcome { rep_valid, generator_lifts, element_lifts, perturbed_at, perturbed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn obstruction_outcomes() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for (p, s, m) in [(2, 1, 3), (3, 1, 2), (2, 2, 3)] {
            let ch = Character::standard(p, s, m).unwrap();
            for n in [2, 3] {
                let (rep, ft) = random_matrix_data(&ch, n, &mut rng).unwrap();
                let o = obstruction(&rep, &ft).unwrap();
                assert!(o.passed(), "{p} {s} {m} {n}");
            }
        }
    }

    #[test]
    fn extraction_sign() {
        for (p, m, expect) in [(2, 3, true), (3, 2, false)] {
            let ch = Character::standard(p, 1, m).unwrap();
            let d = DeformationDatum::new(&ch, &[Fe::ZERO], &[Fe::ONE], &vec![Fe::ONE; m as usize]).unwrap();
            let x = extract(&d).unwrap();
            assert!(x.is_cocycle && x.matches_rederived());
            assert!(!x.extracted.vals[0].is_zero());
            assert_eq!(x.matches_formula(), expect);
        }
    }
}
