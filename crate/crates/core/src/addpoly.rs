//! Moore determinants and additive polynomials `Σ c_ν Y^{p^ν}`.

use alloc::vec;
use alloc::vec::Vec;

use crate::autoreps::Character;
use crate::coeffring::{CoeffRing, Fe, FiniteField};
use crate::error::Error;
use crate::series::Series;

/// Determinant by cofactor expansion along the first column; fine for the
/// `n ≤ 5` matrices that occur here and valid over any commutative ring.
pub fn det<R: CoeffRing>(ring: &R, m: &[Vec<R::Elem>]) -> R::Elem {
    let n = m.len();
    match n {
        0 => ring.one(),
        1 => m[0][0],
        2 => ring.sub(&ring.mul(&m[0][0], &m[1][1]), &ring.mul(&m[0][1], &m[1][0])),
        _ => {
            let mut acc = ring.zero();
            for i in 0..n {
                if ring.is_zero(&m[i][0]) {
                    continue;
                }
                let minor = minor(m, i, 0);
                let term = ring.mul(&m[i][0], &det(ring, &minor));
                acc = if i % 2 == 0 { ring.add(&acc, &term) } else { ring.sub(&acc, &term) };
            }
            acc
        }
    }
}

fn minor<E: Copy>(m: &[Vec<E>], row: usize, col: usize) -> Vec<Vec<E>> {
    m.iter()
        .enumerate()
        .filter(|(i, _)| *i != row)
        .map(|(_, r)| r.iter().enumerate().filter(|(j, _)| *j != col).map(|(_, x)| *x).collect())
        .collect()
}

fn frob_pow<R: CoeffRing>(ring: &R, x: &R::Elem, k: u32) -> R::Elem {
    let mut y = *x;
    for _ in 0..k {
        y = ring.frobenius(&y);
    }
    y
}

/// The matrix with rows `(x_j^{p^i})`, `i = 0..n`.
pub fn moore_matrix<R: CoeffRing>(ring: &R, xs: &[R::Elem]) -> Vec<Vec<R::Elem>> {
    (0..xs.len() as u32).map(|i| xs.iter().map(|x| frob_pow(ring, x, i)).collect()).collect()
}

/// `Δ(x₁,…,x_n) = det(x_j^{p^{i-1}})`.
pub fn moore_det<R: CoeffRing>(ring: &R, xs: &[R::Elem]) -> R::Elem {
    det(ring, &moore_matrix(ring, xs))
}

/// Coefficients of `Δ(x₁,…,x_n, Y)` as a p-polynomial in `Y`, by expansion
/// along the `Y` column: the coefficient of `Y^{p^i}` is the signed minor.
fn moore_in_y<R: CoeffRing>(ring: &R, xs: &[R::Elem]) -> Vec<R::Elem> {
    let n = xs.len();
    let full: Vec<Vec<R::Elem>> = (0..=n as u32)
        .map(|i| {
            let mut row: Vec<R::Elem> = xs.iter().map(|x| frob_pow(ring, x, i)).collect();
            row.push(ring.zero());
            row
        })
        .collect();
    (0..=n)
        .map(|i| {
            let d = det(ring, &minor(&full, i, n));
            if (i + n) % 2 == 0 {
                d
            } else {
                ring.neg(&d)
            }
        })
        .collect()
}

/// A p-polynomial `Σ c_ν Y^{p^ν}`, stored sparsely by Frobenius index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PPolynomial<E> {
    terms: Vec<(u32, E)>,
}

impl<E: Copy + PartialEq> PPolynomial<E> {
    pub fn zero() -> Self {
        PPolynomial { terms: Vec::new() }
    }

    pub fn from_terms<R: CoeffRing<Elem = E>>(ring: &R, terms: impl IntoIterator<Item = (u32, E)>) -> Self {
        let mut p = PPolynomial::zero();
        for (nu, c) in terms {
            p = p.add(ring, &PPolynomial { terms: vec![(nu, c)] });
        }
        p
    }

    /// `Y`.
    pub fn identity<R: CoeffRing<Elem = E>>(ring: &R) -> Self {
        PPolynomial { terms: vec![(0, ring.one())] }
    }

    pub fn terms(&self) -> &[(u32, E)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff<R: CoeffRing<Elem = E>>(&self, ring: &R, nu: u32) -> E {
        self.terms.iter().find(|(n, _)| *n == nu).map_or(ring.zero(), |(_, c)| *c)
    }

    /// Highest Frobenius index with a nonzero coefficient.
    pub fn top_index(&self) -> Option<u32> {
        self.terms.last().map(|(n, _)| *n)
    }

    pub fn add<R: CoeffRing<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        let mut out: Vec<(u32, E)> = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let a = self.terms.get(i);
            let b = other.terms.get(j);
            let (nu, c) = match (a, b) {
                (Some(&(na, ca)), Some(&(nb, cb))) if na == nb => {
                    i += 1;
                    j += 1;
                    (na, ring.add(&ca, &cb))
                }
                (Some(&(na, ca)), Some(&(nb, _))) if na < nb => {
                    i += 1;
                    (na, ca)
                }
                (Some(&(na, ca)), None) => {
                    i += 1;
                    (na, ca)
                }
                (_, Some(&(nb, cb))) => {
                    j += 1;
                    (nb, cb)
                }
                (None, None) => unreachable!(),
            };
            if !ring.is_zero(&c) {
                out.push((nu, c));
            }
        }
        PPolynomial { terms: out }
    }

    pub fn neg<R: CoeffRing<Elem = E>>(&self, ring: &R) -> Self {
        PPolynomial { terms: self.terms.iter().map(|(n, c)| (*n, ring.neg(c))).collect() }
    }

    pub fn sub<R: CoeffRing<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        self.add(ring, &other.neg(ring))
    }

    pub fn scale<R: CoeffRing<Elem = E>>(&self, ring: &R, c: &E) -> Self {
        PPolynomial::from_terms(ring, self.terms.iter().map(|(n, x)| (*n, ring.mul(c, x))))
    }

    /// `P(Y)^{p^k} = Σ c_ν^{p^k} Y^{p^{ν+k}}`.
    pub fn frobenius_twist<R: CoeffRing<Elem = E>>(&self, ring: &R, k: u32) -> Self {
        PPolynomial::from_terms(ring, self.terms.iter().map(|(n, c)| (n + k, frob_pow(ring, c, k))))
    }

    /// `D(P) = P^{p^s} − P`.
    pub fn artin_schreier<R: CoeffRing<Elem = E>>(&self, ring: &R, s: u32) -> Self {
        self.frobenius_twist(ring, s).sub(ring, self)
    }

    /// `P ∘ Q`.
    pub fn compose<R: CoeffRing<Elem = E>>(&self, ring: &R, q: &Self) -> Self {
        let mut acc = PPolynomial::zero();
        for (nu, c) in &self.terms {
            acc = acc.add(ring, &q.frobenius_twist(ring, *nu).scale(ring, c));
        }
        acc
    }

    pub fn apply<R: CoeffRing<Elem = E>>(&self, ring: &R, x: &E) -> E {
        self.terms
            .iter()
            .fold(ring.zero(), |acc, (nu, c)| ring.add(&acc, &ring.mul(c, &frob_pow(ring, x, *nu))))
    }

    /// Evaluation at a series, with Frobenius powers taken coefficientwise.
    pub fn apply_series<R: CoeffRing<Elem = E>>(&self, ring: &R, x: &Series<E>) -> Series<E> {
        let mut acc: Option<Series<E>> = None;
        for (nu, c) in &self.terms {
            let term = x.frobenius_pow(ring, *nu).scale(ring, c);
            acc = Some(match acc {
                None => term,
                Some(a) => a.add(ring, &term),
            });
        }
        acc.unwrap_or_else(|| Series::zero(x.prec()))
    }

    /// `P(L(Y) + c) = P(L(Y)) + P(c)` for an affine argument, returned as
    /// `(linear part, constant)`.
    pub fn apply_affine<R: CoeffRing<Elem = E>>(&self, ring: &R, linear: &Self, constant: &E) -> (Self, E) {
        (self.compose(ring, linear), self.apply(ring, constant))
    }
}

impl PPolynomial<Fe> {
    /// Division `self = Q ∘ d + R` in the skew ring of p-polynomials, with
    /// `top_index(R) < top_index(d)`.
    pub fn right_divide(&self, k: &FiniteField, d: &Self) -> Result<(Self, Self), Error> {
        let dtop = d.top_index().ok_or(Error::InvalidArgument("division by the zero p-polynomial"))?;
        let lead = d.coeff(k, dtop);
        let mut q = PPolynomial::zero();
        let mut r = self.clone();
        while let Some(rtop) = r.top_index() {
            if rtop < dtop {
                break;
            }
            let shift = rtop - dtop;
            // (a Y^{p^shift}) ∘ d has top coefficient a·lead^{p^shift}
            let a = k.div(r.coeff(k, rtop), k.frobenius_pow(lead, shift))?;
            let term = PPolynomial { terms: vec![(shift, a)] };
            r = r.sub(k, &term.compose(k, d));
            q = q.add(k, &term);
        }
        Ok((q, r))
    }
}

/// `Δ(c(σ_j) : j ≠ omit, Y) / Δ(c(σ_j) : j ≠ omit)`; `omit` is 1-based.
pub fn additive_poly_from_character(ch: &Character, omit: Option<usize>) -> Result<PPolynomial<Fe>, Error> {
    let k = ch.field();
    let xs: Vec<Fe> = match omit {
        None => ch.vals().to_vec(),
        Some(i) => {
            if i == 0 || i > ch.s() {
                return Err(Error::InvalidArgument("omitted index out of range"));
            }
            ch.vals().iter().enumerate().filter(|(j, _)| j + 1 != i).map(|(_, x)| *x).collect()
        }
    };
    let den = k.inv(moore_det(k, &xs))?;
    let coeffs = moore_in_y(k, &xs);
    Ok(PPolynomial::from_terms(k, coeffs.iter().enumerate().map(|(i, c)| (i as u32, k.mul(*c, den)))))
}

/// `Δ(c₁,…,ĉ_i,…,c_s,c_i) = (−1)^{s−i}·Δ(c₁,…,c_s)`; `i` is 1-based.
pub fn moore_swap_identity_check(ch: &Character, i: usize) -> Result<bool, Error> {
    let s = ch.s();
    if i == 0 || i > s {
        return Err(Error::InvalidArgument("index out of range"));
    }
    let k = ch.field();
    let mut moved: Vec<Fe> = ch.vals().iter().enumerate().filter(|(j, _)| j + 1 != i).map(|(_, x)| *x).collect();
    moved.push(ch.vals()[i - 1]);
    let lhs = moore_det(k, &moved);
    let d = moore_det(k, ch.vals());
    let rhs = if (s - i).is_multiple_of(2) { d } else { k.neg(d) };
    Ok(lhs == rhs)
}

/// Exhaustive check that the roots of `Φ` in the field are exactly the
/// `F_p`-span of the character values.
pub fn root_space_check(ch: &Character) -> Result<bool, Error> {
    let k = ch.field();
    let phi = additive_poly_from_character(ch, None)?;
    let span: Vec<Fe> = ch.elements().iter().map(|g| ch.value(g)).collect();
    let mut in_span = vec![false; k.size() as usize];
    for v in &span {
        in_span[v.0 as usize] = true;
    }
    Ok(k.elements().all(|x| phi.apply(k, &x).is_zero() == in_span[x.0 as usize]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffring::ArtinAlgebra;
    use proptest::prelude::*;

    fn f4() -> FiniteField {
        FiniteField::new(2, 2, None).unwrap()
    }

    #[test]
    fn moore_examples() {
        let k = f4();
        let w = k.generator();
        assert_eq!(moore_det(&k, &[Fe::ONE]), Fe::ONE);
        assert_eq!(moore_det(&k, &[Fe::ONE, w]), Fe::ONE);
        assert_eq!(moore_det(&k, &[Fe::ONE, Fe::ONE]), Fe::ZERO);
    }

    #[test]
    fn additive_poly_examples() {
        let k = FiniteField::prime(2).unwrap();
        let ch = Character::new(k.clone(), vec![Fe::ONE], 3).unwrap();
        let phi = additive_poly_from_character(&ch, None).unwrap();
        assert_eq!(phi, PPolynomial::from_terms(&k, [(0, Fe::ONE), (1, Fe::ONE)]));

        let k = f4();
        let w = k.generator();
        let ch = Character::new(k.clone(), vec![w], 3).unwrap();
        let phi = additive_poly_from_character(&ch, None).unwrap();
        assert_eq!(phi, PPolynomial::from_terms(&k, [(0, k.neg(w)), (1, Fe::ONE)]));

        let ch = Character::new(k.clone(), vec![Fe::ONE, w], 3).unwrap();
        let ad1 = additive_poly_from_character(&ch, Some(1)).unwrap();
        assert_eq!(ad1, PPolynomial::from_terms(&k, [(0, w), (1, Fe::ONE)]));
        let ad2 = additive_poly_from_character(&ch, Some(2)).unwrap();
        assert_eq!(ad2, PPolynomial::from_terms(&k, [(0, Fe::ONE), (1, Fe::ONE)]));
        assert_eq!(ad1.apply(&k, &Fe::ONE), k.add(Fe::ONE, w));
        assert!(ad1.apply(&k, &w).is_zero());
        assert!(!ad2.apply(&k, &w).is_zero());
    }

    #[test]
    fn swap_identity_and_root_spaces() {
        for (p, d) in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (5, 2), (7, 2)] {
            let k = FiniteField::new(p, d, None).unwrap();
            let els: Vec<Fe> = k.elements().skip(1).collect();
            for &a in &els {
                let ch = Character::new(k.clone(), vec![a], 1).unwrap();
                assert!(root_space_check(&ch).unwrap());
                for &b in &els {
                    if let Ok(ch) = Character::new(k.clone(), vec![a, b], 2) {
                        assert!(moore_swap_identity_check(&ch, 1).unwrap());
                        assert!(moore_swap_identity_check(&ch, 2).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn right_division_recovers_factor() {
        let k = FiniteField::new(3, 2, None).unwrap();
        let w = k.generator();
        let ch = Character::new(k.clone(), vec![Fe::ONE, w], 2).unwrap();
        let phi = additive_poly_from_character(&ch, None).unwrap();
        let q = PPolynomial::from_terms(&k, [(0, w), (1, Fe(2))]);
        let (qq, r) = q.compose(&k, &phi).right_divide(&k, &phi).unwrap();
        assert_eq!(qq, q);
        assert!(r.is_zero());
    }

    #[test]
    fn series_application_uses_coefficientwise_frobenius() {
        let k = f4();
        let a = ArtinAlgebra::dual(k.clone());
        let p = PPolynomial::from_terms(&a, [(0, a.one()), (1, a.epsilon())]);
        let x = Series::from_coeffs(&a, -3, vec![a.one(), a.epsilon()], 4);
        let y = p.apply_series(&a, &x);
        let direct = x.add(&a, &x.square(&a).scale(&a, &a.epsilon()));
        assert_eq!(y.truncate(&a, direct.prec()), direct);
    }

    proptest! {
        #[test]
        fn additivity(a in 0u16..25, b in 0u16..25, c0 in 0u16..25, c1 in 0u16..25, c2 in 0u16..25) {
            let k = FiniteField::new(5, 2, None).unwrap();
            let p = PPolynomial::from_terms(&k, [(0, Fe(c0)), (1, Fe(c1)), (3, Fe(c2))]);
            let lhs = p.apply(&k, &k.add(Fe(a), Fe(b)));
            let rhs = k.add(p.apply(&k, &Fe(a)), p.apply(&k, &Fe(b)));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn moore_det_is_fp_linear_in_last_argument(x in 1u16..27, y in 0u16..27, z in 0u16..27, l in 0i64..3) {
            let k = FiniteField::new(3, 3, None).unwrap();
            let lin = k.add(Fe(y), k.mul(k.from_int(l), Fe(z)));
            let lhs = moore_det(&k, &[Fe(x), Fe(1), lin]);
            let rhs = k.add(moore_det(&k, &[Fe(x), Fe(1), Fe(y)]), k.mul(k.from_int(l), moore_det(&k, &[Fe(x), Fe(1), Fe(z)])));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
