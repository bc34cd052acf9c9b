//! Truncated Laurent series `Σ_{e < prec} c_e tᵉ` over a [`CoeffRing`].
//!
//! Precision is absolute: a series with `prec = N` is known modulo `t^N`.
//! Every operation returns the precision that its inputs actually support.
//! Iterative algorithms run on power series modulo `t^k`, where truncation
//! is a ring morphism, and assign the output precision analytically.

use alloc::vec;
use alloc::vec::Vec;

use crate::coeffring::{CoeffRing, Fe};
use crate::error::Error;

/// A truncated Laurent series. Coefficients are stored densely from the
/// first nonzero exponent `lead`; trailing zeros below `prec` are implicit.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Series<E> {
    lead: i64,
    prec: i64,
    coeffs: Vec<E>,
}

/// `tᵐ + a_{m-1}t^{m-1} + … + a₀` with every `aᵢ` in the maximal ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistinguishedPolynomial<E> {
    pub coeffs: Vec<E>,
}

impl<E> DistinguishedPolynomial<E> {
    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }
}

impl<E: Copy + PartialEq> DistinguishedPolynomial<E> {
    pub fn to_series<R: CoeffRing<Elem = E>>(&self, ring: &R, prec: i64) -> Series<E> {
        let mut cs = self.coeffs.clone();
        cs.push(ring.one());
        Series::from_coeffs(ring, 0, cs, prec)
    }
}

impl<E: Copy + PartialEq> Series<E> {
    /// The zero series known modulo `t^prec`.
    pub fn zero(prec: i64) -> Self {
        Series { lead: prec, prec, coeffs: Vec::new() }
    }

    pub fn from_coeffs<R: CoeffRing<Elem = E>>(ring: &R, lead: i64, mut coeffs: Vec<E>, prec: i64) -> Self {
        let keep = (prec - lead).max(0) as usize;
        coeffs.truncate(keep);
        let mut s = Series { lead, prec, coeffs };
        s.normalize(ring);
        s
    }

    pub fn from_terms<R: CoeffRing<Elem = E>>(ring: &R, terms: &[(i64, E)], prec: i64) -> Self {
        let mut s = Series::zero(prec);
        for &(e, c) in terms {
            s = s.add(ring, &Series::monomial(ring, c, e, prec));
        }
        s
    }

    pub fn monomial<R: CoeffRing<Elem = E>>(ring: &R, c: E, e: i64, prec: i64) -> Self {
        Series::from_coeffs(ring, e, vec![c], prec)
    }

    pub fn one<R: CoeffRing<Elem = E>>(ring: &R, prec: i64) -> Self {
        Series::monomial(ring, ring.one(), 0, prec)
    }

    /// The uniformizer `t`.
    pub fn var<R: CoeffRing<Elem = E>>(ring: &R, prec: i64) -> Self {
        Series::monomial(ring, ring.one(), 1, prec)
    }

    fn normalize<R: CoeffRing<Elem = E>>(&mut self, ring: &R) {
        let first = self.coeffs.iter().position(|c| !ring.is_zero(c));
        match first {
            None => {
                self.coeffs.clear();
                self.lead = self.prec;
            }
            Some(k) => {
                if k > 0 {
                    self.coeffs.drain(..k);
                    self.lead += k as i64;
                }
                while self.coeffs.last().is_some_and(|c| ring.is_zero(c)) {
                    self.coeffs.pop();
                }
            }
        }
    }

    /// Lowest exponent with a nonzero coefficient (`prec` for the zero series).
    pub fn lead(&self) -> i64 {
        self.lead
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// One past the highest stored exponent.
    pub fn top(&self) -> i64 {
        self.lead + self.coeffs.len() as i64
    }

    pub fn coeff<R: CoeffRing<Elem = E>>(&self, ring: &R, e: i64) -> E {
        if e < self.lead || e >= self.top() {
            ring.zero()
        } else {
            self.coeffs[(e - self.lead) as usize]
        }
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms<'a, R: CoeffRing<Elem = E>>(&'a self, ring: &'a R) -> impl Iterator<Item = (i64, E)> + 'a {
        self.coeffs
            .iter()
            .enumerate()
            .filter(move |(_, c)| !ring.is_zero(c))
            .map(move |(i, c)| (self.lead + i as i64, *c))
    }

    /// Raw coefficient vector for exponents `lo..hi` (zero-padded).
    pub fn dense(&self, zero: E, lo: i64, hi: i64) -> Vec<E> {
        let mut v = vec![zero; (hi - lo).max(0) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            let e = self.lead + i as i64;
            if e >= lo && e < hi {
                v[(e - lo) as usize] = *c;
            }
        }
        v
    }

    pub fn valuation<R: CoeffRing<Elem = E>>(&self, _ring: &R) -> Result<i64, Error> {
        if self.is_zero() {
            Err(Error::ValuationOfZero)
        } else {
            Ok(self.lead)
        }
    }

    /// Valuation of the reduction modulo the maximal ideal.
    pub fn reduced_valuation<R: CoeffRing<Elem = E>>(&self, ring: &R) -> Result<i64, Error> {
        self.coeffs
            .iter()
            .position(|c| ring.is_unit(c))
            .map(|i| self.lead + i as i64)
            .ok_or(Error::ValuationOfZero)
    }

    /// Lowers the precision to `min(prec, n)`.
    pub fn truncate<R: CoeffRing<Elem = E>>(&self, ring: &R, n: i64) -> Self {
        let prec = self.prec.min(n);
        Series::from_coeffs(ring, self.lead, self.coeffs.clone(), prec)
    }

    /// Reinterprets the known coefficients as exact up to `n` (used when the
    /// caller knows the series is a polynomial).
    pub fn with_prec<R: CoeffRing<Elem = E>>(&self, ring: &R, n: i64) -> Self {
        Series::from_coeffs(ring, self.lead, self.coeffs.clone(), n)
    }

    pub fn add<R: CoeffRing<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        self.combine(ring, other, false)
    }

    pub fn sub<R: CoeffRing<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        self.combine(ring, other, true)
    }

    fn combine<R: CoeffRing<Elem = E>>(&self, ring: &R, other: &Self, negate: bool) -> Self {
        let prec = self.prec.min(other.prec);
        if other.is_zero() {
            return self.truncate(ring, prec);
        }
        if self.is_zero() {
            let o = other.truncate(ring, prec);
            return if negate { o.neg(ring) } else { o };
        }
        let lo = self.lead.min(other.lead);
        let hi = self.top().max(other.top()).min(prec);
        if hi <= lo {
            return Series::zero(prec);
        }
        let mut v = self.dense(ring.zero(), lo, hi);
        for (i, c) in other.coeffs.iter().enumerate() {
            let e = other.lead + i as i64;
            if e < hi {
                let k = (e - lo) as usize;
                v[k] = if negate { ring.sub(&v[k], c) } else { ring.add(&v[k], c) };
            }
        }
        Series::from_coeffs(ring, lo, v, prec)
    }

    pub fn neg<R: CoeffRing<Elem = E>>(&self, ring: &R) -> Self {
        Series { lead: self.lead, prec: self.prec, coeffs: self.coeffs.iter().map(|c| ring.neg(c)).collect() }
    }

    pub fn scale<R: CoeffRing<Elem = E>>(&self, ring: &R, c: &E) -> Self {
        Series::from_coeffs(ring, self.lead, self.coeffs.iter().map(|x| ring.mul(c, x)).collect(), self.prec)
    }

    /// Multiplication by `tᵏ`.
    pub fn shift(&self, k: i64) -> Self {
        Series { lead: self.lead + k, prec: self.prec + k, coeffs: self.coeffs.clone() }
    }

    pub fn mul<R: CoeffRing<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        let prec = (self.prec + other.lead).min(other.prec + self.lead);
        if self.is_zero() || other.is_zero() {
            return Series::zero(prec);
        }
        let lead = self.lead + other.lead;
        let len = (prec - lead).max(0) as usize;
        let len = len.min(self.coeffs.len() + other.coeffs.len() - 1);
        let mut out = vec![ring.zero(); len];
        ring.convolve_into(&self.coeffs, &other.coeffs, &mut out);
        Series::from_coeffs(ring, lead, out, prec)
    }

    pub fn square<R: CoeffRing<Elem = E>>(&self, ring: &R) -> Self {
        self.mul(ring, self)
    }

    pub fn pow<R: CoeffRing<Elem = E>>(&self, ring: &R, mut k: u64) -> Self {
        let mut result = Series::one(ring, i64::MAX / 4);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(ring, &base);
            }
            k >>= 1;
            if k > 0 {
                base = base.square(ring);
            }
        }
        result
    }

    pub fn derivative<R: CoeffRing<Elem = E>>(&self, ring: &R) -> Self {
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| ring.mul(&ring.from_int(self.lead + i as i64), c))
            .collect();
        Series::from_coeffs(ring, self.lead - 1, v, self.prec - 1)
    }

    /// Terms of negative exponent; precision is kept so the result is exact
    /// whenever the input knows all its negative coefficients.
    pub fn pole_part<R: CoeffRing<Elem = E>>(&self, ring: &R) -> Self {
        let hi = self.top().min(0);
        let v = self.dense(ring.zero(), self.lead, hi);
        Series::from_coeffs(ring, self.lead, v, self.prec)
    }

    pub fn holomorphic_part<R: CoeffRing<Elem = E>>(&self, ring: &R) -> Self {
        self.sub(ring, &self.pole_part(ring))
    }

    /// Coefficients mapped through a ring morphism.
    pub fn map<R2: CoeffRing>(&self, ring2: &R2, f: impl Fn(&E) -> R2::Elem) -> Series<R2::Elem> {
        Series::from_coeffs(ring2, self.lead, self.coeffs.iter().map(f).collect(), self.prec)
    }

    /// `(Σ c_e tᵉ)^{p^k} = Σ c_e^{p^k} t^{p^k e}` in characteristic p.
    pub fn frobenius_pow<R: CoeffRing<Elem = E>>(&self, ring: &R, k: u32) -> Self {
        let q = (ring.field().p() as i64).pow(k);
        let frob = |c: &E| {
            let mut x = *c;
            for _ in 0..k {
                x = ring.frobenius(&x);
            }
            x
        };
        let prec = if self.prec >= i64::MAX / 4 { self.prec } else { self.prec.saturating_mul(q).min(i64::MAX / 4) };
        if self.is_zero() {
            return Series::zero(prec);
        }
        let lead = self.lead * q;
        let mut v = vec![ring.zero(); (self.coeffs.len() - 1) * q as usize + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[i * q as usize] = frob(c);
        }
        Series::from_coeffs(ring, lead, v, prec)
    }

    // ---- inversion ---------------------------------------------------------

    /// Inverse of a power series with unit constant term, modulo `t^n`.
    fn inverse_power_series<R: CoeffRing<Elem = E>>(ring: &R, a: &[E], n: usize) -> Result<Vec<E>, Error> {
        let c0 = ring.inv(a.first().ok_or(Error::NotAUnitSeries)?).map_err(|_| Error::NotAUnitSeries)?;
        let mut y = vec![c0];
        let mut k = 1usize;
        while k < n {
            k = (2 * k).min(n);
            // y ← y + y(1 − a y) mod t^k
            let mut ay = vec![ring.zero(); k];
            ring.convolve_into(&a[..a.len().min(k)], &y, &mut ay);
            let mut e = vec![ring.zero(); k];
            for (i, c) in ay.iter().enumerate() {
                e[i] = ring.neg(c);
            }
            e[0] = ring.add(&e[0], &ring.one());
            let mut corr = vec![ring.zero(); k];
            ring.convolve_into(&y, &e, &mut corr);
            y.resize(k, ring.zero());
            for i in 0..k {
                y[i] = ring.add(&y[i], &corr[i]);
            }
        }
        y.truncate(n);
        Ok(y)
    }

    /// `1/a`. The leading unit coefficient (reduced valuation) governs; over
    /// an Artin ring nilpotent coefficients below it are allowed.
    pub fn inverse<R: CoeffRing<Elem = E>>(&self, ring: &R) -> Result<Self, Error> {
        let v = self.reduced_valuation(ring).map_err(|_| Error::NotAUnitSeries)?;
        let b = self.shift(-v);
        let pb = b.prec;
        if pb <= 0 {
            return Err(Error::PrecisionTooLow);
        }
        if pb >= i64::MAX / 8 {
            // Exact input: only monomials have a finite inverse.
            return match b.coeffs.as_slice() {
                [c] => Ok(Series::monomial(ring, ring.inv(c)?, -v, i64::MAX / 4)),
                _ => Err(Error::PrecisionTooLow),
            };
        }
        if b.lead >= 0 {
            let dense = b.dense(ring.zero(), 0, pb);
            let inv = Self::inverse_power_series(ring, &dense, pb as usize)?;
            return Ok(Series::from_coeffs(ring, -v, inv, pb - v));
        }
        // b = b₊ + b₋ with b₋ nilpotent: 1/b = (1/b₊) Σ_{k<n} (−b₋/b₊)ᵏ.
        let neg_part = b.pole_part(ring);
        let pos_part = b.sub(ring, &neg_part).with_prec(ring, pb);
        let dense = pos_part.dense(ring.zero(), 0, pb);
        let ipos = Series::from_coeffs(ring, 0, Self::inverse_power_series(ring, &dense, pb as usize)?, pb);
        let x = neg_part.with_prec(ring, pb).mul(ring, &ipos).neg(ring);
        let mut term = Series::one(ring, x.prec);
        let mut sum = term.clone();
        for _ in 1..ring.nilpotency() {
            term = term.mul(ring, &x);
            sum = sum.add(ring, &term);
        }
        Ok(ipos.mul(ring, &sum).shift(-v))
    }

    // ---- roots ---------------------------------------------------------------

    /// `a^{-1/m}` for a power series `a ≡ 1`, modulo `t^n`; Newton on
    /// `Y^{-m} − a`, i.e. `Y ← Y + Y(1 − aYᵐ)/m`.
    fn inverse_root_power_series<R: CoeffRing<Elem = E>>(ring: &R, a: &[E], m: u64, n: usize) -> Result<Vec<E>, Error> {
        let inv_m = ring.embed(ring.field().from_ratio(1, m as i64)?);
        let a0 = a.first().copied().unwrap_or(ring.zero());
        // Root of the constant term: Newton inside the Artin ring.
        let mut y0 = ring.one();
        for _ in 0..64 {
            let e = ring.sub(&ring.one(), &ring.mul(&a0, &ring.pow(&y0, m)));
            let next = ring.add(&y0, &ring.mul(&ring.mul(&y0, &e), &inv_m));
            if next == y0 {
                break;
            }
            y0 = next;
        }
        let mut y = vec![y0];
        let mut k = 1usize;
        let trunc_mul = |x: &[E], z: &[E], k: usize| {
            let mut out = vec![ring.zero(); k];
            ring.convolve_into(x, z, &mut out);
            out
        };
        while k < n {
            k = (2 * k).min(n);
            y.resize(k, ring.zero());
            // y^m mod t^k by binary powering
            let mut ym = vec![ring.zero(); k];
            ym[0] = ring.one();
            let mut base = y.clone();
            let mut e = m;
            while e > 0 {
                if e & 1 == 1 {
                    ym = trunc_mul(&ym, &base, k);
                }
                e >>= 1;
                if e > 0 {
                    base = trunc_mul(&base, &base, k);
                }
            }
            let aym = trunc_mul(&a[..a.len().min(k)], &ym, k);
            let mut err: Vec<E> = aym.iter().map(|c| ring.neg(c)).collect();
            err[0] = ring.add(&err[0], &ring.one());
            let corr = trunc_mul(&y, &err, k);
            for i in 0..k {
                y[i] = ring.add(&y[i], &ring.mul(&corr[i], &inv_m));
            }
        }
        y.truncate(n);
        Ok(y)
    }

    fn check_one_plus<R: CoeffRing<Elem = E>>(&self, ring: &R, m: u64) -> Result<(), Error> {
        if m == 0 || m.is_multiple_of(ring.field().p() as u64) {
            return Err(Error::RootDegreeDivisibleByP);
        }
        if self.prec <= 0 {
            return Err(Error::PrecisionTooLow);
        }
        let bad_pole = self.terms(ring).any(|(e, c)| e < 0 && ring.is_unit(&c));
        if bad_pole || ring.residue(&self.coeff(ring, 0)) != Fe::ONE {
            return Err(Error::NotAOnePlusSeries);
        }
        Ok(())
    }

    /// `a^{-1/m}` for `a ≡ 1` (power series part; nilpotent poles allowed).
    pub fn inverse_mth_root_unit<R: CoeffRing<Elem = E>>(&self, ring: &R, m: u64) -> Result<Self, Error> {
        self.check_one_plus(ring, m)?;
        if self.lead >= 0 {
            let dense = self.dense(ring.zero(), 0, self.prec);
            let y = Self::inverse_root_power_series(ring, &dense, m, self.prec as usize)?;
            return Ok(Series::from_coeffs(ring, 0, y, self.prec));
        }
        self.mth_root_unit(ring, m)?.inverse(ring)
    }

    /// The unique `r ≡ 1` with `rᵐ = a`, via Newton iteration.
    pub fn mth_root_unit<R: CoeffRing<Elem = E>>(&self, ring: &R, m: u64) -> Result<Self, Error> {
        self.check_one_plus(ring, m)?;
        let pos_of = |a: &Self| -> Result<Self, Error> {
            let pos = a.holomorphic_part(ring).with_prec(ring, a.prec);
            let dense = pos.dense(ring.zero(), 0, a.prec);
            let y = Series::from_coeffs(ring, 0, Self::inverse_root_power_series(ring, &dense, m, a.prec as usize)?, a.prec);
            // a^{1/m} = a · a^{-(m-1)/m}
            Ok(pos.mul(ring, &y.pow(ring, m - 1)))
        };
        if self.lead >= 0 {
            return pos_of(self);
        }
        // Nilpotent poles down to t^{-L}: the root is a polynomial of degree
        // < n in a₋/a₊, hence known modulo t^{P-(n-1)L}. Solve for the padded
        // input at a generous working precision, then truncate.
        let n = ring.nilpotency() as i64;
        let l = -self.lead;
        let target = self.prec - (n - 1) * l;
        let work = self.with_prec(ring, self.prec + (4 * n + 8) * n * l);
        let mut x = pos_of(&work)?;
        let inv_m = ring.embed(ring.field().from_ratio(1, m as i64)?);
        for _ in 0..2 * n + 2 {
            let xm1 = x.pow(ring, m - 1);
            let f = xm1.mul(ring, &x).sub(ring, &work);
            let step = f.mul(ring, &xm1.inverse(ring)?).scale(ring, &inv_m);
            let next = x.sub(ring, &step);
            if next == x {
                break;
            }
            x = next;
        }
        if x.prec < target {
            return Err(Error::PrecisionTooLow);
        }
        Ok(x.truncate(ring, target))
    }

    // ---- composition -------------------------------------------------------

    /// `Σ_{k} o_k zᵏ` for a polynomial `o` and a power series `z` with
    /// `z(0) = 0`, modulo `t^n`. Baby-step giant-step for long inputs.
    fn eval_poly_mod<R: CoeffRing<Elem = E>>(ring: &R, o: &[E], z: &[E], n: usize) -> Vec<E> {
        let deg = match o.iter().rposition(|c| !ring.is_zero(c)) {
            Some(d) => d,
            None => return vec![ring.zero(); n],
        };
        let mul = |x: &[E], y: &[E]| {
            let mut out = vec![ring.zero(); n];
            ring.convolve_into(x, y, &mut out);
            out
        };
        let z: Vec<E> = z.iter().take(n).copied().collect();
        if deg < 12 {
            let mut acc = vec![ring.zero(); n];
            for k in (0..=deg).rev() {
                acc = mul(&acc, &z);
                if n > 0 {
                    acc[0] = ring.add(&acc[0], &o[k]);
                }
            }
            return acc;
        }
        let mut b = 1usize;
        while b * b < deg + 1 {
            b += 1;
        }
        let mut baby: Vec<Vec<E>> = Vec::with_capacity(b + 1);
        let mut one = vec![ring.zero(); n];
        if n > 0 {
            one[0] = ring.one();
        }
        baby.push(one);
        for i in 1..=b {
            let next = mul(&baby[i - 1], &z);
            baby.push(next);
        }
        let giant = baby[b].clone();
        let chunks = deg / b + 1;
        let mut acc = vec![ring.zero(); n];
        for c in (0..chunks).rev() {
            acc = mul(&acc, &giant);
            for j in 0..b {
                let k = c * b + j;
                if k > deg {
                    break;
                }
                if ring.is_zero(&o[k]) {
                    continue;
                }
                for (a, x) in acc.iter_mut().zip(&baby[j]) {
                    *a = ring.add(a, &ring.mul(&o[k], x));
                }
            }
        }
        acc
    }

    /// `self(inner(t))`.
    pub fn compose<R: CoeffRing<Elem = E>>(&self, ring: &R, inner: &Self) -> Result<Self, Error> {
        let vr = inner.reduced_valuation(ring).map_err(|_| Error::CompositionDiverges)?;
        if vr < 1 {
            return Err(Error::CompositionDiverges);
        }
        if self.prec < 1 {
            return Err(Error::PrecisionTooLow);
        }
        let raw = inner.lead;
        let n_nil = ring.nilpotency() as i64;
        // Lowest possible exponent of innerᵏ.
        let power_floor = |k: i64| -> i64 {
            let j = k.min(n_nil - 1).max(0);
            if raw >= vr {
                k * vr
            } else {
                j * raw + (k - j) * vr
            }
        };

        let neg = self.pole_part(ring);
        let nonneg = self.holomorphic_part(ring);

        let mut result;
        if raw >= 1 {
            let k0 = nonneg.terms(ring).find(|&(e, _)| e >= 1).map(|(e, _)| e);
            let mut w = power_floor(self.prec);
            if let Some(k0) = k0 {
                w = w.min(inner.prec + (k0 - 1) * raw);
            }
            let w = w.max(0);
            let o = nonneg.dense(ring.zero(), 0, self.prec.min(nonneg.top().max(0)));
            let z = inner.dense(ring.zero(), 0, w.min(inner.top()).max(0));
            let vals = Self::eval_poly_mod(ring, &o, &z, w as usize);
            result = Series::from_coeffs(ring, 0, vals, w);
        } else {
            let mut acc = Series::zero(i64::MAX / 4);
            let top = nonneg.top().min(self.prec);
            for k in (0..top.max(0)).rev() {
                acc = acc.mul(ring, inner).add(ring, &Series::monomial(ring, nonneg.coeff(ring, k), 0, i64::MAX / 4));
            }
            result = acc.truncate(ring, power_floor(self.prec));
        }

        if !neg.is_zero() {
            let iv = inner.inverse(ring)?;
            let mut acc = Series::zero(i64::MAX / 4);
            for k in neg.lead..0 {
                acc = acc.add(ring, &Series::monomial(ring, neg.coeff(ring, k), 0, i64::MAX / 4)).mul(ring, &iv);
            }
            result = result.add(ring, &acc);
        }
        Ok(result)
    }

    /// Compositional inverse of `a = c·t + …` with `c` a unit.
    pub fn revert<R: CoeffRing<Elem = E>>(&self, ring: &R) -> Result<Self, Error> {
        if self.lead < 1 || !ring.is_unit(&self.coeff(ring, 1)) {
            return Err(Error::NotReversible);
        }
        let n = self.prec;
        let c1inv = ring.inv(&self.coeff(ring, 1))?;
        let da = self.derivative(ring);
        let mut r = Series::monomial(ring, c1inv, 1, n);
        let mut k = 2i64.min(n);
        // Newton r ← r − (a(r) − t)/a'(r): t-adic precision doubles per round;
        // once at full precision, keep going until the nilpotent part settles.
        for _ in 0..128 {
            let rk = r.with_prec(ring, k);
            let f = self.truncate(ring, k).compose(ring, &rk)?.sub(ring, &Series::var(ring, k));
            let d = da.truncate(ring, k).compose(ring, &rk)?;
            let next = rk.sub(ring, &f.mul(ring, &d.inverse(ring)?)).truncate(ring, k).with_prec(ring, n);
            let done = k == n && next == r;
            r = next;
            if done {
                break;
            }
            k = (2 * k).min(n);
        }
        Ok(r.truncate(ring, n))
    }

    // ---- Weierstrass preparation ---------------------------------------------

    /// `f = g·u` with `g` distinguished of degree equal to the reduced
    /// valuation of `f` and `u` a unit.
    pub fn weierstrass_prepare<R: CoeffRing<Elem = E>>(&self, ring: &R) -> Result<(DistinguishedPolynomial<E>, Self), Error> {
        if self.lead < 0 {
            return Err(Error::InvalidArgument("weierstrass_prepare needs a power series"));
        }
        let m = self.reduced_valuation(ring).map_err(|_| Error::ReductionIsZero)?;
        if m >= self.prec {
            return Err(Error::ReductionIsZero);
        }
        let p = self.prec;
        if p < 2 * m {
            return Err(Error::PrecisionTooLow);
        }
        // Fixed point of G = [f/u]_{<m}, u = [f − G·u]_{≥m}/tᵐ on the padded
        // f; the result satisfies f ≡ (tᵐ + G)u mod t^p exactly.
        let (mu, pu) = (m as usize, (p - m) as usize);
        let fd = self.dense(ring.zero(), 0, p);
        let mut u: Vec<E> = fd[mu..].to_vec();
        let mut g = vec![ring.zero(); mu];
        for _ in 0..ring.nilpotency() + 2 {
            let uinv = Self::inverse_power_series(ring, &u, mu.max(1))?;
            let mut g_next = vec![ring.zero(); mu];
            ring.convolve_into(&fd[..mu], &uinv, &mut g_next);
            let mut gu = vec![ring.zero(); p as usize];
            ring.convolve_into(&g_next, &u, &mut gu);
            let u_next: Vec<E> = (0..pu).map(|e| ring.sub(&fd[e + mu], &gu[e + mu])).collect();
            let done = g_next == g && u_next == u;
            g = g_next;
            u = u_next;
            if done {
                break;
            }
        }
        if g.iter().any(|c| ring.is_unit(c)) {
            return Err(Error::NoSolution);
        }
        Ok((DistinguishedPolynomial { coeffs: g }, Series::from_coeffs(ring, 0, u, p - m)))
    }
}
