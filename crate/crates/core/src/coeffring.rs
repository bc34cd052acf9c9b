//! Finite fields `F_{p^d}` and the truncated polynomial rings `F_q[ε]/(εⁿ)`.
//!
//! Field elements are stored as a compact index `Σ cᵢ pⁱ` over the
//! polynomial basis, so `Fe(c)` for `c < p` is the prime-field constant `c`.
//! Multiplication goes through discrete log tables built from a primitive
//! element found at construction time.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;

/// Largest nilpotency order supported by [`ArtinAlgebra`].
pub const MAX_ARTIN_ORDER: usize = 8;

/// Largest field size supported.
pub const MAX_FIELD_SIZE: u32 = 1 << 15;

/// An element of a finite field, as an index into its [`FiniteField`].
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fe(pub u16);

impl fmt::Debug for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct FieldData {
    p: u32,
    d: u32,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<u16>,
    log: Vec<u16>,
    neg: Vec<u16>,
    add: Option<Vec<u16>>,
}

/// A finite field `F_p[x]/(modulus)`. Cloning is cheap (shared tables).
#[derive(Clone)]
pub struct FiniteField(Arc<FieldData>);

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}
impl Eq for FiniteField {}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}; modulus {:?})", self.0.p, self.0.d, self.0.modulus)
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut i = 2u32;
    while i * i <= n {
        if n.is_multiple_of(i) {
            return false;
        }
        i += 1;
    }
    true
}

// Dense polynomial helpers over F_p, little-endian coefficients.

fn poly_trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u32> = a.to_vec();
    poly_trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = pow_mod(m[dm], p - 2, p);
    while r.len() > dm {
        let top = r.len() - 1;
        let f = r[top] * lead_inv % p;
        if f != 0 {
            for (i, &mi) in m.iter().enumerate() {
                let idx = top - dm + i;
                r[idx] = (r[idx] + p - f * mi % p) % p;
            }
        }
        poly_trim(&mut r);
    }
    r
}

fn pow_mod(mut b: u32, mut e: u32, p: u32) -> u32 {
    let mut r = 1u32 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn digits(mut x: u32, p: u32, d: u32) -> Vec<u32> {
    let mut v = Vec::with_capacity(d as usize);
    for _ in 0..d {
        v.push(x % p);
        x /= p;
    }
    v
}

fn undigits(ds: &[u32], p: u32) -> u32 {
    ds.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Exhaustive irreducibility test: no monic factor of degree ≤ deg/2.
fn is_irreducible(m: &[u32], p: u32) -> bool {
    let d = m.len() - 1;
    if d == 0 {
        return false;
    }
    for k in 1..=d / 2 {
        let count = (p as u64).pow(k as u32);
        for low in 0..count {
            let mut f = digits(low as u32, p, k as u32);
            f.push(1);
            if poly_rem(m, &f, p).is_empty() {
                return false;
            }
        }
    }
    true
}

fn mulmod_index(a: u32, b: u32, modulus: &[u32], p: u32, d: u32) -> u32 {
    let da = digits(a, p, d);
    let db = digits(b, p, d);
    let mut prod = vec![0u32; 2 * d as usize];
    for (i, &x) in da.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    let mut r = poly_rem(&prod, modulus, p);
    r.resize(d as usize, 0);
    undigits(&r, p)
}

impl FiniteField {
    /// Builds `F_{p^d}`. Without a modulus the smallest monic irreducible
    /// polynomial is used, ordering candidates lexicographically by
    /// `(a_{d-1}, …, a_0)`.
    pub fn new(p: u32, d: u32, modulus: Option<&[u32]>) -> Result<Self, Error> {
        if !is_prime(p) {
            return Err(Error::NonPrimeP(p));
        }
        if d == 0 {
            return Err(Error::InvalidArgument("field degree must be at least 1"));
        }
        let q64 = (p as u64).checked_pow(d).unwrap_or(u64::MAX);
        if q64 > MAX_FIELD_SIZE as u64 {
            return Err(Error::TooLarge);
        }
        let q = q64 as u32;
        let modulus: Vec<u32> = match modulus {
            Some(m) => {
                if m.len() != d as usize + 1 || m[d as usize] != 1 || m.iter().any(|&c| c >= p) {
                    return Err(Error::ReducibleModulus);
                }
                if !is_irreducible(m, p) {
                    return Err(Error::ReducibleModulus);
                }
                m.to_vec()
            }
            None => {
                let mut found = None;
                for low in 0..q {
                    let mut m = digits(low, p, d);
                    m.push(1);
                    if is_irreducible(&m, p) {
                        found = Some(m);
                        break;
                    }
                }
                found.ok_or(Error::ReducibleModulus)?
            }
        };

        // Primitive element: the first index of multiplicative order q-1.
        let order = q - 1;
        let mut prime_factors = Vec::new();
        let mut n = order;
        let mut f = 2;
        while f * f <= n {
            if n.is_multiple_of(f) {
                prime_factors.push(f);
                while n.is_multiple_of(f) {
                    n /= f;
                }
            }
            f += 1;
        }
        if n > 1 {
            prime_factors.push(n);
        }
        let pow_idx = |mut b: u32, mut e: u32| {
            let mut r = 1u32;
            while e > 0 {
                if e & 1 == 1 {
                    r = mulmod_index(r, b, &modulus, p, d);
                }
                b = mulmod_index(b, b, &modulus, p, d);
                e >>= 1;
            }
            r
        };
        let mut gen = 0;
        for g in 1..q {
            if prime_factors.iter().all(|&r| pow_idx(g, order / r) != 1) {
                gen = g;
                break;
            }
        }
        if q == 2 {
            gen = 1;
        }

        let mut exp = vec![0u16; 2 * order as usize];
        let mut log = vec![0u16; q as usize];
        let mut x = 1u32;
        for k in 0..order as usize {
            exp[k] = x as u16;
            exp[k + order as usize] = x as u16;
            log[x as usize] = k as u16;
            x = mulmod_index(x, gen, &modulus, p, d);
        }

        let neg: Vec<u16> = (0..q)
            .map(|a| {
                let ds: Vec<u32> = digits(a, p, d).into_iter().map(|c| (p - c) % p).collect();
                undigits(&ds, p) as u16
            })
            .collect();

        let add = if q <= 1024 {
            let mut t = vec![0u16; (q * q) as usize];
            for a in 0..q {
                let da = digits(a, p, d);
                for b in 0..q {
                    let db = digits(b, p, d);
                    let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                    t[(a * q + b) as usize] = undigits(&s, p) as u16;
                }
            }
            Some(t)
        } else {
            None
        };

        Ok(FiniteField(Arc::new(FieldData { p, d, q, modulus, exp, log, neg, add })))
    }

    /// The prime field `F_p`.
    pub fn prime(p: u32) -> Result<Self, Error> {
        Self::new(p, 1, None)
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.0.p
    }
    #[inline]
    pub fn degree(&self) -> u32 {
        self.0.d
    }
    #[inline]
    pub fn size(&self) -> u32 {
        self.0.q
    }
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    /// The class of `x` in the polynomial basis (generator of the extension).
    pub fn generator(&self) -> Fe {
        if self.0.d == 1 {
            // x ≡ -a_0 in the prime field.
            Fe(((self.0.p - self.0.modulus[0]) % self.0.p) as u16)
        } else {
            Fe(self.0.p as u16)
        }
    }

    /// A generator of the multiplicative group.
    pub fn primitive(&self) -> Fe {
        if self.0.q == 2 {
            Fe::ONE
        } else {
            Fe(self.0.exp[1])
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.0.q).map(|i| Fe(i as u16))
    }

    pub fn coeffs(&self, x: Fe) -> Vec<u32> {
        digits(x.0 as u32, self.0.p, self.0.d)
    }

    pub fn from_coeffs(&self, cs: &[u32]) -> Result<Fe, Error> {
        if cs.len() > self.0.d as usize || cs.iter().any(|&c| c >= self.0.p) {
            return Err(Error::InvalidArgument("field element coefficients out of range"));
        }
        Ok(Fe(undigits(cs, self.0.p) as u16))
    }

    #[inline]
    pub fn from_int(&self, n: i64) -> Fe {
        Fe(n.rem_euclid(self.0.p as i64) as u16)
    }

    /// Residue of a rational `num/den` in `F_p`; `den` must be prime to p.
    pub fn from_ratio(&self, num: i64, den: i64) -> Result<Fe, Error> {
        let d = self.from_int(den);
        Ok(self.mul(self.from_int(num), self.inv(d)?))
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 {
            return b;
        }
        if b.0 == 0 {
            return a;
        }
        match &self.0.add {
            Some(t) => Fe(t[a.0 as usize * self.0.q as usize + b.0 as usize]),
            None => self.add_slow(a, b),
        }
    }

    fn add_slow(&self, a: Fe, b: Fe) -> Fe {
        let p = self.0.p;
        let (mut x, mut y) = (a.0 as u32, b.0 as u32);
        let (mut r, mut w) = (0u32, 1u32);
        while x > 0 || y > 0 {
            r += ((x % p + y % p) % p) * w;
            x /= p;
            y /= p;
            w *= p;
        }
        Fe(r as u16)
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        Fe(self.0.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 || b.0 == 0 {
            return Fe::ZERO;
        }
        let s = self.0.log[a.0 as usize] as usize + self.0.log[b.0 as usize] as usize;
        Fe(self.0.exp[s])
    }

    /// `out[i+j] += a[i]·b[j]` for all `i + j < out.len()`.
    pub fn convolve_into(&self, a: &[Fe], b: &[Fe], out: &mut [Fe]) {
        const NONE: u32 = u32::MAX;
        let lb: Vec<u32> = b
            .iter()
            .map(|x| if x.is_zero() { NONE } else { self.0.log[x.0 as usize] as u32 })
            .collect();
        let n = out.len();
        for (i, x) in a.iter().enumerate() {
            if i >= n {
                break;
            }
            if x.is_zero() {
                continue;
            }
            let la = self.0.log[x.0 as usize] as usize;
            let lim = (n - i).min(lb.len());
            let row = &mut out[i..i + lim];
            for (o, &l) in row.iter_mut().zip(&lb[..lim]) {
                if l != NONE {
                    *o = self.add(*o, Fe(self.0.exp[la + l as usize]));
                }
            }
        }
    }

    pub fn inv(&self, a: Fe) -> Result<Fe, Error> {
        if a.0 == 0 {
            return Err(Error::NotAUnit);
        }
        let n = self.0.q - 1;
        let l = self.0.log[a.0 as usize] as u32;
        Ok(Fe(self.0.exp[((n - l) % n) as usize]))
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe, Error> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Fe, e: u64) -> Fe {
        if e == 0 {
            return Fe::ONE;
        }
        if a.0 == 0 {
            return Fe::ZERO;
        }
        let n = (self.0.q - 1) as u64;
        let l = self.0.log[a.0 as usize] as u64;
        Fe(self.0.exp[((l * (e % n)) % n) as usize])
    }

    /// `a^(p^e)`.
    pub fn frobenius_pow(&self, a: Fe, e: u32) -> Fe {
        if a.0 == 0 {
            return a;
        }
        let n = (self.0.q - 1) as u64;
        let mut l = self.0.log[a.0 as usize] as u64;
        for _ in 0..(e % self.0.d) {
            l = l * self.0.p as u64 % n;
        }
        Fe(self.0.exp[l as usize])
    }

    #[inline]
    pub fn frobenius(&self, a: Fe) -> Fe {
        self.frobenius_pow(a, 1)
    }

    /// The unique `y` with `y^(p^e) = x`, by iterating the inverse Frobenius
    /// `x ↦ x^(p^(d-1))` e times.
    pub fn p_power_root(&self, x: Fe, e: u32) -> Fe {
        let mut y = x;
        for _ in 0..e {
            y = self.frobenius_pow(y, self.0.d - 1);
        }
        y
    }

    /// True if `x` lies in the subfield `F_{p^s}`.
    pub fn in_subfield(&self, x: Fe, s: u32) -> bool {
        let mut y = x;
        for _ in 0..s {
            y = self.frobenius(y);
        }
        y == x
    }

    /// Discrete logarithm of a nonzero element w.r.t. [`Self::primitive`].
    pub fn log(&self, a: Fe) -> Option<u32> {
        if a.0 == 0 {
            None
        } else {
            Some(self.0.log[a.0 as usize] as u32)
        }
    }

    /// True if `xs` are linearly independent over `F_p`.
    pub fn fp_independent(&self, xs: &[Fe]) -> bool {
        // Every nontrivial F_p-combination must be nonzero.
        let p = self.0.p as u64;
        let n = xs.len() as u32;
        let total = p.pow(n);
        for code in 1..total {
            let mut acc = Fe::ZERO;
            let mut c = code;
            for &x in xs {
                let k = (c % p) as i64;
                c /= p;
                acc = self.add(acc, self.mul(self.from_int(k), x));
            }
            if acc.is_zero() {
                return false;
            }
        }
        true
    }
}

/// An element of `F_q[ε]/(εⁿ)`, coefficients of `ε⁰, …, ε^{n-1}`.
/// Slots at index `≥ n` are always zero.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Default)]
pub struct ArtinElem(pub [Fe; MAX_ARTIN_ORDER]);

impl fmt::Debug for ArtinElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.0.iter().rposition(|c| !c.is_zero()).map_or(1, |i| i + 1);
        f.debug_list().entries(&self.0[..last]).finish()
    }
}

impl ArtinElem {
    #[inline]
    pub fn constant(c: Fe) -> Self {
        let mut a = [Fe::ZERO; MAX_ARTIN_ORDER];
        a[0] = c;
        ArtinElem(a)
    }
    #[inline]
    pub fn comp(&self, i: usize) -> Fe {
        self.0[i]
    }
}

/// `F_q[ε]/(εⁿ)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ArtinAlgebra {
    field: FiniteField,
    n: usize,
}

impl ArtinAlgebra {
    pub fn new(field: FiniteField, n: usize) -> Result<Self, Error> {
        if n == 0 || n > MAX_ARTIN_ORDER {
            return Err(Error::InvalidArgument("Artin order out of range"));
        }
        Ok(ArtinAlgebra { field, n })
    }

    /// Dual numbers `k[ε]/ε²`.
    pub fn dual(field: FiniteField) -> Self {
        ArtinAlgebra { field, n: 2 }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn base(&self) -> &FiniteField {
        &self.field
    }

    /// The small extension `F_q[ε]/ε^{n+1} → F_q[ε]/εⁿ` with this ring as target.
    pub fn small_extension(&self) -> Result<(ArtinAlgebra, ArtinAlgebra), Error> {
        Ok((ArtinAlgebra::new(self.field.clone(), self.n + 1)?, self.clone()))
    }

    pub fn epsilon(&self) -> ArtinElem {
        self.eps_pow(1)
    }

    /// `εᵏ` (zero when `k ≥ n`).
    pub fn eps_pow(&self, k: usize) -> ArtinElem {
        let mut a = ArtinElem::default();
        if k < self.n {
            a.0[k] = Fe::ONE;
        }
        a
    }

    pub fn from_comps(&self, comps: &[Fe]) -> Result<ArtinElem, Error> {
        if comps.len() > self.n {
            return Err(Error::InvalidArgument("too many ε-components"));
        }
        let mut a = ArtinElem::default();
        a.0[..comps.len()].copy_from_slice(comps);
        Ok(a)
    }

    pub fn comps(&self, a: &ArtinElem) -> Vec<Fe> {
        a.0[..self.n].to_vec()
    }

    /// Reduction to `F_q[ε]/ε^k`, `k ≤ n`.
    pub fn reduce_to(&self, a: &ArtinElem, k: usize) -> ArtinElem {
        let mut r = *a;
        for c in r.0.iter_mut().skip(k) {
            *c = Fe::ZERO;
        }
        r
    }

    /// Multiplication by `ε^k` (shifts components up, dropping overflow).
    pub fn mul_eps_pow(&self, a: &ArtinElem, k: usize) -> ArtinElem {
        let mut r = ArtinElem::default();
        for i in 0..self.n.saturating_sub(k) {
            r.0[i + k] = a.0[i];
        }
        r
    }
}

/// A commutative coefficient ring `k` or `k[ε]/εⁿ` with residue field `k`.
pub trait CoeffRing: Clone + PartialEq + fmt::Debug {
    type Elem: Copy + Clone + PartialEq + Eq + fmt::Debug;

    fn field(&self) -> &FiniteField;
    /// Nilpotency order of the maximal ideal (1 for a field).
    fn nilpotency(&self) -> usize;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn embed(&self, c: Fe) -> Self::Elem;
    fn from_int(&self, n: i64) -> Self::Elem {
        self.embed(self.field().from_int(n))
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn scale(&self, c: Fe, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Image in the residue field.
    fn residue(&self, a: &Self::Elem) -> Fe;
    fn is_unit(&self, a: &Self::Elem) -> bool {
        !self.residue(a).is_zero()
    }
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem, Error>;
    /// Coefficientwise Frobenius `a ↦ a^p`.
    fn frobenius(&self, a: &Self::Elem) -> Self::Elem;
    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut r = self.one();
        let mut b = *a;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        r
    }
    /// `ε`-adic components, length `nilpotency()`.
    fn components(&self, a: &Self::Elem) -> Vec<Fe>;
    /// `out[i+j] += a[i]·b[j]` for all `i + j < out.len()`.
    fn convolve_into(&self, a: &[Self::Elem], b: &[Self::Elem], out: &mut [Self::Elem]) {
        let n = out.len();
        for (i, x) in a.iter().enumerate() {
            if i >= n {
                break;
            }
            if self.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate().take(n - i) {
                out[i + j] = self.add(&out[i + j], &self.mul(x, y));
            }
        }
    }
}

impl CoeffRing for FiniteField {
    type Elem = Fe;

    fn field(&self) -> &FiniteField {
        self
    }
    fn nilpotency(&self) -> usize {
        1
    }
    #[inline]
    fn zero(&self) -> Fe {
        Fe::ZERO
    }
    #[inline]
    fn one(&self) -> Fe {
        Fe::ONE
    }
    #[inline]
    fn embed(&self, c: Fe) -> Fe {
        c
    }
    #[inline]
    fn add(&self, a: &Fe, b: &Fe) -> Fe {
        FiniteField::add(self, *a, *b)
    }
    #[inline]
    fn sub(&self, a: &Fe, b: &Fe) -> Fe {
        FiniteField::sub(self, *a, *b)
    }
    #[inline]
    fn neg(&self, a: &Fe) -> Fe {
        FiniteField::neg(self, *a)
    }
    #[inline]
    fn mul(&self, a: &Fe, b: &Fe) -> Fe {
        FiniteField::mul(self, *a, *b)
    }
    #[inline]
    fn scale(&self, c: Fe, a: &Fe) -> Fe {
        FiniteField::mul(self, c, *a)
    }
    #[inline]
    fn is_zero(&self, a: &Fe) -> bool {
        a.is_zero()
    }
    #[inline]
    fn residue(&self, a: &Fe) -> Fe {
        *a
    }
    fn inv(&self, a: &Fe) -> Result<Fe, Error> {
        FiniteField::inv(self, *a)
    }
    fn frobenius(&self, a: &Fe) -> Fe {
        FiniteField::frobenius(self, *a)
    }
    fn pow(&self, a: &Fe, e: u64) -> Fe {
        FiniteField::pow(self, *a, e)
    }
    fn components(&self, a: &Fe) -> Vec<Fe> {
        vec![*a]
    }
    fn convolve_into(&self, a: &[Fe], b: &[Fe], out: &mut [Fe]) {
        FiniteField::convolve_into(self, a, b, out)
    }
}

impl CoeffRing for ArtinAlgebra {
    type Elem = ArtinElem;

    fn field(&self) -> &FiniteField {
        &self.field
    }
    fn nilpotency(&self) -> usize {
        self.n
    }
    fn zero(&self) -> ArtinElem {
        ArtinElem::default()
    }
    fn one(&self) -> ArtinElem {
        ArtinElem::constant(Fe::ONE)
    }
    fn embed(&self, c: Fe) -> ArtinElem {
        ArtinElem::constant(c)
    }
    #[inline]
    fn add(&self, a: &ArtinElem, b: &ArtinElem) -> ArtinElem {
        let mut r = ArtinElem::default();
        for i in 0..self.n {
            r.0[i] = self.field.add(a.0[i], b.0[i]);
        }
        r
    }
    #[inline]
    fn sub(&self, a: &ArtinElem, b: &ArtinElem) -> ArtinElem {
        let mut r = ArtinElem::default();
        for i in 0..self.n {
            r.0[i] = self.field.sub(a.0[i], b.0[i]);
        }
        r
    }
    #[inline]
    fn neg(&self, a: &ArtinElem) -> ArtinElem {
        let mut r = ArtinElem::default();
        for i in 0..self.n {
            r.0[i] = self.field.neg(a.0[i]);
        }
        r
    }
    #[inline]
    fn mul(&self, a: &ArtinElem, b: &ArtinElem) -> ArtinElem {
        let mut r = ArtinElem::default();
        for i in 0..self.n {
            if a.0[i].is_zero() {
                continue;
            }
            for j in 0..self.n - i {
                r.0[i + j] = self.field.add(r.0[i + j], self.field.mul(a.0[i], b.0[j]));
            }
        }
        r
    }
    #[inline]
    fn scale(&self, c: Fe, a: &ArtinElem) -> ArtinElem {
        let mut r = ArtinElem::default();
        for i in 0..self.n {
            r.0[i] = self.field.mul(c, a.0[i]);
        }
        r
    }
    #[inline]
    fn is_zero(&self, a: &ArtinElem) -> bool {
        a.0[..self.n].iter().all(|c| c.is_zero())
    }
    #[inline]
    fn residue(&self, a: &ArtinElem) -> Fe {
        a.0[0]
    }
    /// `a = a₀(1 + x)` with `x` nilpotent, so `a⁻¹ = a₀⁻¹ Σ_{k<n} (-x)ᵏ`.
    fn inv(&self, a: &ArtinElem) -> Result<ArtinElem, Error> {
        let a0i = self.field.inv(a.0[0])?;
        let mut negx = self.scale(self.field.neg(a0i), a);
        negx.0[0] = Fe::ZERO;
        let mut term = self.one();
        let mut sum = self.one();
        for _ in 1..self.n {
            term = self.mul(&term, &negx);
            sum = self.add(&sum, &term);
        }
        Ok(self.scale(a0i, &sum))
    }
    fn frobenius(&self, a: &ArtinElem) -> ArtinElem {
        // (Σ aᵢ εⁱ)^p = Σ aᵢ^p ε^{ip}
        let p = self.field.p() as usize;
        let mut r = ArtinElem::default();
        for i in 0..self.n {
            if i * p < self.n {
                r.0[i * p] = self.field.frobenius(a.0[i]);
            }
        }
        r
    }
    fn components(&self, a: &ArtinElem) -> Vec<Fe> {
        self.comps(a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_fields() -> Vec<FiniteField> {
        let mut v = Vec::new();
        for &(p, d) in &[(2, 1), (2, 2), (2, 3), (2, 4), (2, 5), (2, 6), (3, 1), (3, 2), (3, 3), (5, 1), (5, 2), (7, 1), (7, 2)] {
            v.push(FiniteField::new(p, d, None).unwrap());
        }
        v
    }

    #[test]
    fn default_moduli() {
        assert_eq!(FiniteField::new(2, 1, None).unwrap().modulus(), &[0, 1]);
        assert_eq!(FiniteField::new(2, 2, None).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(FiniteField::new(3, 2, None).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(FiniteField::new(5, 2, None).unwrap().modulus(), &[2, 0, 1]);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(FiniteField::new(4, 1, None).unwrap_err(), Error::NonPrimeP(4));
        assert_eq!(FiniteField::new(3, 1, Some(&[1, 1, 1])).unwrap_err(), Error::ReducibleModulus);
        assert_eq!(FiniteField::new(2, 2, Some(&[1, 0, 1])).unwrap_err(), Error::ReducibleModulus);
        assert!(FiniteField::new(3, 1, Some(&[1, 1])).is_ok());
    }

    #[test]
    fn f4_inverse_of_omega() {
        let f = FiniteField::new(2, 2, None).unwrap();
        let w = f.generator();
        let w2 = f.mul(w, w);
        assert_eq!(f.inv(w).unwrap(), w2);
        assert_eq!(f.p_power_root(w, 1), w2);
        assert_eq!(f.coeffs(w), vec![0, 1]);
    }

    #[test]
    fn exhaustive_field_axioms() {
        for f in small_fields() {
            let els: Vec<Fe> = f.elements().collect();
            for &a in &els {
                assert_eq!(f.add(a, f.neg(a)), Fe::ZERO);
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), Fe::ONE);
                }
                assert_eq!(f.p_power_root(f.frobenius(a), 1), a);
                assert_eq!(f.frobenius(f.p_power_root(a, 2)), f.p_power_root(a, 1));
                for &b in &els {
                    assert_eq!(f.add_slow(a, b), f.add(a, b));
                    assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
                    assert_eq!(f.frobenius(f.mul(a, b)), f.mul(f.frobenius(a), f.frobenius(b)));
                }
            }
        }
    }

    #[test]
    fn polynomial_basis_multiplication() {
        // In F_9 = F_3[x]/(x²+1): x·x = -1 = 2.
        let f = FiniteField::new(3, 2, None).unwrap();
        let x = f.generator();
        assert_eq!(f.mul(x, x), Fe(2));
        assert_eq!(f.pow(x, 4), Fe::ONE);
    }

    #[test]
    fn artin_relations() {
        let f3 = FiniteField::prime(3).unwrap();
        let a = ArtinAlgebra::new(f3, 3).unwrap();
        let e = a.epsilon();
        let e2 = a.mul(&e, &e);
        assert_eq!(e2, a.eps_pow(2));
        assert!(a.is_zero(&a.mul(&e, &e2)));
        let f2 = FiniteField::prime(2).unwrap();
        let d = ArtinAlgebra::dual(f2);
        let x = d.add(&d.one(), &d.epsilon());
        assert_eq!(d.inv(&x).unwrap(), x);
        assert_eq!(d.inv(&d.epsilon()), Err(Error::NotAUnit));
    }

    #[test]
    fn artin_inverse_and_reduction_exhaustive() {
        let f = FiniteField::new(2, 2, None).unwrap();
        let big = ArtinAlgebra::new(f.clone(), 3).unwrap();
        let small = ArtinAlgebra::new(f.clone(), 2).unwrap();
        let els: Vec<ArtinElem> = (0..64u32)
            .map(|c| big.from_comps(&[Fe((c % 4) as u16), Fe((c / 4 % 4) as u16), Fe((c / 16) as u16)]).unwrap())
            .collect();
        for x in &els {
            if big.is_unit(x) {
                assert_eq!(big.mul(x, &big.inv(x).unwrap()), big.one());
            }
            for y in &els {
                let lhs = big.reduce_to(&big.mul(x, y), 2);
                let rhs = small.mul(&big.reduce_to(x, 2), &big.reduce_to(y, 2));
                assert_eq!(lhs, rhs);
                // Kernel ε²A′ is killed by the maximal ideal.
                if !big.is_unit(y) {
                    let k = big.mul_eps_pow(x, 2);
                    assert!(big.is_zero(&big.mul(&k, y)));
                }
            }
            let fr = big.frobenius(x);
            assert_eq!(fr, big.pow(x, 2));
        }
    }
}
