//! Cohomology of `V = (Z/p)^s` with coefficients in the tangent module.
//!
//! Vector fields `f(t) d/dt` are identified with `f(t)/t^{m+1}`, so the
//! module becomes `t^{-(m+1)}k[[t]]` and `σ` acts by `h ↦ h(ρ_σ(t))` (the
//! Jacobian factor `ρ^{m+1}/(t^{m+1}ρ')` is identically 1). `H¹` is computed
//! on the whole module by truncation; `H²` and coboundary tests work on the
//! pole-part quotient `M = t^{-(m+1)}k[[t]]/k[[t]]`, which has dimension
//! `m+1`.

use alloc::vec;
use alloc::vec::Vec;

use crate::autoreps::{build_rho, Character, GroupElem};
use crate::coeffring::{Fe, FiniteField};
use crate::error::Error;
use crate::linalg::{Matrix, RowSpace};
use crate::series::Series;

/// An element of `M`: `coeffs[i-1]` is the coefficient of `t^{-i}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolePartClass {
    pub coeffs: Vec<Fe>,
}

impl PolePartClass {
    pub fn zero(m: u32) -> Self {
        PolePartClass { coeffs: vec![Fe::ZERO; m as usize + 1] }
    }

    pub fn monomial(m: u32, i: u32, c: Fe) -> Self {
        let mut x = PolePartClass::zero(m);
        x.coeffs[i as usize - 1] = c;
        x
    }

    /// The coefficients of `t^{-1},…,t^{-(m+1)}` of `h`.
    pub fn from_series(k: &FiniteField, m: u32, h: &Series<Fe>) -> Result<Self, Error> {
        if h.prec() < 0 {
            return Err(Error::PrecisionTooLow);
        }
        if h.lead() < -(m as i64 + 1) {
            return Err(Error::PoleOrderExceeded);
        }
        Ok(PolePartClass { coeffs: (1..=m as i64 + 1).map(|i| h.coeff(k, -i)).collect() })
    }

    pub fn to_series(&self, k: &FiniteField, prec: i64) -> Series<Fe> {
        let terms: Vec<(i64, Fe)> = self.coeffs.iter().enumerate().map(|(i, c)| (-(i as i64) - 1, *c)).collect();
        Series::from_terms(k, &terms, prec)
    }

    pub fn m(&self) -> u32 {
        self.coeffs.len() as u32 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, k: &FiniteField, other: &Self) -> Self {
        PolePartClass { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| k.add(*a, *b)).collect() }
    }

    pub fn sub(&self, k: &FiniteField, other: &Self) -> Self {
        PolePartClass { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| k.sub(*a, *b)).collect() }
    }

    pub fn scale(&self, k: &FiniteField, c: Fe) -> Self {
        PolePartClass { coeffs: self.coeffs.iter().map(|a| k.mul(*a, c)).collect() }
    }

    fn apply(&self, k: &FiniteField, a: &Matrix) -> Self {
        PolePartClass { coeffs: a.mul_vec(k, &self.coeffs) }
    }
}

/// Values of a 1-cochain on the generators `σ_1,…,σ_s`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OneCochain {
    pub vals: Vec<PolePartClass>,
}

/// A 2-cochain on all of `V × V`; the value at `(g, h)` is stored at
/// `index(g)·|V| + index(h)` in the order of [`Character::elements`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoCochain {
    pub vals: Vec<PolePartClass>,
}

impl TwoCochain {
    pub fn zero(ch: &Character) -> Self {
        let n = ch.order() as usize;
        TwoCochain { vals: vec![PolePartClass::zero(ch.m()); n * n] }
    }

    pub fn get(&self, ch: &Character, g: &GroupElem, h: &GroupElem) -> &PolePartClass {
        &self.vals[elem_index(ch, g) * ch.order() as usize + elem_index(ch, h)]
    }
}

pub fn elem_index(ch: &Character, g: &GroupElem) -> usize {
    g.exps().iter().fold(0usize, |acc, &e| acc * ch.p() as usize + e as usize)
}

/// `g·x`: the pole part of `ρ^{m+1}·h(ρ)/(t^{m+1}ρ')` with `ρ = ρ_g(t)`.
pub fn module_action(ch: &Character, g: &GroupElem, x: &PolePartClass, prec: i64) -> Result<PolePartClass, Error> {
    let m = ch.m() as i64;
    if prec < 2 * (m + 1) {
        return Err(Error::PrecisionTooLow);
    }
    let k = ch.field();
    let rho = build_rho(ch, g, prec)?;
    let h = x.to_series(k, prec);
    let num = rho.pow(k, m as u64 + 1).mul(k, &h.compose(k, &rho)?);
    let den = rho.derivative(k).shift(m + 1);
    PolePartClass::from_series(k, ch.m(), &num.mul(k, &den.inverse(k)?))
}

/// Matrix of `x ↦ g·x` on `M` in the basis `t^{-1},…,t^{-(m+1)}`.
pub fn action_matrix(ch: &Character, g: &GroupElem) -> Result<Matrix, Error> {
    action_matrix_for_value(ch.field(), ch.m(), ch.value(g))
}

/// `t^{-j} ↦ t^{-j}(1 + c tᵐ)^{j/m}` modulo `k[[t]]`.
fn action_matrix_for_value(k: &FiniteField, m: u32, c: Fe) -> Result<Matrix, Error> {
    let n = m as usize + 1;
    let mut a = Matrix::zeros(n, n);
    let base = Series::from_terms(k, &[(0, Fe::ONE), (m as i64, c)], n as i64 + 1);
    let w = base.mth_root_unit(k, m as u64)?;
    let mut wj = Series::one(k, n as i64 + 1);
    for j in 1..=n {
        wj = wj.mul(k, &w);
        for e in 0..j {
            let x = wj.coeff(k, e as i64);
            // t^{-j+e} with e < j is a pole.
            a.set(j - e - 1, j - 1, x);
        }
    }
    Ok(a)
}

fn norm_matrix(k: &FiniteField, a: &Matrix, p: u32) -> Matrix {
    let n = a.rows();
    let mut acc = Matrix::zeros(n, n);
    let mut pw = Matrix::identity(n);
    for _ in 0..p {
        acc = acc.add(k, &pw);
        pw = a.mul(k, &pw);
    }
    acc
}

/// Whether `x` satisfies the cocycle conditions on `M`:
/// `N_i x_i = 0` and `(σ_i − 1)x_j = (σ_j − 1)x_i`.
pub fn is_cocycle(ch: &Character, x: &OneCochain) -> Result<bool, Error> {
    let k = ch.field();
    let acts: Vec<Matrix> = ch.generators().iter().map(|g| action_matrix(ch, g)).collect::<Result<_, _>>()?;
    for (i, a) in acts.iter().enumerate() {
        if !x.vals[i].apply(k, &norm_matrix(k, a, ch.p())).is_zero() {
            return Ok(false);
        }
    }
    for i in 0..acts.len() {
        for j in i + 1..acts.len() {
            let l = x.vals[j].apply(k, &acts[i]).sub(k, &x.vals[j]);
            let r = x.vals[i].apply(k, &acts[j]).sub(k, &x.vals[i]);
            if l != r {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `σ_i ↦ (σ_i − 1)·n`.
pub fn coboundary(ch: &Character, n: &PolePartClass) -> Result<OneCochain, Error> {
    let k = ch.field();
    let vals = ch
        .generators()
        .iter()
        .map(|g| Ok(n.apply(k, &action_matrix(ch, g)?).sub(k, n)))
        .collect::<Result<_, Error>>()?;
    Ok(OneCochain { vals })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedFormula {
    pub dim: i64,
    pub a: Vec<i64>,
}

fn ceil_div(a: i64, b: i64) -> i64 {
    -((-a).div_euclid(b))
}

/// `Σ_i (⌊((m+1)(p−1) + a_i)/p⌋ − ⌈a_i/p⌉)` with `a₁ = −(m+1)`,
/// `a_i = ⌈a_{i−1}/p⌉`.
pub fn h1_closed_formula(p: u32, s: usize, m: u32) -> ClosedFormula {
    let (p, m) = (p as i64, m as i64);
    let mut a = Vec::with_capacity(s);
    let mut ai = -(m + 1);
    let mut dim = 0;
    for _ in 0..s {
        a.push(ai);
        dim += ((m + 1) * (p - 1) + ai).div_euclid(p) - ceil_div(ai, p);
        ai = ceil_div(ai, p);
    }
    ClosedFormula { dim, a }
}

/// Truncated piece of the module spanned by `t^{j0 + mν}`, `0 ≤ ν < depth`,
/// with the generator actions as `depth × depth` matrices (column `ν` is the
/// image of `t^{j0+mν}`).
struct Block {
    depth: usize,
    acts: Vec<Matrix>,
}

impl Block {
    fn new(k: &FiniteField, m: u32, vals: &[Fe], j0: i64, depth: usize) -> Result<Self, Error> {
        let d = depth as i64;
        let mut acts = Vec::with_capacity(vals.len());
        for &c in vals {
            // ρ(t)^j = t^j g(tᵐ)^j with g(u) = (1 + cu)^{-1/m}.
            let lin = Series::from_terms(k, &[(0, Fe::ONE), (1, c)], d);
            let g = lin.inverse_mth_root_unit(k, m as u64)?;
            let mut cur = if j0 < 0 { g.inverse(k)?.pow(k, (-j0) as u64) } else { g.pow(k, j0 as u64) };
            let step = lin.inverse(k)?;
            let mut a = Matrix::zeros(depth, depth);
            for nu in 0..depth {
                for r in nu..depth {
                    a.set(r, nu, cur.coeff(k, (r - nu) as i64));
                }
                cur = cur.mul(k, &step).truncate(k, d);
            }
            acts.push(a);
        }
        Ok(Block { depth, acts })
    }

    fn s(&self) -> usize {
        self.acts.len()
    }

    /// Coordinates are ordered by `(ν, generator)`.
    fn coord(&self, nu: usize, i: usize) -> usize {
        nu * self.s() + i
    }

    fn cocycle_space(&self, k: &FiniteField, p: u32) -> Vec<Vec<Fe>> {
        let (s, d) = (self.s(), self.depth);
        let n_rows = d * (s + s * (s - 1) / 2);
        let mut sys = Matrix::zeros(n_rows, s * d);
        let mut row = 0;
        for (i, a) in self.acts.iter().enumerate() {
            let nm = norm_matrix(k, a, p);
            for r in 0..d {
                for c in 0..d {
                    sys.set(row + r, self.coord(c, i), nm.get(r, c));
                }
            }
            row += d;
        }
        let id = Matrix::identity(d);
        for i in 0..s {
            for j in i + 1..s {
                let ai = self.acts[i].sub(k, &id);
                let aj = self.acts[j].sub(k, &id);
                for r in 0..d {
                    for c in 0..d {
                        sys.set(row + r, self.coord(c, j), ai.get(r, c));
                        sys.set(row + r, self.coord(c, i), k.neg(aj.get(r, c)));
                    }
                }
                row += d;
            }
        }
        sys.nullspace(k)
    }

    fn coboundary_rows(&self, k: &FiniteField, keep: usize, only: Option<usize>) -> Vec<Vec<Fe>> {
        let mut rows = Vec::new();
        for nu in 0..keep {
            for (i, a) in self.acts.iter().enumerate() {
                if only.is_some_and(|o| o != i) {
                    continue;
                }
                let mut v = vec![Fe::ZERO; keep * self.s()];
                for r in nu..keep {
                    let x = if r == nu { k.sub(a.get(r, nu), Fe::ONE) } else { a.get(r, nu) };
                    v[self.coord(r, i)] = x;
                }
                if only.is_some() || i == 0 {
                    rows.push(v);
                } else {
                    let last = rows.last_mut().expect("row for generator 0");
                    for (l, x) in last.iter_mut().zip(v) {
                        *l = k.add(*l, x);
                    }
                }
            }
        }
        rows
    }

    fn project(&self, v: &[Fe], keep: usize) -> Vec<Fe> {
        v[..keep * self.s()].to_vec()
    }
}

struct BlockClasses {
    block_j0: i64,
    keep: usize,
    s: usize,
    reps: RowSpace,
    coboundaries: RowSpace,
    /// Classes represented by cocycles with values in `k[[t]]`.
    holomorphic_kernel: usize,
    /// Classes whose restriction to every `⟨σ_i⟩` is a coboundary.
    restriction_kernel: usize,
}

/// Number of vectors among `vs` (projected below `keep`) that are
/// independent modulo `base`.
fn rank_modulo(k: &FiniteField, base: &RowSpace, vs: impl IntoIterator<Item = Vec<Fe>>) -> usize {
    let mut space = base.clone();
    let before = space.dim();
    for v in vs {
        space.insert(k, &v);
    }
    space.dim() - before
}

/// Classes of `H¹` restricted to one block: cocycles of the module modulo
/// `ν ≥ lift_depth`, projected below `class_depth`, modulo coboundaries.
fn block_classes(k: &FiniteField, ch: &Character, j0: i64, class_depth: usize, lift_depth: usize) -> Result<BlockClasses, Error> {
    let b = Block::new(k, ch.m(), ch.vals(), j0, lift_depth)?;
    let s = b.s();
    let m = ch.m() as i64;
    let width = class_depth * s;
    let mut cob = RowSpace::new(width);
    for v in b.coboundary_rows(k, class_depth, None) {
        cob.insert(k, &v);
    }
    let cocycles = b.cocycle_space(k, ch.p());
    let mut reps = RowSpace::new(width);
    for z in &cocycles {
        reps.insert(k, &cob.reduce(k, &b.project(z, class_depth)));
    }

    let pole_coords: Vec<usize> =
        (0..lift_depth).filter(|&nu| j0 + m * (nu as i64) < 0).flat_map(|nu| (0..s).map(move |i| nu * s + i)).collect();
    let mut pole_sys = Matrix::zeros(pole_coords.len(), cocycles.len());
    for (c, z) in cocycles.iter().enumerate() {
        for (r, &pc) in pole_coords.iter().enumerate() {
            pole_sys.set(r, c, z[pc]);
        }
    }
    let holomorphic = pole_sys.nullspace(k).into_iter().map(|combo| {
        let mut x = vec![Fe::ZERO; width];
        for (f, z) in combo.iter().zip(&cocycles) {
            for (xi, zi) in x.iter_mut().zip(b.project(z, class_depth)) {
                *xi = k.add(*xi, k.mul(*f, zi));
            }
        }
        x
    });
    let holomorphic_kernel = rank_modulo(k, &cob, holomorphic);

    Ok(BlockClasses {
        block_j0: j0,
        keep: class_depth,
        s,
        restriction_kernel: if s == 1 { 0 } else { rank_modulo(k, &cob, b.restriction_kernel(k, class_depth)) },
        reps,
        coboundaries: cob,
        holomorphic_kernel,
    })
}

impl Block {
    /// Cocycles `x_i = (σ_i − 1)n_i`, projected below `keep`.
    fn restriction_kernel(&self, k: &FiniteField, keep: usize) -> Vec<Vec<Fe>> {
        let (s, d) = (self.s(), self.depth);
        let id = Matrix::identity(d);
        let shifted: Vec<Matrix> = self.acts.iter().map(|a| a.sub(k, &id)).collect();
        let mut sys = Matrix::zeros(d * s * (s - 1) / 2, s * d);
        let mut row = 0;
        for i in 0..s {
            for j in i + 1..s {
                let op = shifted[i].mul(k, &shifted[j]);
                for r in 0..d {
                    for c in 0..d {
                        let v = op.get(r, c);
                        sys.set(row + r, self.coord(c, j), v);
                        sys.set(row + r, self.coord(c, i), k.neg(v));
                    }
                }
                row += d;
            }
        }
        sys.nullspace(k)
            .into_iter()
            .map(|n| {
                let mut x = vec![Fe::ZERO; keep * s];
                for (i, sh) in shifted.iter().enumerate() {
                    let ni: Vec<Fe> = (0..d).map(|nu| n[self.coord(nu, i)]).collect();
                    let xi = sh.mul_vec(k, &ni);
                    for nu in 0..keep {
                        x[nu * s + i] = xi[nu];
                    }
                }
                x
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct H1Result {
    pub dim: usize,
    /// Pole parts of class representatives, in echelon order.
    pub basis: Vec<OneCochain>,
    /// The same representatives as truncated series, one per generator.
    pub representatives: Vec<Vec<Series<Fe>>>,
    /// Dimension of the classes represented by cocycles with values in
    /// `k[[t]]`; these have zero pole part.
    pub holomorphic_classes: usize,
    /// Dimension of the kernel of restriction to the cyclic factors `⟨σ_i⟩`.
    pub restriction_kernel: usize,
    pub class_depth: usize,
    pub lift_depth: usize,
}

/// Depths `(p^s, 3p^s)` per residue block.
pub fn default_depths(ch: &Character) -> (usize, usize) {
    let q = ch.order() as usize;
    (q, 3 * q)
}

pub fn h1_brute_force(ch: &Character) -> Result<H1Result, Error> {
    let (d1, d2) = default_depths(ch);
    h1_brute_force_with_depth(ch, d1, d2)
}

pub fn h1_brute_force_with_depth(ch: &Character, class_depth: usize, lift_depth: usize) -> Result<H1Result, Error> {
    if lift_depth < class_depth {
        return Err(Error::InvalidArgument("lift depth must be at least the class depth"));
    }
    let k = ch.field();
    let m = ch.m() as i64;
    let mut keyed: Vec<((i64, usize), OneCochain, Vec<Series<Fe>>)> = Vec::new();
    let mut holomorphic_classes = 0;
    let mut restriction_kernel = 0;
    for j0 in -(m + 1)..-1 {
        let bc = block_classes(k, ch, j0, class_depth, lift_depth)?;
        holomorphic_classes += bc.holomorphic_kernel;
        restriction_kernel += bc.restriction_kernel;
        for v in bc.reps.basis() {
            let lead = v.iter().position(|x| !x.is_zero()).expect("basis vectors are nonzero");
            let key = (bc.block_j0 + m * (lead / bc.s) as i64, lead % bc.s);
            keyed.push((key, to_cochain(ch, &bc, &v), to_series(ch, &bc, &v)));
        }
    }
    keyed.sort_by_key(|x| x.0);
    Ok(H1Result {
        dim: keyed.len(),
        representatives: keyed.iter().map(|x| x.2.clone()).collect(),
        basis: keyed.into_iter().map(|x| x.1).collect(),
        holomorphic_classes,
        restriction_kernel,
        class_depth,
        lift_depth,
    })
}

fn to_series(ch: &Character, bc: &BlockClasses, v: &[Fe]) -> Vec<Series<Fe>> {
    let k = ch.field();
    let m = ch.m() as i64;
    let prec = bc.block_j0 + m * bc.keep as i64;
    (0..bc.s)
        .map(|i| {
            let terms: Vec<(i64, Fe)> = (0..bc.keep).map(|nu| (bc.block_j0 + m * nu as i64, v[nu * bc.s + i])).collect();
            Series::from_terms(k, &terms, prec)
        })
        .collect()
}

fn to_cochain(ch: &Character, bc: &BlockClasses, v: &[Fe]) -> OneCochain {
    let m = ch.m() as i64;
    let mut vals = vec![PolePartClass::zero(ch.m()); bc.s];
    for nu in 0..bc.keep {
        let e = bc.block_j0 + m * nu as i64;
        if e < 0 {
            for (i, val) in vals.iter_mut().enumerate() {
                val.coeffs[(-e - 1) as usize] = v[nu * bc.s + i];
            }
        }
    }
    OneCochain { vals }
}

/// Dimension at the default depths and with the lift depth raised by `p^s`.
pub fn h1_stabilization(ch: &Character) -> Result<(usize, usize), Error> {
    let (d1, d2) = default_depths(ch);
    let a = h1_brute_force_with_depth(ch, d1, d2)?.dim;
    let b = h1_brute_force_with_depth(ch, d1, d2 + ch.order() as usize)?.dim;
    Ok((a, b))
}

/// `binom(x, p−1)` in `F_p`, as `x(x−1)⋯(x−p+2)/(p−1)!`.
pub fn binom_p_minus_1(p: u32, x: u32) -> u32 {
    let p64 = p as u64;
    let mut num = 1u64;
    let mut den = 1u64;
    for r in 0..p64 - 1 {
        num = num * ((x as u64 + p64 - r % p64) % p64) % p64;
        den = den * (r + 1) % p64;
    }
    let mut inv = 1u64;
    for _ in 0..p64 - 2 {
        inv = inv * den % p64;
    }
    (num * inv % p64) as u32
}

fn inv_mod(a: u32, p: u32) -> u32 {
    (1..p).find(|x| (a as u64 * *x as u64) % p as u64 == 1).unwrap_or(0)
}

/// Exponents `b ≤ i ≤ m+1` with `binom(i/m, p−1) = 0` in `F_p`, where
/// `b = 1` if `p | m+1` and `b = 2` otherwise.
pub fn admissible_exponents(p: u32, m: u32) -> Vec<u32> {
    let b = if (m + 1).is_multiple_of(p) { 1 } else { 2 };
    let minv = inv_mod(m % p, p);
    (b..=m + 1).filter(|&i| binom_p_minus_1(p, (i % p) * minv % p) == 0).collect()
}

/// For a cyclic group: the admissible exponents `i` with the cochains
/// `σ ↦ c(σ) t^{-i}`.
pub fn h1_basis_cyclic(ch: &Character) -> Result<Vec<(u32, OneCochain)>, Error> {
    if ch.s() != 1 {
        return Err(Error::InvalidArgument("the cyclic basis needs s = 1"));
    }
    let c = ch.vals()[0];
    Ok(admissible_exponents(ch.p(), ch.m())
        .into_iter()
        .map(|i| (i, OneCochain { vals: vec![PolePartClass::monomial(ch.m(), i, c)] }))
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicBasisCheck {
    pub exponents: Vec<u32>,
    /// Every candidate is the pole part of some cocycle.
    pub all_cocycles: bool,
    /// Every candidate `c·t^{-i}` is the most polar term of the pole part of
    /// some cocycle (the rest having exponents above `−i`).
    pub leading_terms: bool,
    /// Rank of the candidates modulo coboundaries.
    pub rank: usize,
    pub h1_dim: usize,
}

impl CyclicBasisCheck {
    pub fn holds(&self) -> bool {
        self.leading_terms && self.rank == self.h1_dim && self.exponents.len() == self.h1_dim
    }
}

/// Checks that the cochains `c(σ) t^{-i}` of [`h1_basis_cyclic`] lead
/// cocycles and span `H¹` modulo coboundaries, and records whether they are
/// cocycles on the nose.
pub fn check_cyclic_basis(ch: &Character) -> Result<CyclicBasisCheck, Error> {
    let basis = h1_basis_cyclic(ch)?;
    let k = ch.field();
    let m = ch.m() as i64;
    let (d1, d2) = default_depths(ch);
    let mut all_cocycles = true;
    let mut leading_terms = true;
    let mut rank = 0;
    let mut h1_dim = 0;
    for j0 in -(m + 1)..-1 {
        let bc = block_classes(k, ch, j0, d1, d2)?;
        h1_dim += bc.reps.dim();
        // Pole-part projections of cocycles and of coboundaries.
        let pole_nus: Vec<usize> = (0..d1).filter(|&nu| j0 + m * (nu as i64) < 0).collect();
        let proj = |v: &[Fe]| -> Vec<Fe> { pole_nus.iter().map(|&nu| v[nu]).collect() };
        let mut z = RowSpace::new(pole_nus.len());
        let mut b = RowSpace::new(pole_nus.len());
        for v in bc.coboundaries.basis() {
            b.insert(k, &proj(&v));
            z.insert(k, &proj(&v));
        }
        for v in bc.reps.basis() {
            z.insert(k, &proj(&v));
        }
        let before = b.dim();
        for (i, _) in &basis {
            let e = -(*i as i64);
            if (e - j0).rem_euclid(m) != 0 {
                continue;
            }
            let nu = ((e - j0) / m) as usize;
            let mut v = vec![Fe::ZERO; pole_nus.len()];
            v[pole_nus.iter().position(|&x| x == nu).expect("pole exponent")] = ch.vals()[0];
            all_cocycles &= z.contains(k, &v);
            let mut lead = z.clone();
            for (pos, &x) in pole_nus.iter().enumerate() {
                if x > nu {
                    let mut u = vec![Fe::ZERO; pole_nus.len()];
                    u[pos] = Fe::ONE;
                    lead.insert(k, &u);
                }
            }
            leading_terms &= lead.contains(k, &v);
            b.insert(k, &v);
        }
        rank += b.dim() - before;
    }
    Ok(CyclicBasisCheck { exponents: basis.into_iter().map(|(i, _)| i).collect(), all_cocycles, leading_terms, rank, h1_dim })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitCondition {
    pub holds: bool,
    /// Base-p digits, least significant first.
    pub digits: Vec<u32>,
}

fn base_p_digits(p: u32, mut x: u32) -> Vec<u32> {
    let mut digits = Vec::new();
    while x > 0 {
        digits.push(x % p);
        x /= p;
    }
    digits
}

/// `⌊2b₀/p⌋ = ⌊(b₀ + b_{ν−1})/p⌋` for `2 ≤ ν ≤ s`, with `b_i` the digits of `m`.
pub fn split_condition(p: u32, s: usize, m: u32) -> SplitCondition {
    let digits = base_p_digits(p, m);
    let b = |i: usize| digits.get(i).copied().unwrap_or(0);
    let holds = (2..=s).all(|nu| 2 * b(0) / p == (b(0) + b(nu - 1)) / p);
    SplitCondition { holds, digits }
}

/// `⌈2b₀/p⌉ = ⌈(b₀ + b_{ν−1})/p⌉` for `2 ≤ ν ≤ s`, with `b_i` the digits of
/// `m+1`. Term `i` of [`h1_closed_formula`] equals
/// `(m+1) − Σ_{ν≥1} b_ν p^{ν−1} − ⌈(b₀ + b_{i−1})/p⌉`, so this holds exactly
/// when every term equals the first, i.e. when `h₁(V) = s·h₁(Z/p)`.
pub fn split_condition_exact(p: u32, s: usize, m: u32) -> SplitCondition {
    let digits = base_p_digits(p, m + 1);
    let b = |i: usize| digits.get(i).copied().unwrap_or(0);
    let holds = (2..=s).all(|nu| (2 * b(0)).div_ceil(p) == (b(0) + b(nu - 1)).div_ceil(p));
    SplitCondition { holds, digits }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitCheck {
    pub condition: SplitCondition,
    pub exact_condition: SplitCondition,
    pub dim: usize,
    pub cyclic_dims: Vec<usize>,
    pub formula_dim: i64,
    pub cyclic_formula_dim: i64,
    pub restriction_kernel: usize,
}

impl SplitCheck {
    pub fn dims_split(&self) -> bool {
        self.dim == self.cyclic_dims.iter().sum::<usize>()
            && self.formula_dim == self.cyclic_formula_dim * self.cyclic_dims.len() as i64
    }

    /// Where the condition holds, the dimensions add up.
    pub fn consistent(&self) -> bool {
        !self.condition.holds || self.dims_split()
    }
}

pub fn split_check(ch: &Character, h1: &H1Result) -> Result<SplitCheck, Error> {
    let cyclic_dims = (0..ch.s()).map(|i| h1_brute_force(&ch.restrict(i)).map(|r| r.dim)).collect::<Result<_, _>>()?;
    Ok(SplitCheck {
        condition: split_condition(ch.p(), ch.s(), ch.m()),
        exact_condition: split_condition_exact(ch.p(), ch.s(), ch.m()),
        dim: h1.dim,
        cyclic_dims,
        formula_dim: h1_closed_formula(ch.p(), ch.s(), ch.m()).dim,
        cyclic_formula_dim: h1_closed_formula(ch.p(), 1, ch.m()).dim,
        restriction_kernel: h1.restriction_kernel,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KrullDimension {
    pub sigma: Vec<u32>,
    pub dim: usize,
}

/// `Σ = {b ≤ i ≤ m : binom(i/m, p−1) = 0}`.
pub fn krull_dimension_sigma(p: u32, m: u32) -> KrullDimension {
    let sigma: Vec<u32> = admissible_exponents(p, m).into_iter().filter(|&i| i <= m).collect();
    KrullDimension { dim: sigma.len(), sigma }
}

/// Decides membership of 2-cochains in the image of `δ: C¹(V, M) → C²(V, M)`.
#[derive(Clone, Debug)]
pub struct CoboundaryTester {
    ch: Character,
    elements: Vec<GroupElem>,
    acts: Vec<Matrix>,
}

/// `(δb)(g, h) = g·b(h) − b(gh) + b(g)`.
pub fn delta1(ch: &Character, b: &[PolePartClass]) -> Result<TwoCochain, Error> {
    let k = ch.field();
    let els = ch.elements();
    let acts: Vec<Matrix> = els.iter().map(|g| action_matrix(ch, g)).collect::<Result<_, _>>()?;
    let mut vals = Vec::with_capacity(els.len() * els.len());
    for (gi, g) in els.iter().enumerate() {
        for (hi, h) in els.iter().enumerate() {
            let gh = elem_index(ch, &g.mul(h, ch.p()));
            vals.push(b[hi].apply(k, &acts[gi]).sub(k, &b[gh]).add(k, &b[gi]));
        }
    }
    Ok(TwoCochain { vals })
}

/// `(δc)(g, h, l) = 0` for all triples.
pub fn is_two_cocycle(ch: &Character, c: &TwoCochain) -> Result<bool, Error> {
    let k = ch.field();
    let els = ch.elements();
    let n = els.len();
    let acts: Vec<Matrix> = els.iter().map(|g| action_matrix(ch, g)).collect::<Result<_, _>>()?;
    let idx = |a: usize, b: usize| a * n + b;
    for (gi, g) in els.iter().enumerate() {
        for (hi, h) in els.iter().enumerate() {
            let gh = elem_index(ch, &g.mul(h, ch.p()));
            for (li, l) in els.iter().enumerate() {
                let hl = elem_index(ch, &h.mul(l, ch.p()));
                let v = c.vals[idx(hi, li)]
                    .apply(k, &acts[gi])
                    .sub(k, &c.vals[idx(gh, li)])
                    .add(k, &c.vals[idx(gi, hl)])
                    .sub(k, &c.vals[idx(gi, hi)]);
                if !v.is_zero() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

impl CoboundaryTester {
    pub fn new(ch: &Character) -> Result<Self, Error> {
        let elements = ch.elements();
        let acts = elements.iter().map(|g| action_matrix(ch, g)).collect::<Result<_, _>>()?;
        Ok(CoboundaryTester { ch: ch.clone(), elements, acts })
    }

    /// Some `b` with `δb = c`, if `c` is a coboundary.
    ///
    /// `b(1) = c(1,1)` and `b(σ_i)` are the unknowns; every other value is
    /// forced by `b(σ_i h) = σ_i·b(h) + b(σ_i) − c(σ_i, h)`, after which all
    /// equations `δb = c` are imposed.
    pub fn solve(&self, c: &TwoCochain) -> Option<Vec<PolePartClass>> {
        let ch = &self.ch;
        let k = ch.field();
        let p = ch.p();
        let s = ch.s();
        let n = ch.m() as usize + 1;
        let nv = self.elements.len();
        let unknowns = s * n;
        let width = unknowns + 1;
        let cval = |g: usize, h: usize| &c.vals[g * nv + h];

        // b(g) as an n × (unknowns + 1) affine map; last column is the constant.
        let mut b: Vec<Option<Matrix>> = vec![None; nv];
        let mut b1 = Matrix::zeros(n, width);
        for r in 0..n {
            b1.set(r, unknowns, cval(0, 0).coeffs[r]);
        }
        b[0] = Some(b1);
        for i in 0..s {
            let gi = elem_index(ch, &GroupElem::generator(s, i));
            let mut bi = Matrix::zeros(n, width);
            for r in 0..n {
                bi.set(r, i * n + r, Fe::ONE);
            }
            b[gi] = Some(bi);
        }
        for (gi, g) in self.elements.iter().enumerate() {
            if b[gi].is_some() {
                continue;
            }
            let mut exps: Vec<i64> = g.exps().iter().map(|&e| e as i64).collect();
            let i = exps.iter().position(|&e| e > 0).expect("non-identity");
            exps[i] -= 1;
            let h = GroupElem::new(p, &exps);
            let hi = elem_index(ch, &h);
            let si = elem_index(ch, &GroupElem::generator(s, i));
            let bh = b[hi].as_ref().expect("earlier in lexicographic order");
            let mut out = self.acts[si].mul(k, bh).add(k, b[si].as_ref().expect("generator"));
            for r in 0..n {
                out.set(r, unknowns, k.sub(out.get(r, unknowns), cval(si, hi).coeffs[r]));
            }
            b[gi] = Some(out);
        }
        let b: Vec<Matrix> = b.into_iter().map(|x| x.expect("all elements assigned")).collect();

        let mut eqs = RowSpace::new(width);
        for gi in 0..nv {
            for hi in 0..nv {
                let gh = elem_index(ch, &self.elements[gi].mul(&self.elements[hi], p));
                let lhs = self.acts[gi].mul(k, &b[hi]).sub(k, &b[gh]).add(k, &b[gi]);
                for r in 0..n {
                    let mut row = lhs.row(r).to_vec();
                    row[unknowns] = k.sub(row[unknowns], cval(gi, hi).coeffs[r]);
                    eqs.insert(k, &row);
                }
            }
        }
        if eqs.pivots().contains(&unknowns) {
            return None;
        }
        let mut x = vec![Fe::ZERO; width];
        x[unknowns] = Fe::ONE;
        for row in eqs.basis() {
            let pc = row.iter().position(|v| !v.is_zero()).expect("nonzero row");
            x[pc] = k.neg(row[unknowns]);
        }
        let sol: Vec<PolePartClass> =
            b.iter().map(|bm| PolePartClass { coeffs: bm.mul_vec(k, &x) }).collect();
        (delta1(ch, &sol).ok()? == *c).then_some(sol)
    }

    pub fn is_coboundary(&self, c: &TwoCochain) -> bool {
        self.solve(c).is_some()
    }
}

#[derive(Clone, Debug)]
pub struct H2Result {
    pub dim: usize,
    pub tester: CoboundaryTester,
}

pub const H2_MAX_ORDER: u64 = 27;

/// `H²(V, M)` from the tensor product of the periodic resolutions of the
/// cyclic factors, plus a coboundary tester on bar cochains.
pub fn h2_brute_force(ch: &Character) -> Result<H2Result, Error> {
    if ch.order() > H2_MAX_ORDER {
        return Err(Error::TooLarge);
    }
    Ok(H2Result { dim: h_dim_resolution(ch, 2)?, tester: CoboundaryTester::new(ch)? })
}

fn multi_indices(s: usize, n: usize) -> Vec<Vec<usize>> {
    if s == 0 {
        return if n == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=n).rev() {
        for mut rest in multi_indices(s - 1, n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Differential `Hom(P_n, M) → Hom(P_{n+1}, M)`.
fn resolution_differential(k: &FiniteField, gens: &[Matrix], norms: &[Matrix], deg: usize) -> Matrix {
    let s = gens.len();
    let dm = gens[0].rows();
    let src = multi_indices(s, deg);
    let dst = multi_indices(s, deg + 1);
    let id = Matrix::identity(dm);
    let mut d = Matrix::zeros(dst.len() * dm, src.len() * dm);
    for (bi, beta) in dst.iter().enumerate() {
        let mut sign_exp = 0;
        for i in 0..s {
            if beta[i] > 0 {
                let mut from = beta.clone();
                from[i] -= 1;
                let fi = src.iter().position(|x| *x == from).expect("multi-index");
                let op = if from[i] % 2 == 0 { gens[i].sub(k, &id) } else { norms[i].clone() };
                let neg = sign_exp % 2 == 1;
                for r in 0..dm {
                    for c in 0..dm {
                        let v = op.get(r, c);
                        d.set(bi * dm + r, fi * dm + c, if neg { k.neg(v) } else { v });
                    }
                }
            }
            sign_exp += beta[i];
        }
    }
    d
}

/// `dim Hⁿ(V, M)` for `n ≥ 1`.
pub fn h_dim_resolution(ch: &Character, n: usize) -> Result<usize, Error> {
    let k = ch.field();
    let gens: Vec<Matrix> = ch.generators().iter().map(|g| action_matrix(ch, g)).collect::<Result<_, _>>()?;
    let norms: Vec<Matrix> = gens.iter().map(|a| norm_matrix(k, a, ch.p())).collect();
    let dim_cn = multi_indices(ch.s(), n).len() * (ch.m() as usize + 1);
    let out_rank = resolution_differential(k, &gens, &norms, n).rank(k);
    let in_rank = if n == 0 { 0 } else { resolution_differential(k, &gens, &norms, n - 1).rank(k) };
    Ok(dim_cn - out_rank - in_rank)
}

/// `dim H²(V, M)` from the inhomogeneous bar complex; only for small cases.
pub fn h2_bar_dim(ch: &Character) -> Result<usize, Error> {
    let k = ch.field();
    let els = ch.elements();
    let nv = els.len();
    let dm = ch.m() as usize + 1;
    if nv * nv * nv * dm > 20_000 {
        return Err(Error::TooLarge);
    }
    let acts: Vec<Matrix> = els.iter().map(|g| action_matrix(ch, g)).collect::<Result<_, _>>()?;
    let mul = |a: usize, b: usize| elem_index(ch, &els[a].mul(&els[b], ch.p()));
    // δ¹: C¹ → C².
    let mut d1 = Matrix::zeros(nv * nv * dm, nv * dm);
    for g in 0..nv {
        for h in 0..nv {
            let row0 = (g * nv + h) * dm;
            for r in 0..dm {
                for c in 0..dm {
                    let v = d1.get(row0 + r, h * dm + c);
                    d1.set(row0 + r, h * dm + c, k.add(v, acts[g].get(r, c)));
                }
                let gh = mul(g, h);
                let v = d1.get(row0 + r, gh * dm + r);
                d1.set(row0 + r, gh * dm + r, k.sub(v, Fe::ONE));
                let v = d1.get(row0 + r, g * dm + r);
                d1.set(row0 + r, g * dm + r, k.add(v, Fe::ONE));
            }
        }
    }
    // δ²: C² → C³.
    let mut d2 = Matrix::zeros(nv * nv * nv * dm, nv * nv * dm);
    for g in 0..nv {
        for h in 0..nv {
            for l in 0..nv {
                let row0 = ((g * nv + h) * nv + l) * dm;
                let terms = [(mul(g, h) * nv + l, false), (g * nv + mul(h, l), true), (g * nv + h, false)];
                for r in 0..dm {
                    for c in 0..dm {
                        let col = (h * nv + l) * dm + c;
                        let v = d2.get(row0 + r, col);
                        d2.set(row0 + r, col, k.add(v, acts[g].get(r, c)));
                    }
                    for (cell, plus) in terms {
                        let col = cell * dm + r;
                        let v = d2.get(row0 + r, col);
                        d2.set(row0 + r, col, if plus { k.add(v, Fe::ONE) } else { k.sub(v, Fe::ONE) });
                    }
                }
            }
        }
    }
    Ok(nv * nv * dm - d2.rank(k) - d1.rank(k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::autoreps::Character;

    fn ch(p: u32, s: usize, m: u32) -> Character {
        Character::standard(p, s, m).unwrap()
    }

    #[test]
    fn closed_formula_examples() {
        assert_eq!(h1_closed_formula(2, 1, 3).dim, 2);
        assert_eq!(h1_closed_formula(3, 2, 2).dim, 3);
        assert_eq!(h1_closed_formula(3, 1, 4).dim, 2);
        assert_eq!(h1_closed_formula(3, 1, 2).dim, 2);
        let f = h1_closed_formula(2, 3, 9);
        assert_eq!(f.a, vec![-10, -5, -2]);
        for (i, a) in f.a.iter().enumerate() {
            assert_eq!(*a, -(10 / 2i64.pow(i as u32)));
        }
    }

    #[test]
    fn literal_action_matches_matrix() {
        for (p, s, m) in [(2, 1, 3), (3, 2, 2), (5, 1, 3), (2, 2, 5)] {
            let ch = ch(p, s, m);
            let k = ch.field();
            for g in ch.elements() {
                let a = action_matrix(&ch, &g).unwrap();
                for i in 1..=m + 1 {
                    let x = PolePartClass::monomial(m, i, Fe::ONE);
                    let lit = module_action(&ch, &g, &x, 2 * (m as i64 + 1)).unwrap();
                    assert_eq!(lit, x.apply(k, &a), "p={p} m={m} g={g:?} i={i}");
                }
            }
        }
    }

    #[test]
    fn action_examples() {
        let c = ch(2, 1, 3);
        let x = PolePartClass::monomial(3, 1, Fe::ONE);
        let id = GroupElem::identity(1);
        assert_eq!(module_action(&c, &id, &x, 8).unwrap(), x);
        let z = PolePartClass::zero(3);
        let g = GroupElem::generator(1, 0);
        assert_eq!(module_action(&c, &g, &z, 8).unwrap(), z);
        let y = module_action(&c, &g, &x, 8).unwrap();
        assert_eq!(module_action(&c, &g, &y, 8).unwrap(), x);
        assert_eq!(module_action(&c, &g, &x, 7), Err(Error::PrecisionTooLow));
    }

    #[test]
    fn action_is_a_group_action() {
        for (p, s, m) in [(2, 2, 3), (3, 2, 2), (3, 1, 4), (5, 1, 2)] {
            let ch = ch(p, s, m);
            let k = ch.field();
            let els = ch.elements();
            let acts: Vec<Matrix> = els.iter().map(|g| action_matrix(&ch, g).unwrap()).collect();
            assert_eq!(acts[0], Matrix::identity(m as usize + 1));
            for (gi, g) in els.iter().enumerate() {
                for (hi, h) in els.iter().enumerate() {
                    let gh = elem_index(&ch, &g.mul(h, p));
                    assert_eq!(acts[gi].mul(k, &acts[hi]), acts[gh]);
                }
            }
        }
    }

    #[test]
    fn h1_examples() {
        assert_eq!(h1_brute_force(&ch(2, 1, 3)).unwrap().dim, 2);
        assert_eq!(h1_brute_force(&ch(3, 1, 2)).unwrap().dim, 2);
        assert_eq!(h1_brute_force(&ch(3, 2, 2)).unwrap().dim, 3);
    }

    #[test]
    fn h1_basis_is_deterministic_and_made_of_cocycles() {
        let c = ch(3, 2, 4);
        let a = h1_brute_force(&c).unwrap();
        let b = h1_brute_force(&c).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.representatives.len(), a.dim);
        for x in &a.basis {
            assert!(is_cocycle(&c, x).unwrap());
        }
    }

    #[test]
    fn cyclic_basis_examples() {
        assert_eq!(admissible_exponents(2, 3), vec![2, 4]);
        assert_eq!(admissible_exponents(3, 2), vec![2, 3]);
        assert_eq!(admissible_exponents(3, 4), vec![3, 4]);
        for (p, m) in [(2, 3), (3, 2), (3, 4), (5, 3), (5, 4), (2, 7)] {
            let chk = check_cyclic_basis(&ch(p, 1, m)).unwrap();
            assert!(chk.holds(), "p={p} m={m}: {chk:?}");
            assert!(chk.all_cocycles);
        }
        // p = 2, m = 1: σ(t⁻²) = t⁻² + 1 and σ(t⁻¹) = t⁻¹ + 1, so t⁻² alone has
        // norm 1 ≠ 0 while t⁻² + t⁻¹ is a cocycle led by t⁻².
        let chk = check_cyclic_basis(&ch(2, 1, 1)).unwrap();
        assert_eq!(chk.exponents, vec![2]);
        assert!(chk.holds() && chk.leading_terms && !chk.all_cocycles);
    }

    #[test]
    fn binom_values() {
        // binom(x, p−1) vanishes exactly for x ∈ {0,…,p−2}.
        for p in [2u32, 3, 5, 7] {
            for x in 0..p {
                assert_eq!(binom_p_minus_1(p, x) == 0, x < p - 1, "p={p} x={x}");
            }
        }
    }

    #[test]
    fn split_examples() {
        assert!(split_condition(2, 2, 3).holds);
        assert_eq!(split_condition(2, 2, 3).digits, vec![1, 1]);
        assert!(!split_condition(3, 2, 2).holds);
        assert!(split_condition(5, 1, 7).holds);
        let c = ch(2, 2, 3);
        let chk = split_check(&c, &h1_brute_force(&c).unwrap()).unwrap();
        assert!(chk.condition.holds && chk.consistent(), "{chk:?}");
        let c = ch(3, 2, 2);
        let chk = split_check(&c, &h1_brute_force(&c).unwrap()).unwrap();
        assert!(!chk.condition.holds && !chk.dims_split());
        assert_eq!((chk.dim, chk.cyclic_dims.iter().sum::<usize>()), (3, 4));
    }

    #[test]
    fn exact_split_condition_matches_formula() {
        for p in [2u32, 3, 5, 7] {
            for s in 1..=3usize {
                for m in 2..60u32 {
                    if m % p == 0 {
                        continue;
                    }
                    let split = h1_closed_formula(p, s, m).dim == s as i64 * h1_closed_formula(p, 1, m).dim;
                    assert_eq!(split_condition_exact(p, s, m).holds, split, "p={p} s={s} m={m}");
                }
            }
        }
        // The digits-of-m reading holds here although 5 ≠ 2 + 2.
        assert!(split_condition(3, 2, 4).holds);
        assert!(!split_condition_exact(3, 2, 4).holds);
    }

    #[test]
    fn restriction_to_cyclic_factors_has_a_kernel() {
        // p = 2, m = 3, c = (1, ω): the constant cochain σ ↦ c(σ)² is a
        // cocycle, is not a coboundary (the only way to reach constants is
        // (σ−1)t^{-3} = c(σ)), and restricts to a coboundary on each ⟨σ_i⟩.
        let c = ch(2, 2, 3);
        let h1 = h1_brute_force(&c).unwrap();
        assert_eq!(h1.dim, 4);
        assert_eq!(h1.restriction_kernel, 1);
        assert_eq!(h1.holomorphic_classes, 1);
        let k = c.field();
        let zero_pole: Vec<_> = h1.basis.iter().filter(|x| x.vals.iter().all(|v| v.is_zero())).collect();
        assert_eq!(zero_pole.len(), 1);
        let idx = h1.basis.iter().position(|x| x.vals.iter().all(|v| v.is_zero())).unwrap();
        let rep = &h1.representatives[idx];
        let consts: Vec<Fe> = rep.iter().map(|r| r.coeff(k, 0)).collect();
        // Its constant terms are not proportional to c, so no multiple of
        // t^{-3} removes them.
        let v = c.vals();
        assert_ne!(k.mul(consts[0], v[1]), k.mul(consts[1], v[0]));
    }

    #[test]
    fn krull_examples() {
        assert_eq!(krull_dimension_sigma(2, 3), KrullDimension { sigma: vec![2], dim: 1 });
        assert_eq!(krull_dimension_sigma(3, 4), KrullDimension { sigma: vec![3, 4], dim: 2 });
        assert_eq!(krull_dimension_sigma(3, 2), KrullDimension { sigma: vec![2], dim: 1 });
    }

    #[test]
    fn h2_resolution_matches_bar_complex() {
        for (p, s, m) in [(2, 1, 1), (2, 1, 3), (3, 1, 2), (2, 2, 3), (3, 1, 4), (5, 1, 2)] {
            let c = ch(p, s, m);
            assert_eq!(h_dim_resolution(&c, 2).unwrap(), h2_bar_dim(&c).unwrap(), "p={p} s={s} m={m}");
        }
    }

    #[test]
    fn coboundary_tester() {
        for (p, s, m) in [(2, 1, 3), (3, 1, 2), (2, 2, 3), (3, 2, 2)] {
            let c = ch(p, s, m);
            let k = c.field();
            let h2 = h2_brute_force(&c).unwrap();
            assert!(h2.tester.is_coboundary(&TwoCochain::zero(&c)));
            let b: Vec<PolePartClass> = (0..c.order())
                .map(|g| PolePartClass { coeffs: (0..=m).map(|i| k.from_int((g * 7 + i as u64 * 3 + 1) as i64)).collect() })
                .collect();
            let db = delta1(&c, &b).unwrap();
            assert!(is_two_cocycle(&c, &db).unwrap());
            let sol = h2.tester.solve(&db).unwrap();
            assert_eq!(delta1(&c, &sol).unwrap(), db);
        }
    }

    #[test]
    fn non_coboundary_detected() {
        // For p = 2, m = 1 the action on M is trivial, so H² = M/2M = M and
        // the carry cocycle c(σ, σ) = x is not a coboundary for x ≠ 0.
        let c = ch(2, 1, 1);
        let h2 = h2_brute_force(&c).unwrap();
        assert_eq!(h2.dim, 2);
        let k = c.field();
        let acts = action_matrix(&c, &GroupElem::generator(1, 0)).unwrap();
        let mut found = false;
        for i in 1..=2 {
            let x = PolePartClass::monomial(1, i, Fe::ONE);
            if x.apply(k, &acts) != x {
                continue;
            }
            let mut cc = TwoCochain::zero(&c);
            cc.vals[3] = x;
            assert!(is_two_cocycle(&c, &cc).unwrap());
            assert!(!h2.tester.is_coboundary(&cc));
            found = true;
        }
        assert!(found);
    }
}
