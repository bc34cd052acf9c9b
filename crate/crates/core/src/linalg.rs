//! Dense linear algebra over a [`FiniteField`].

use alloc::vec;
use alloc::vec::Vec;

use crate::coeffring::{Fe, FiniteField};

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Fe>,
}

/// `dst -= f·src`.
fn axpy_neg(k: &FiniteField, dst: &mut [Fe], f: Fe, src: &[Fe]) {
    if f.is_zero() {
        return;
    }
    let nf = k.neg(f);
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d = k.add(*d, k.mul(nf, *s));
        }
    }
}

fn scale_row(k: &FiniteField, row: &mut [Fe], f: Fe) {
    for x in row.iter_mut() {
        *x = k.mul(*x, f);
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Fe::ZERO; rows * cols] }
    }

    pub fn from_rows(cols: usize, rows: &[Vec<Fe>]) -> Self {
        let mut m = Matrix::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            m.row_mut(i)[..r.len()].copy_from_slice(r);
        }
        m
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Fe::ONE);
        }
        m
    }

    pub fn mul(&self, k: &FiniteField, other: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                let src = other.row(l).to_vec();
                axpy_neg(k, out.row_mut(i), k.neg(a), &src);
            }
        }
        out
    }

    pub fn add(&self, k: &FiniteField, other: &Matrix) -> Matrix {
        let data = self.data.iter().zip(&other.data).map(|(a, b)| k.add(*a, *b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, k: &FiniteField, other: &Matrix) -> Matrix {
        let data = self.data.iter().zip(&other.data).map(|(a, b)| k.sub(*a, *b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn column(&self, j: usize) -> Vec<Fe> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Fe {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: Fe) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Fe] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [Fe] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul_vec(&self, k: &FiniteField, v: &[Fe]) -> Vec<Fe> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Fe::ZERO, |acc, (a, b)| k.add(acc, k.mul(*a, *b)))
            })
            .collect()
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self, k: &FiniteField) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            if pr != r {
                for j in 0..self.cols {
                    self.data.swap(pr * self.cols + j, r * self.cols + j);
                }
            }
            let inv = k.inv(self.get(r, c)).expect("pivot is nonzero");
            scale_row(k, self.row_mut(r), inv);
            let pivot_row: Vec<Fe> = self.row(r).to_vec();
            for i in 0..self.rows {
                if i != r {
                    let f = self.get(i, c);
                    axpy_neg(k, self.row_mut(i), f, &pivot_row);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self, k: &FiniteField) -> usize {
        self.clone().rref(k).len()
    }

    /// Basis of `{x : A x = 0}`, one vector per free column (ascending).
    pub fn nullspace(&self, k: &FiniteField) -> Vec<Vec<Fe>> {
        let mut m = self.clone();
        let pivots = m.rref(k);
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Fe::ZERO; self.cols];
            v[free] = Fe::ONE;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = k.neg(m.get(r, free));
            }
            basis.push(v);
        }
        basis
    }

    /// Some `x` with `A x = b`, if one exists.
    pub fn solve(&self, k: &FiniteField, b: &[Fe]) -> Option<Vec<Fe>> {
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            aug.row_mut(i)[..self.cols].copy_from_slice(self.row(i));
            aug.set(i, self.cols, b[i]);
        }
        let pivots = aug.rref(k);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Fe::ZERO; self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.get(r, self.cols);
        }
        Some(x)
    }
}

/// An incrementally built subspace of `F^n`, kept in echelon form with
/// unit pivots.
#[derive(Clone, Debug)]
pub struct RowSpace {
    dim: usize,
    rows: Vec<Vec<Fe>>,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn new(dim: usize) -> Self {
        RowSpace { dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Residue of `v` after eliminating every pivot of the space.
    pub fn reduce(&self, k: &FiniteField, v: &[Fe]) -> Vec<Fe> {
        let mut w = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let f = w[pc];
            axpy_neg(k, &mut w, f, row);
        }
        w
    }

    pub fn contains(&self, k: &FiniteField, v: &[Fe]) -> bool {
        self.reduce(k, v).iter().all(|x| x.is_zero())
    }

    /// Adds `v`; returns false if it was already in the span.
    pub fn insert(&mut self, k: &FiniteField, v: &[Fe]) -> bool {
        let mut w = self.reduce(k, v);
        let Some(pc) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = k.inv(w[pc]).expect("nonzero");
        scale_row(k, &mut w, inv);
        for (row, _) in self.rows.iter_mut().zip(&self.pivots) {
            let f = row[pc];
            axpy_neg(k, row, f, &w);
        }
        self.rows.push(w);
        self.pivots.push(pc);
        true
    }

    /// Basis in reduced echelon form, sorted by pivot column.
    pub fn basis(&self) -> Vec<Vec<Fe>> {
        let mut idx: Vec<usize> = (0..self.rows.len()).collect();
        idx.sort_by_key(|&i| self.pivots[i]);
        idx.into_iter().map(|i| self.rows[i].clone()).collect()
    }

    pub fn pivots(&self) -> Vec<usize> {
        let mut p = self.pivots.clone();
        p.sort_unstable();
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_nullspace() {
        let k = FiniteField::prime(3).unwrap();
        let e = |x: u16| Fe(x);
        let m = Matrix::from_rows(3, &[vec![e(1), e(2), e(0)], vec![e(2), e(1), e(0)], vec![e(0), e(0), e(1)]]);
        // row2 = 2·row1 mod 3
        assert_eq!(m.rank(&k), 2);
        let id = Matrix::identity(3);
        assert_eq!(m.mul(&k, &id), m);
        assert_eq!(id.mul(&k, &m).sub(&k, &m), Matrix::zeros(3, 3));
        let ns = m.nullspace(&k);
        assert_eq!(ns.len(), 1);
        assert!(m.mul_vec(&k, &ns[0]).iter().all(|x| x.is_zero()));
        assert!(m.solve(&k, &[e(1), e(2), e(1)]).is_some());
        assert!(m.solve(&k, &[e(1), e(1), e(1)]).is_none());
    }

    #[test]
    fn rowspace_incremental() {
        let k = FiniteField::new(2, 2, None).unwrap();
        let mut s = RowSpace::new(3);
        assert!(s.insert(&k, &[Fe(1), Fe(2), Fe(0)]));
        assert!(s.insert(&k, &[Fe(0), Fe(1), Fe(1)]));
        let combo = [Fe(1), k.add(Fe(2), Fe(3)), Fe(3)];
        assert_eq!(s.contains(&k, &combo), !s.clone().insert(&k, &combo));
        assert_eq!(s.dim(), 2);
        assert_eq!(s.pivots(), vec![0, 1]);
    }
}
