//! Dense linear algebra over a prime field GF(p).
//!
//! Field elements are plain `u32` values in `[0, p)`; the modulus travels
//! alongside in a [`Field`] handle. Every subspace is kept as the row space
//! of a matrix in reduced row echelon form, so two subspaces are equal iff
//! their stored bases are equal.

mod poly;

pub use poly::{charpoly, Poly};

use serde::{Deserialize, Serialize};
use std::fmt;

/// The prime field GF(p).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Field {
    p: u32,
}

impl Field {
    /// Panics when `p` is not prime; callers validate user input first.
    pub fn new(p: u32) -> Self {
        assert!(is_prime(p), "modulus {p} is not prime");
        Field { p }
    }

    pub fn p(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(self, mut a: u32, mut e: u64) -> u32 {
        let mut r = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// Multiplicative inverse; `a` must be nonzero.
    pub fn inv(self, a: u32) -> u32 {
        debug_assert!(a != 0, "inverse of zero");
        self.pow(a, self.p as u64 - 2)
    }

    /// Reduces an arbitrary signed integer into the field.
    pub fn from_i64(self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    /// Symmetric representative in `(-p/2, p/2]`, used for printing.
    pub fn to_signed(self, a: u32) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Row-major dense matrix of field elements.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat{}x{}", self.rows, self.cols)?;
        let mut l = f.debug_list();
        for r in 0..self.rows {
            l.entry(&self.row(r));
        }
        l.finish()
    }
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<u32>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count mismatch");
        Mat { rows, cols, data }
    }

    /// Builds a matrix from rows; `cols` fixes the width when `rows` is empty.
    pub fn from_rows(rows: &[Vec<u32>], cols: usize) -> Self {
        let mut m = Mat::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged rows");
            m.row_mut(i).copy_from_slice(r);
        }
        m
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(cols: &[Vec<u32>], rows: usize) -> Self {
        let mut m = Mat::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "ragged columns");
            for (i, &x) in c.iter().enumerate() {
                m.data[i * m.cols + j] = x;
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [u32] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        t
    }

    pub fn mul(&self, other: &Mat, f: Field) -> Mat {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let p = f.p() as u64;
        let mut out = Mat::zeros(self.rows, other.cols);
        let mut acc = vec![0u64; other.cols];
        for i in 0..self.rows {
            acc.iter_mut().for_each(|x| *x = 0);
            let mut pending = 0u32;
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                let orow = other.row(k);
                for (x, &b) in acc.iter_mut().zip(orow) {
                    *x += a * b as u64;
                }
                pending += 1;
                // p < 2^32 so each term is < 2^64 / 2^32; fold before overflow.
                if pending == 1 << 20 || p > (1 << 16) {
                    acc.iter_mut().for_each(|x| *x %= p);
                    pending = 0;
                }
            }
            for (o, x) in out.row_mut(i).iter_mut().zip(&acc) {
                *o = (x % p) as u32;
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u32], f: Field) -> Vec<u32> {
        assert_eq!(self.cols, v.len(), "shape mismatch in matrix-vector product");
        (0..self.rows).map(|r| dot(self.row(r), v, f)).collect()
    }

    pub fn add(&self, other: &Mat, f: Field) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Mat, f: Field) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f.sub(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, c: u32, f: Field) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &Mat, c: u32, f: Field) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        if c == 0 {
            return;
        }
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a = f.add(*a, f.mul(b, c));
        }
    }

    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows);
        let mut m = Mat::zeros(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            m.row_mut(r)[..self.cols].copy_from_slice(self.row(r));
            m.row_mut(r)[self.cols..].copy_from_slice(other.row(r));
        }
        m
    }

    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Mat {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn put_block(&mut self, r0: usize, c0: usize, block: &Mat) {
        for r in 0..block.rows {
            let dst = (r0 + r) * self.cols + c0;
            self.data[dst..dst + block.cols].copy_from_slice(block.row(r));
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Mat {
        let mut m = Mat::zeros(rows, cols);
        for r in 0..rows {
            let src = (r0 + r) * self.cols + c0;
            m.row_mut(r).copy_from_slice(&self.data[src..src + cols]);
        }
        m
    }

    /// Keeps the listed columns, in order.
    pub fn select_cols(&self, cols: &[usize]) -> Mat {
        let mut m = Mat::zeros(self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                m.data[r * cols.len() + j] = self.get(r, c);
            }
        }
        m
    }

    pub fn trace(&self, f: Field) -> u32 {
        assert_eq!(self.rows, self.cols);
        (0..self.rows).fold(0, |t, i| f.add(t, self.get(i, i)))
    }

    pub fn rank(&self, f: Field) -> usize {
        rref(self, f).rank
    }

    pub fn pow(&self, mut e: u64, f: Field) -> Mat {
        assert_eq!(self.rows, self.cols);
        let mut base = self.clone();
        let mut acc = Mat::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, f);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, f);
            }
        }
        acc
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self, f: Field) -> Option<Mat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let aug = self.hstack(&Mat::identity(n));
        let r = rref(&aug, f);
        if r.rank < n || r.pivots[..n].iter().enumerate().any(|(i, &c)| c != i) {
            return None;
        }
        Some(r.reduced.block(0, n, n, n))
    }
}

#[inline]
pub fn dot(a: &[u32], b: &[u32], f: Field) -> u32 {
    let p = f.p() as u64;
    let mut acc = 0u64;
    for (&x, &y) in a.iter().zip(b) {
        acc = (acc + x as u64 * y as u64) % p;
    }
    acc as u32
}

/// `dst += c * src` entrywise.
#[inline]
pub fn axpy(dst: &mut [u32], c: u32, src: &[u32], f: Field) {
    if c == 0 {
        return;
    }
    let p = f.p() as u64;
    for (d, &s) in dst.iter_mut().zip(src) {
        *d = ((*d as u64 + c as u64 * s as u64) % p) as u32;
    }
}

/// Reduced row echelon form together with rank and pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub reduced: Mat,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

pub fn rref(m: &Mat, f: Field) -> Rref {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| a.get(i, c) != 0) else {
            continue;
        };
        if pr != r {
            for k in 0..cols {
                a.data.swap(pr * cols + k, r * cols + k);
            }
        }
        let inv = f.inv(a.get(r, c));
        for x in a.row_mut(r) {
            *x = f.mul(*x, inv);
        }
        let pivot_row = a.row(r).to_vec();
        for i in 0..rows {
            if i == r {
                continue;
            }
            let factor = a.get(i, c);
            if factor != 0 {
                axpy(a.row_mut(i), f.neg(factor), &pivot_row, f);
            }
        }
        pivots.push(c);
        r += 1;
    }
    let rank = pivots.len();
    let reduced = Mat::from_vec(rank, cols, a.data[..rank * cols].to_vec());
    let mut full = Mat::zeros(rows, cols);
    full.put_block(0, 0, &reduced);
    Rref {
        reduced: full,
        rank,
        pivots,
    }
}

/// Basis of the right null space `{v : m v = 0}`, one vector per row.
pub fn kernel_basis(m: &Mat, f: Field) -> Mat {
    let r = rref(m, f);
    let cols = m.cols;
    let free: Vec<usize> = (0..cols).filter(|c| !r.pivots.contains(c)).collect();
    let mut out = Mat::zeros(free.len(), cols);
    for (k, &fc) in free.iter().enumerate() {
        out.set(k, fc, 1);
        for (i, &pc) in r.pivots.iter().enumerate() {
            out.set(k, pc, f.neg(r.reduced.get(i, fc)));
        }
    }
    out
}

/// Some `x` with `m x = b`, or `None` when the system is inconsistent.
pub fn solve(m: &Mat, b: &[u32], f: Field) -> Option<Vec<u32>> {
    assert_eq!(b.len(), m.rows, "right-hand side length mismatch");
    let aug = m.hstack(&Mat::from_cols(&[b.to_vec()], m.rows));
    let r = rref(&aug, f);
    if r.pivots.last() == Some(&m.cols) {
        return None;
    }
    let mut x = vec![0; m.cols];
    for (i, &pc) in r.pivots.iter().enumerate() {
        x[pc] = r.reduced.get(i, m.cols);
    }
    Some(x)
}

/// Solves `m X = B` column by column; `None` if any column is inconsistent.
pub fn solve_many(m: &Mat, b: &Mat, f: Field) -> Option<Mat> {
    assert_eq!(b.rows, m.rows);
    let aug = m.hstack(b);
    let r = rref(&aug, f);
    if r.pivots.iter().any(|&c| c >= m.cols) {
        return None;
    }
    let mut x = Mat::zeros(m.cols, b.cols);
    for (i, &pc) in r.pivots.iter().enumerate() {
        for j in 0..b.cols {
            x.set(pc, j, r.reduced.get(i, m.cols + j));
        }
    }
    Some(x)
}

/// A subspace of `F^ambient` stored as an RREF basis.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Subspace {
    ambient: usize,
    basis: Mat,
    pivots: Vec<usize>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in {})", self.dim(), self.ambient)
    }
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Mat::zeros(0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Mat::identity(ambient),
            pivots: (0..ambient).collect(),
        }
    }

    /// Row space of `m`.
    pub fn from_rows(m: &Mat, f: Field) -> Self {
        let r = rref(m, f);
        Subspace {
            ambient: m.cols,
            basis: r.reduced.block(0, 0, r.rank, m.cols),
            pivots: r.pivots,
        }
    }

    pub fn span(vectors: &[Vec<u32>], ambient: usize, f: Field) -> Self {
        Subspace::from_rows(&Mat::from_rows(vectors, ambient), f)
    }

    /// Column space of `m`.
    pub fn column_space(m: &Mat, f: Field) -> Self {
        Subspace::from_rows(&m.transpose(), f)
    }

    pub fn kernel_of(m: &Mat, f: Field) -> Self {
        let k = kernel_basis(m, f);
        Subspace::from_rows(&k, f)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }

    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn vectors(&self) -> Vec<Vec<u32>> {
        self.basis.row_vecs()
    }

    /// Coordinates not used as pivots: the standard complement.
    pub fn non_pivots(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient).filter(|&c| !is_pivot[c]).collect()
    }

    /// Remainder of `v` after clearing every pivot coordinate.
    pub fn reduce(&self, v: &[u32], f: Field) -> Vec<u32> {
        let mut w = v.to_vec();
        for (i, &pc) in self.pivots.iter().enumerate() {
            let c = w[pc];
            if c != 0 {
                axpy(&mut w, f.neg(c), self.basis.row(i), f);
            }
        }
        w
    }

    pub fn contains(&self, v: &[u32], f: Field) -> bool {
        self.reduce(v, f).iter().all(|&x| x == 0)
    }

    /// Coordinates of `v` in the RREF basis, if `v` lies in the subspace.
    pub fn coords(&self, v: &[u32], f: Field) -> Option<Vec<u32>> {
        if !self.contains(v, f) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p]).collect())
    }

    /// Coordinates without the membership check; valid only for members.
    pub fn coords_unchecked(&self, v: &[u32]) -> Vec<u32> {
        self.pivots.iter().map(|&p| v[p]).collect()
    }

    pub fn is_subspace_of(&self, other: &Subspace, f: Field) -> bool {
        (0..self.dim()).all(|i| other.contains(self.basis.row(i), f))
    }

    pub fn sum(&self, other: &Subspace, f: Field) -> Subspace {
        Subspace::from_rows(&self.basis.vstack(&other.basis), f)
    }

    pub fn intersection(&self, other: &Subspace, f: Field) -> Subspace {
        // Solve a·B1 = b·B2 through the kernel of [B1; -B2]^T.
        let n1 = self.dim();
        let stacked = self.basis.vstack(&other.basis.scale(f.neg(1), f));
        let k = kernel_basis(&stacked.transpose(), f);
        let vecs: Vec<Vec<u32>> = (0..k.rows())
            .map(|r| {
                let coeffs = &k.row(r)[..n1];
                let mut v = vec![0; self.ambient];
                for (i, &c) in coeffs.iter().enumerate() {
                    axpy(&mut v, c, self.basis.row(i), f);
                }
                v
            })
            .collect();
        Subspace::span(&vecs, self.ambient, f)
    }
}

/// Incrementally grown echelon basis; cheaper than repeated RREF when
/// vectors arrive one at a time.
#[derive(Clone, Debug)]
pub struct EchelonBuilder {
    ambient: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl EchelonBuilder {
    pub fn new(ambient: usize) -> Self {
        EchelonBuilder {
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[u32], f: Field) -> Vec<u32> {
        let mut w = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = w[pc];
            if c != 0 {
                axpy(&mut w, f.neg(c), row, f);
            }
        }
        w
    }

    pub fn contains(&self, v: &[u32], f: Field) -> bool {
        self.reduce(v, f).iter().all(|&x| x == 0)
    }

    /// Adds `v`; returns `true` when it enlarged the span.
    pub fn insert(&mut self, v: &[u32], f: Field) -> bool {
        let w = self.reduce(v, f);
        let Some(pc) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(w[pc]);
        let w: Vec<u32> = w.iter().map(|&x| f.mul(x, inv)).collect();
        self.rows.push(w);
        self.pivots.push(pc);
        true
    }

    pub fn finish(self, f: Field) -> Subspace {
        Subspace::span(&self.rows, self.ambient, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32) -> Field {
        Field::new(p)
    }

    #[test]
    fn rref_identity_gf2() {
        let f = gf(2);
        let r = rref(&Mat::identity(2), f);
        assert_eq!(r.rank, 2);
        assert_eq!(r.pivots, vec![0, 1]);
        assert_eq!(r.reduced, Mat::identity(2));
    }

    #[test]
    fn rref_rank_deficient_gf2() {
        let f = gf(2);
        let r = rref(&Mat::from_rows(&[vec![1, 1], vec![1, 1]], 2), f);
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivots, vec![0]);
    }

    #[test]
    fn rref_gf101_hand_reduction() {
        // [[2,4],[1,2]]: row 1 is twice row 2, so one pivot; normalised row (1,2).
        let f = gf(101);
        let r = rref(&Mat::from_rows(&[vec![2, 4], vec![1, 2]], 2), f);
        assert_eq!(r.rank, 1);
        assert_eq!(r.reduced.row(0), &[1, 2]);
    }

    #[test]
    fn kernel_examples() {
        let f = gf(2);
        assert_eq!(kernel_basis(&Mat::identity(3), f).rows(), 0);
        assert_eq!(kernel_basis(&Mat::zeros(2, 3), f).rows(), 3);
        let k = kernel_basis(&Mat::from_rows(&[vec![1, 1]], 2), f);
        assert_eq!(k.row_vecs(), vec![vec![1, 1]]);
    }

    #[test]
    fn solve_examples() {
        let f = gf(2);
        assert_eq!(solve(&Mat::identity(2), &[1, 0], f), Some(vec![1, 0]));
        assert_eq!(solve(&Mat::zeros(2, 2), &[1, 0], f), None);
        let m = Mat::from_rows(&[vec![1, 1], vec![0, 0]], 2);
        let x = solve(&m, &[1, 0], f).unwrap();
        assert!(x == vec![1, 0] || x == vec![0, 1]);
    }

    #[test]
    fn inverse_roundtrip() {
        let f = gf(7);
        let m = Mat::from_rows(&[vec![2, 3], vec![1, 4]], 2);
        let inv = m.inverse(f).unwrap();
        assert_eq!(m.mul(&inv, f), Mat::identity(2));
        assert!(Mat::from_rows(&[vec![1, 2], vec![2, 4]], 2).inverse(f).is_none());
    }

    #[test]
    fn subspace_ops() {
        let f = gf(5);
        let a = Subspace::span(&[vec![1, 0, 0], vec![0, 1, 0]], 3, f);
        let b = Subspace::span(&[vec![0, 1, 0], vec![0, 0, 1]], 3, f);
        assert_eq!(a.intersection(&b, f).dim(), 1);
        assert_eq!(a.sum(&b, f).dim(), 3);
        assert!(a.contains(&[3, 4, 0], f));
        assert_eq!(a.coords(&[3, 4, 0], f), Some(vec![3, 4]));
        assert_eq!(a.non_pivots(), vec![2]);
    }

    use proptest::prelude::*;

    fn small_matrix() -> impl Strategy<Value = (usize, usize, Vec<u32>)> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
            (Just(r), Just(c), proptest::collection::vec(0u32..7, r * c))
        })
    }

    proptest! {
        #[test]
        fn rref_idempotent_and_rank_nullity((r, c, d) in small_matrix()) {
            let f = gf(7);
            let m = Mat::from_vec(r, c, d);
            let once = rref(&m, f);
            let twice = rref(&once.reduced, f);
            prop_assert_eq!(&once.reduced, &twice.reduced);
            let k = kernel_basis(&m, f);
            prop_assert_eq!(once.rank + k.rows(), c);
            for i in 0..k.rows() {
                prop_assert!(m.mul_vec(k.row(i), f).iter().all(|&x| x == 0));
            }
        }

        #[test]
        fn solve_is_exact((r, c, d) in small_matrix(), seed in proptest::collection::vec(0u32..7, 6)) {
            let f = gf(7);
            let m = Mat::from_vec(r, c, d);
            let x0: Vec<u32> = seed[..c].to_vec();
            let b = m.mul_vec(&x0, f);
            let x = solve(&m, &b, f).expect("consistent by construction");
            prop_assert_eq!(m.mul_vec(&x, f), b);
        }
    }
}
