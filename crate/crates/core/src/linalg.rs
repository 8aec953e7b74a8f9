//! Dense exact linear algebra over prime fields.
//!
//! Vectors are rows and act on the left: a matrix `m` is the linear map
//! `x ↦ x·m`, so the product `f·g` is "first `f`, then `g`".

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};

/// Largest supported characteristic. Keeps every product of two residues
/// plus one residue inside a `u32`.
pub const MAX_PRIME: u32 = 65_521;

/// Primality by trial division; characteristics are small.
pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Checks that `p` is a supported prime characteristic.
pub fn check_prime(p: u32) -> Result<()> {
    if !is_prime(p) || p > MAX_PRIME {
        return Err(Error::invalid(format!(
            "characteristic {p} must be a prime no larger than {MAX_PRIME}"
        )));
    }
    Ok(())
}

/// Reduces an arbitrary integer into `0..p`.
pub fn reduce(x: i64, p: u32) -> u32 {
    x.rem_euclid(p as i64) as u32
}

#[inline]
fn add(a: u32, b: u32, p: u32) -> u32 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
fn mul(a: u32, b: u32, p: u32) -> u32 {
    a * b % p
}

/// Multiplicative inverse of a nonzero residue.
pub fn inv(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p), "inverse of zero");
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (p as i64, a as i64);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    reduce(t, p)
}

/// `row[i] += f * other[i]` for every `i`.
#[inline]
fn axpy(row: &mut [u32], f: u32, other: &[u32], p: u32) {
    if f == 0 {
        return;
    }
    for (x, &y) in row.iter_mut().zip(other) {
        if y != 0 {
            *x = (*x + f * y) % p;
        }
    }
}

/// Dense matrix over `F_p`, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl serde::Serialize for Matrix {
    /// Serializes as nested arrays of residues.
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.rows))?;
        for i in 0..self.rows {
            seq.serialize_element(self.row(i))?;
        }
        seq.end()
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix[F_{}; {}x{}]", self.p, self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "\n  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Matrix {
        Matrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u32, n: usize) -> Matrix {
        let mut m = Matrix::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % p;
        }
        m
    }

    /// Builds a matrix from integer rows, reducing every entry mod `p`.
    pub fn from_rows<R: AsRef<[i64]>>(p: u32, cols: usize, rows: &[R]) -> Matrix {
        let mut m = Matrix::zeros(p, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "ragged row {i}");
            for (j, &x) in r.iter().enumerate() {
                m.data[i * cols + j] = reduce(x, p);
            }
        }
        m
    }

    /// Builds a matrix from already reduced row vectors.
    pub fn from_vecs(p: u32, cols: usize, rows: &[Vec<u32>]) -> Matrix {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            data.extend_from_slice(r);
        }
        Matrix {
            p,
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn from_fn(p: u32, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> u32) -> Matrix {
        let mut m = Matrix::zeros(p, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.data[i * cols + j] = f(i, j) % p;
            }
        }
        m
    }

    /// A single row vector.
    pub fn row_vector(p: u32, v: Vec<u32>) -> Matrix {
        Matrix {
            p,
            rows: 1,
            cols: v.len(),
            data: v,
        }
    }

    pub fn random<G: Rng + ?Sized>(p: u32, rows: usize, cols: usize, rng: &mut G) -> Matrix {
        let data = (0..rows * cols).map(|_| rng.random_range(0..p)).collect();
        Matrix { p, rows, cols, data }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v % self.p;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [u32] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    /// Rows as owned vectors.
    pub fn to_vecs(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.p, self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in add");
        let p = self.p;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| add(a, b, p)).collect();
        Matrix { p, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Matrix {
        let p = self.p;
        let data = self.data.iter().map(|&a| if a == 0 { 0 } else { p - a }).collect();
        Matrix { p, rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: u32) -> Matrix {
        let p = self.p;
        let c = c % p;
        let data = self.data.iter().map(|&a| mul(a, c, p)).collect();
        Matrix { p, rows: self.rows, cols: self.cols, data }
    }

    /// Adds `c * other` in place.
    pub fn add_scaled(&mut self, c: u32, other: &Matrix) {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in add_scaled");
        axpy(&mut self.data, c % self.p, &other.data, self.p);
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in mul: {:?} * {:?}", self.shape(), other.shape());
        let p = self.p;
        let n = other.cols;
        let mut out = vec![0u64; self.rows * n];
        for i in 0..self.rows {
            let acc = &mut out[i * n..(i + 1) * n];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == 0 {
                    continue;
                }
                let brow = &other.data[k * n..(k + 1) * n];
                for (x, &b) in acc.iter_mut().zip(brow) {
                    *x += (a * b) as u64;
                }
            }
        }
        let data = out.into_iter().map(|x| (x % p as u64) as u32).collect();
        Matrix { p, rows: self.rows, cols: n, data }
    }

    /// Row vector times matrix.
    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.rows);
        let p = self.p;
        let mut acc = vec![0u64; self.cols];
        for (k, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (x, &b) in acc.iter_mut().zip(self.row(k)) {
                *x += (a * b) as u64;
            }
        }
        acc.into_iter().map(|x| (x % p as u64) as u32).collect()
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        Matrix::from_fn(self.p, self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j)
            } else {
                other.get(i, j - self.cols)
            }
        })
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix { p: self.p, rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Block diagonal matrix with the given blocks.
    pub fn block_diag(p: u32, blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Matrix::zeros(p, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            m.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    /// Overwrites the block starting at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Matrix) {
        for i in 0..b.rows {
            let dst = (r0 + i) * self.cols + c0;
            self.data[dst..dst + b.cols].copy_from_slice(b.row(i));
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        Matrix::from_fn(self.p, rows, cols, |i, j| self.get(r0 + i, c0 + j))
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        Matrix { p: self.p, rows: idx.len(), cols: self.cols, data }
    }

    pub fn select_cols(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(self.p, self.rows, idx.len(), |i, j| self.get(i, idx[j]))
    }

    /// Kronecker product: `(x ⊗ y)·(a ⊗ b) = x·a ⊗ y·b` with
    /// `x ⊗ y` indexed as `i * dim(y) + j`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let p = self.p;
        let (r2, c2) = other.shape();
        let mut m = Matrix::zeros(p, self.rows * r2, self.cols * c2);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for k in 0..r2 {
                    for l in 0..c2 {
                        m.data[(i * r2 + k) * m.cols + j * c2 + l] = mul(a, other.get(k, l), p);
                    }
                }
            }
        }
        m
    }

    /// Flattens row-major into a single row vector.
    pub fn flatten(&self) -> Vec<u32> {
        self.data.clone()
    }

    /// Inverse of [`Matrix::flatten`].
    pub fn unflatten(p: u32, rows: usize, cols: usize, v: &[u32]) -> Matrix {
        assert_eq!(v.len(), rows * cols);
        Matrix { p, rows, cols, data: v.to_vec() }
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        echelon(&mut m, self.cols).len()
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = self.hstack(&Matrix::identity(self.p, n));
        let piv = echelon(&mut aug, n);
        if piv.len() < n {
            return None;
        }
        Some(aug.block(0, n, n, n))
    }

    /// Basis of the row space in reduced echelon form.
    pub fn row_basis(&self) -> Matrix {
        let (r, piv) = rref(self);
        r.select_rows(&(0..piv.len()).collect::<Vec<_>>())
    }
}

/// Reduces `m` in place to reduced row echelon form, choosing pivots only
/// among the first `limit` columns. Returns the pivot columns.
fn echelon(m: &mut Matrix, limit: usize) -> Vec<usize> {
    let p = m.p;
    let (rows, cols) = m.shape();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..limit.min(cols) {
        if r == rows {
            break;
        }
        let Some(k) = (r..rows).find(|&k| m.data[k * cols + c] != 0) else {
            continue;
        };
        if k != r {
            for j in 0..cols {
                m.data.swap(k * cols + j, r * cols + j);
            }
        }
        let iv = inv(m.data[r * cols + c], p);
        for x in m.row_mut(r) {
            *x = mul(*x, iv, p);
        }
        let pivot_row = m.row(r).to_vec();
        for k in 0..rows {
            if k == r {
                continue;
            }
            let f = m.data[k * cols + c];
            if f != 0 {
                axpy(m.row_mut(k), p - f, &pivot_row, p);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Reduced row echelon form and the pivot columns; the row space is preserved.
pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    let mut r = m.clone();
    let piv = echelon(&mut r, m.cols);
    (r, piv)
}

/// Basis of the left kernel `{ v : v·m = 0 }`, in reduced echelon form.
pub fn kernel_basis(m: &Matrix) -> Matrix {
    let (rows, cols) = m.shape();
    let mut aug = m.hstack(&Matrix::identity(m.p, rows));
    let rank = echelon(&mut aug, cols).len();
    let k = aug.block(rank, cols, rows - rank, rows);
    k.row_basis()
}

/// Precomputed elimination for repeated solves of `x·a = b`.
#[derive(Clone, Debug)]
pub struct Solver {
    p: u32,
    a_rows: usize,
    /// Echelon rows of `a`.
    reduced: Matrix,
    /// `transform·a = reduced`.
    transform: Matrix,
    pivots: Vec<usize>,
}

impl Solver {
    pub fn new(a: &Matrix) -> Solver {
        let (rows, cols) = a.shape();
        let mut aug = a.hstack(&Matrix::identity(a.p, rows));
        let pivots = echelon(&mut aug, cols);
        let rank = pivots.len();
        Solver {
            p: a.p,
            a_rows: rows,
            reduced: aug.block(0, 0, rank, cols),
            transform: aug.block(0, cols, rank, rows),
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Some `x` with `x·a = b` for a single row `b`.
    pub fn solve_row(&self, b: &[u32]) -> Option<Vec<u32>> {
        assert_eq!(b.len(), self.reduced.cols, "right-hand side has the wrong length");
        let p = self.p;
        let mut residual = b.to_vec();
        let mut x = vec![0u32; self.a_rows];
        for (k, &c) in self.pivots.iter().enumerate() {
            let f = residual[c];
            if f == 0 {
                continue;
            }
            axpy(&mut residual, p - f, self.reduced.row(k), p);
            axpy(&mut x, f, self.transform.row(k), p);
        }
        residual.iter().all(|&r| r == 0).then_some(x)
    }

    /// Whether `b` lies in the row space of `a`.
    pub fn contains(&self, b: &[u32]) -> bool {
        let p = self.p;
        let mut residual = b.to_vec();
        for (k, &c) in self.pivots.iter().enumerate() {
            let f = residual[c];
            if f != 0 {
                axpy(&mut residual, p - f, self.reduced.row(k), p);
            }
        }
        residual.iter().all(|&r| r == 0)
    }

    pub fn solve(&self, b: &Matrix) -> Option<Matrix> {
        let mut out = Vec::with_capacity(b.rows);
        for i in 0..b.rows {
            out.push(self.solve_row(b.row(i))?);
        }
        Some(Matrix::from_vecs(self.p, self.a_rows, &out))
    }
}

/// Some `x` with `x·a = b`, or `None` when the system is inconsistent.
pub fn solve(a: &Matrix, b: &Matrix) -> Result<Option<Matrix>> {
    if a.cols != b.cols || a.p != b.p {
        return Err(Error::DimensionMismatch(format!(
            "solve x·a = b with a {:?} and b {:?}",
            a.shape(),
            b.shape()
        )));
    }
    Ok(Solver::new(a).solve(b))
}

/// Coordinates with respect to a fixed linearly independent family of rows.
#[derive(Clone, Debug)]
pub struct Coordinates {
    basis: Matrix,
    solver: Solver,
}

impl Coordinates {
    /// `basis` must have independent rows.
    pub fn new(basis: Matrix) -> Coordinates {
        let solver = Solver::new(&basis);
        assert_eq!(solver.rank(), basis.rows(), "coordinate basis is not independent");
        Coordinates { basis, solver }
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn coords(&self, v: &[u32]) -> Option<Vec<u32>> {
        self.solver.solve_row(v)
    }

    /// Coordinates of every row of `m`; panics if some row leaves the span.
    pub fn coords_of(&self, m: &Matrix) -> Matrix {
        self.solver
            .solve(m)
            .expect("vector outside the span of the coordinate basis")
    }

    /// Coordinates of every row of `m`, if all rows lie in the span.
    pub fn try_coords_of(&self, m: &Matrix) -> Option<Matrix> {
        self.solver.solve(m)
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.solver.contains(v)
    }
}

/// Projection of `F_p^n` onto a complement of the row space of `subspace`,
/// together with a section. `projection` is `n × q`, `section` is `q × n`.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub projection: Matrix,
    pub section: Matrix,
}

impl Quotient {
    pub fn dim(&self) -> usize {
        self.projection.cols()
    }
}

/// Quotient of `F_p^ambient` by the row space of `subspace`.
pub fn quotient_basis(subspace: &Matrix, ambient: usize) -> Quotient {
    assert_eq!(subspace.cols(), ambient, "subspace lives in the wrong ambient space");
    let p = subspace.p;
    let (r, piv) = rref(subspace);
    let free: Vec<usize> = (0..ambient).filter(|c| !piv.contains(c)).collect();
    let mut projection = Matrix::zeros(p, ambient, free.len());
    for (j, &c) in free.iter().enumerate() {
        projection.set(c, j, 1);
    }
    for (k, &c) in piv.iter().enumerate() {
        for (j, &f) in free.iter().enumerate() {
            let x = r.get(k, f);
            if x != 0 {
                projection.set(c, j, p - x);
            }
        }
    }
    let mut section = Matrix::zeros(p, free.len(), ambient);
    for (j, &c) in free.iter().enumerate() {
        section.set(j, c, 1);
    }
    Quotient { projection, section }
}

/// Characteristic polynomial `det(x·I − m)`, coefficients from the constant
/// term up, via reduction to Hessenberg form.
pub fn charpoly(m: &Matrix) -> Vec<u32> {
    assert!(m.is_square(), "characteristic polynomial of a non-square matrix");
    let p = m.p;
    let n = m.rows;
    let mut h = m.clone();
    let at = |h: &Matrix, i: usize, j: usize| h.data[i * n + j];
    for j in 0..n.saturating_sub(2) {
        if at(&h, j + 1, j) == 0 {
            if let Some(i) = (j + 2..n).find(|&i| at(&h, i, j) != 0) {
                for c in 0..n {
                    h.data.swap(i * n + c, (j + 1) * n + c);
                }
                for r in 0..n {
                    h.data.swap(r * n + i, r * n + j + 1);
                }
            }
        }
        let piv = at(&h, j + 1, j);
        if piv == 0 {
            continue;
        }
        let ip = inv(piv, p);
        for i in j + 2..n {
            let u = mul(at(&h, i, j), ip, p);
            if u == 0 {
                continue;
            }
            for c in 0..n {
                let v = h.data[(j + 1) * n + c];
                h.data[i * n + c] = add(h.data[i * n + c], p - mul(u, v, p), p);
            }
            for r in 0..n {
                let v = h.data[r * n + i];
                h.data[r * n + j + 1] = add(h.data[r * n + j + 1], mul(u, v, p), p);
            }
        }
    }
    let mut polys: Vec<Vec<u32>> = vec![vec![1]];
    for k in 1..=n {
        let prev = &polys[k - 1];
        let mut next = vec![0u32; k + 1];
        let d = at(&h, k - 1, k - 1);
        for (i, &c) in prev.iter().enumerate() {
            next[i + 1] = add(next[i + 1], c, p);
            next[i] = add(next[i], p - mul(d, c, p), p);
        }
        let mut t = 1u32;
        for i in 1..k {
            t = mul(t, at(&h, k - i, k - i - 1), p);
            let f = mul(t, at(&h, k - i - 1, k - 1), p);
            if f == 0 {
                continue;
            }
            for (e, &c) in polys[k - i - 1].iter().enumerate() {
                next[e] = add(next[e], p - mul(f, c, p), p);
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

/// Roots of a polynomial in `F_p`, in increasing order.
pub fn roots(poly: &[u32], p: u32) -> Vec<u32> {
    if poly.iter().all(|&c| c == 0) {
        return (0..p).collect();
    }
    (0..p)
        .filter(|&x| poly.iter().rev().fold(0u32, |acc, &c| add(mul(acc, x, p), c, p)) == 0)
        .collect()
}

/// Eigenvalues of a square matrix that lie in `F_p`.
pub fn eigenvalues(m: &Matrix) -> Vec<u32> {
    roots(&charpoly(m), m.p)
}

impl Matrix {
    /// `self^e` by repeated squaring.
    pub fn pow(&self, mut e: u64) -> Matrix {
        assert!(self.is_square(), "power of a non-square matrix");
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.p, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn is_nilpotent(&self) -> bool {
        self.pow(self.rows as u64).is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverses_mod_p() {
        for p in [2, 3, 5, 7, 65_521] {
            for a in 1..p.min(200) {
                assert_eq!(mul(a, inv(a, p), p), 1);
            }
        }
    }

    #[test]
    fn identity_is_reduced() {
        let id = Matrix::identity(5, 3);
        let (r, piv) = rref(&id);
        assert_eq!(r, id);
        assert_eq!(piv, vec![0, 1, 2]);
    }

    #[test]
    fn zero_matrix_has_no_pivots() {
        let z = Matrix::zeros(5, 2, 4);
        let (r, piv) = rref(&z);
        assert_eq!(r, z);
        assert!(piv.is_empty());
    }

    #[test]
    fn kernel_of_identity_and_zero() {
        assert_eq!(kernel_basis(&Matrix::identity(5, 4)).rows(), 0);
        assert_eq!(kernel_basis(&Matrix::zeros(5, 3, 2)).rows(), 3);
    }

    #[test]
    fn solve_trivial_cases() {
        let b = Matrix::from_rows(5, 3, &[[1, 2, 3], [4, 0, 1]]);
        assert_eq!(solve(&Matrix::identity(5, 3), &b).unwrap(), Some(b.clone()));
        assert_eq!(solve(&Matrix::zeros(5, 3, 3), &b).unwrap(), None);
        assert!(solve(&Matrix::identity(5, 2), &b).is_err());
    }

    #[test]
    fn quotient_extremes() {
        let q = quotient_basis(&Matrix::identity(5, 4), 4);
        assert_eq!(q.dim(), 0);
        let q = quotient_basis(&Matrix::zeros(5, 0, 4), 4);
        assert_eq!(q.projection, Matrix::identity(5, 4));
    }

    #[test]
    fn inverse_round_trip() {
        let m = Matrix::from_rows(7, 2, &[[1, 2], [3, 4]]);
        let i = m.inverse().unwrap();
        assert_eq!(m.mul(&i), Matrix::identity(7, 2));
    }
}
