//! Dense matrices over a field and exact row reduction.
//!
//! Columns are images of domain basis vectors, so `g∘f` is the product `G·F`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{mixed, shape, Result};
use crate::field::{Field, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
}

/// Outcome of [`Matrix::rref_and_kernel`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankData {
    pub rank: usize,
    /// Columns form a basis of `{v : m·v = 0}`.
    pub kernel_basis: Matrix,
    /// Columns (pivot columns of the input) span the column space.
    pub image_basis: Matrix,
}

/// Outcome of [`Matrix::solve`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub particular: Option<Vec<Scalar>>,
    pub kernel_basis: Matrix,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    /// Row-major construction; every entry must belong to `field`.
    pub fn from_rows(field: Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(shape(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        if data.iter().any(|s| !field.contains(s)) {
            return Err(mixed(format!("entry outside {field}")));
        }
        Ok(Matrix { field, rows, cols, data })
    }

    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let data = rows.iter().flat_map(|row| row.iter().map(|&v| field.from_i64(v))).collect();
        Matrix { field, rows: r, cols: c, data }
    }

    pub fn from_fn(field: Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { field, rows, cols, data }
    }

    pub fn column_vector(field: Field, v: &[Scalar]) -> Self {
        Matrix { field, rows: v.len(), cols: 1, data: v.to_vec() }
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(field: Field, rows: usize, cols: &[Vec<Scalar>]) -> Self {
        Matrix::from_fn(field, rows, cols.len(), |i, j| cols[j][i].clone())
    }

    pub fn field(&self) -> Field {
        self.field
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

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn try_mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.field != rhs.field {
            return Err(mixed(format!("{} vs {}", self.field, rhs.field)));
        }
        if self.cols != rhs.rows {
            return Err(shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Matrix::zeros(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let idx = i * rhs.cols + j;
                        out.data[idx] = &out.data[idx] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Product; panics on shape or field mismatch.
    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        self.try_mul(rhs).expect("compatible matrices")
    }

    pub fn try_add(&self, rhs: &Matrix) -> Result<Matrix> {
        self.same_shape(rhs)?;
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect();
        Ok(Matrix { data, ..self.clone_shape() })
    }

    pub fn try_sub(&self, rhs: &Matrix) -> Result<Matrix> {
        self.same_shape(rhs)?;
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect();
        Ok(Matrix { data, ..self.clone_shape() })
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        self.try_add(rhs).expect("compatible matrices")
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        self.try_sub(rhs).expect("compatible matrices")
    }

    pub fn neg(&self) -> Matrix {
        Matrix { data: self.data.iter().map(|a| -a).collect(), ..self.clone_shape() }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix { data: self.data.iter().map(|a| a * c).collect(), ..self.clone_shape() }
    }

    pub fn pow(&self, e: u32) -> Matrix {
        let mut acc = Matrix::identity(self.field, self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    fn clone_shape(&self) -> Matrix {
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data: Vec::new() }
    }

    fn same_shape(&self, rhs: &Matrix) -> Result<()> {
        if self.field != rhs.field {
            return Err(mixed(format!("{} vs {}", self.field, rhs.field)));
        }
        if self.shape() != rhs.shape() {
            return Err(shape(format!("{:?} vs {:?}", self.shape(), rhs.shape())));
        }
        Ok(())
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(self.field.zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect()
    }

    /// Copies `block` into `self` with its top-left corner at `(r, c)`.
    pub fn set_block(&mut self, r: usize, c: usize, block: &Matrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r + i, c + j, block.get(i, j).clone());
            }
        }
    }

    pub fn submatrix(&self, rows: core::ops::Range<usize>, cols: core::ops::Range<usize>) -> Matrix {
        let (r0, c0) = (rows.start, cols.start);
        Matrix::from_fn(self.field, rows.len(), cols.len(), |i, j| self.get(r0 + i, c0 + j).clone())
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, self.rows, cols.len(), |i, j| self.get(i, cols[j]).clone())
    }

    pub fn hstack(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.rows, rhs.rows, "hstack needs equal row counts");
        Matrix::from_fn(self.field, self.rows, self.cols + rhs.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                rhs.get(i, j - self.cols).clone()
            }
        })
    }

    pub fn vstack(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.cols, "vstack needs equal column counts");
        Matrix::from_fn(self.field, self.rows + rhs.rows, self.cols, |i, j| {
            if i < self.rows {
                self.get(i, j).clone()
            } else {
                rhs.get(i - self.rows, j).clone()
            }
        })
    }

    pub fn block_diag(&self, rhs: &Matrix) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.rows + rhs.rows, self.cols + rhs.cols);
        m.set_block(0, 0, self);
        m.set_block(self.rows, self.cols, rhs);
        m
    }

    /// Kronecker product `self ⊗ rhs`.
    pub fn kron(&self, rhs: &Matrix) -> Matrix {
        Matrix::from_fn(self.field, self.rows * rhs.rows, self.cols * rhs.cols, |i, j| {
            self.get(i / rhs.rows, j / rhs.cols) * rhs.get(i % rhs.rows, j % rhs.cols)
        })
    }

    /// Gauss–Jordan elimination: columns scanned left to right, the first row
    /// at or below the current one with a nonzero entry becomes the pivot row.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = m.get(i, j) - &(&f * m.get(r, j));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { reduced: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Rank, a kernel basis (one vector per free column, in column order) and
    /// an image basis (the pivot columns of `self`).
    pub fn rref_and_kernel(&self) -> RankData {
        let Rref { reduced, pivots } = self.rref();
        let kernel_basis = kernel_from_rref(&reduced, &pivots);
        RankData { rank: pivots.len(), kernel_basis, image_basis: self.select_columns(&pivots) }
    }

    pub fn kernel(&self) -> Matrix {
        let Rref { reduced, pivots } = self.rref();
        kernel_from_rref(&reduced, &pivots)
    }

    /// One solution of `self·x = b` (free variables set to zero) plus a kernel basis.
    pub fn solve(&self, b: &[Scalar]) -> Result<Solution> {
        if b.len() != self.rows {
            return Err(shape(format!("right-hand side of length {} for {} rows", b.len(), self.rows)));
        }
        let aug = self.hstack(&Matrix::column_vector(self.field, b));
        let Rref { reduced, pivots } = aug.rref();
        let kernel_basis = kernel_from_rref(&reduced.submatrix(0..self.rows, 0..self.cols), &pivots_below(&pivots, self.cols));
        if pivots.last() == Some(&self.cols) {
            return Ok(Solution { particular: None, kernel_basis });
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = reduced.get(r, self.cols).clone();
        }
        Ok(Solution { particular: Some(x), kernel_basis })
    }

    /// Solves `self·X = rhs` column by column; `None` if some column is inconsistent.
    pub fn solve_matrix(&self, rhs: &Matrix) -> Result<Option<Matrix>> {
        let mut cols = Vec::with_capacity(rhs.cols);
        for j in 0..rhs.cols {
            match self.solve(&rhs.column(j))?.particular {
                Some(x) => cols.push(x),
                None => return Ok(None),
            }
        }
        Ok(Some(Matrix::from_columns(self.field, self.cols, &cols)))
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let Rref { reduced, pivots } = self.hstack(&Matrix::identity(self.field, n)).rref();
        if pivots.len() < n || (n > 0 && pivots[n - 1] != n - 1) {
            return None;
        }
        Some(reduced.submatrix(0..n, n..2 * n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }
}

fn pivots_below(pivots: &[usize], bound: usize) -> Vec<usize> {
    pivots.iter().copied().filter(|&c| c < bound).collect()
}

fn kernel_from_rref(reduced: &Matrix, pivots: &[usize]) -> Matrix {
    let cols = reduced.cols;
    let field = reduced.field;
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &f in &free {
        let mut v = vec![field.zero(); cols];
        v[f] = field.one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = -reduced.get(r, f);
        }
        basis.push(v);
    }
    Matrix::from_columns(field, cols, &basis)
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_has_full_rank() {
        let d = Matrix::identity(Field::Rationals, 3).rref_and_kernel();
        assert_eq!(d.rank, 3);
        assert_eq!(d.kernel_basis.cols(), 0);
    }

    #[test]
    fn zero_matrix_kernel_is_everything() {
        let d = Matrix::zeros(Field::Rationals, 2, 2).rref_and_kernel();
        assert_eq!(d.rank, 0);
        assert_eq!(d.kernel_basis, Matrix::identity(Field::Rationals, 2));
    }

    #[test]
    fn rank_one_kernel() {
        let q = Field::Rationals;
        let d = Matrix::from_i64(q, &[&[1, 2], &[2, 4]]).rref_and_kernel();
        assert_eq!(d.rank, 1);
        assert_eq!(d.kernel_basis, Matrix::from_i64(q, &[&[-2], &[1]]));
        assert_eq!(d.image_basis, Matrix::from_i64(q, &[&[1], &[2]]));
    }

    #[test]
    fn solve_identity_and_inconsistent() {
        let q = Field::Rationals;
        let b = [q.from_i64(4), q.from_i64(-1)];
        let s = Matrix::identity(q, 2).solve(&b).unwrap();
        assert_eq!(s.particular.as_deref(), Some(&b[..]));
        assert_eq!(s.kernel_basis.cols(), 0);
        let s = Matrix::zeros(q, 2, 2).solve(&b).unwrap();
        assert!(s.particular.is_none());
        assert!(Matrix::zeros(q, 2, 2).solve(&b[..1]).is_err());
    }

    #[test]
    fn solve_over_f5() {
        let f5 = Field::Prime(5);
        let a = Matrix::from_i64(f5, &[&[1, 1]]);
        let s = a.solve(&[f5.from_i64(3)]).unwrap();
        assert_eq!(s.particular, Some(vec![f5.from_i64(3), f5.from_i64(0)]));
        assert_eq!(s.kernel_basis, Matrix::from_i64(f5, &[&[4], &[1]]));
        // brute force: the solution set has exactly 5 elements
        let count = (0..5)
            .flat_map(|x| (0..5).map(move |y| (x, y)))
            .filter(|&(x, y)| (x + y) % 5 == 3)
            .count();
        assert_eq!(count, 5usize.pow(s.kernel_basis.cols() as u32));
    }

    #[test]
    fn empty_shapes() {
        let q = Field::Rationals;
        let m = Matrix::zeros(q, 0, 3);
        assert_eq!(m.rref_and_kernel().kernel_basis.cols(), 3);
        let m = Matrix::zeros(q, 3, 0);
        assert_eq!(m.rref_and_kernel().rank, 0);
        assert_eq!(Matrix::zeros(q, 2, 0).mul(&Matrix::zeros(q, 0, 4)), Matrix::zeros(q, 2, 4));
    }

    #[test]
    fn inverse_round_trip() {
        let q = Field::Rationals;
        let m = Matrix::from_i64(q, &[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(q, 2));
        assert!(Matrix::from_i64(q, &[&[1, 2], &[2, 4]]).inverse().is_none());
    }
}
