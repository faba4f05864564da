//! Dense matrices with entries in `k[T₁..Tₙ]`.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{shape, Result};
use crate::matrix::Matrix;
use crate::poly::{Poly, PolyRing};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyMatrix {
    ring: PolyRing,
    rows: usize,
    cols: usize,
    data: Vec<Poly>,
}

impl PolyMatrix {
    pub fn zeros(ring: PolyRing, rows: usize, cols: usize) -> Self {
        PolyMatrix { ring, rows, cols, data: alloc::vec![Poly::zero(ring); rows * cols] }
    }

    pub fn identity(ring: PolyRing, n: usize) -> Self {
        let mut m = PolyMatrix::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, Poly::one(ring));
        }
        m
    }

    pub fn from_rows(ring: PolyRing, rows: usize, cols: usize, data: Vec<Poly>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(shape(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        for p in &data {
            ring.check_same(p.ring())?;
        }
        Ok(PolyMatrix { ring, rows, cols, data })
    }

    pub fn from_fn(ring: PolyRing, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Poly) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        PolyMatrix { ring, rows, cols, data }
    }

    /// Matrix from column vectors of length `rows`.
    pub fn from_columns(ring: PolyRing, rows: usize, cols: &[Vec<Poly>]) -> Self {
        PolyMatrix::from_fn(ring, rows, cols.len(), |i, j| cols[j][i].clone())
    }

    /// Constant matrix with the entries of a field matrix.
    pub fn from_scalar_matrix(ring: PolyRing, m: &Matrix) -> Self {
        PolyMatrix::from_fn(ring, m.rows(), m.cols(), |i, j| Poly::constant(ring, m.get(i, j).clone()))
    }

    /// Parses row-major canonical polynomial strings.
    pub fn parse(ring: PolyRing, rows: &[Vec<&str>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(shape("ragged rows"));
            }
            for s in row {
                data.push(Poly::parse(ring, s)?);
            }
        }
        Ok(PolyMatrix { ring, rows: r, cols: c, data })
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
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

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        self.data[i * self.cols + j] = p;
    }

    pub fn entries(&self) -> &[Poly] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<Poly> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Poly>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Poly::is_zero)
    }

    pub fn transpose(&self) -> PolyMatrix {
        PolyMatrix::from_fn(self.ring, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn try_mul(&self, rhs: &PolyMatrix) -> Result<PolyMatrix> {
        self.ring.check_same(&rhs.ring)?;
        if self.cols != rhs.rows {
            return Err(shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = PolyMatrix::zeros(self.ring, self.rows, rhs.cols);
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
                        out.data[idx] = out.data[idx].add(&a.mul(b));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul(&self, rhs: &PolyMatrix) -> PolyMatrix {
        self.try_mul(rhs).expect("compatible polynomial matrices")
    }

    pub fn try_add(&self, rhs: &PolyMatrix) -> Result<PolyMatrix> {
        self.ring.check_same(&rhs.ring)?;
        if self.shape() != rhs.shape() {
            return Err(shape(format!("{:?} vs {:?}", self.shape(), rhs.shape())));
        }
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a.add(b)).collect();
        Ok(PolyMatrix { ring: self.ring, rows: self.rows, cols: self.cols, data })
    }

    pub fn add(&self, rhs: &PolyMatrix) -> PolyMatrix {
        self.try_add(rhs).expect("compatible polynomial matrices")
    }

    pub fn sub(&self, rhs: &PolyMatrix) -> PolyMatrix {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> PolyMatrix {
        PolyMatrix { data: self.data.iter().map(Poly::neg).collect(), ..self.clone() }
    }

    pub fn apply(&self, v: &[Poly]) -> Vec<Poly> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols).fold(Poly::zero(self.ring), |acc, j| acc.add(&self.get(i, j).mul(&v[j])))
            })
            .collect()
    }

    pub fn set_block(&mut self, r: usize, c: usize, block: &PolyMatrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r + i, c + j, block.get(i, j).clone());
            }
        }
    }

    pub fn hstack(&self, rhs: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.rows, rhs.rows, "hstack needs equal row counts");
        PolyMatrix::from_fn(self.ring, self.rows, self.cols + rhs.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                rhs.get(i, j - self.cols).clone()
            }
        })
    }

    pub fn block_diag(&self, rhs: &PolyMatrix) -> PolyMatrix {
        let mut m = PolyMatrix::zeros(self.ring, self.rows + rhs.rows, self.cols + rhs.cols);
        m.set_block(0, 0, self);
        m.set_block(self.rows, self.cols, rhs);
        m
    }

    pub fn select_columns(&self, cols: &[usize]) -> PolyMatrix {
        PolyMatrix::from_fn(self.ring, self.rows, cols.len(), |i, j| self.get(i, cols[j]).clone())
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.data.iter().filter_map(Poly::total_degree).max()
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[dst] += f · row[src]`.
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, f: &Poly) {
        for j in 0..self.cols {
            let v = self.get(dst, j).add(&f.mul(self.get(src, j)));
            self.set(dst, j, v);
        }
    }

    /// `col[dst] += f · col[src]`.
    pub fn add_col_multiple(&mut self, dst: usize, src: usize, f: &Poly) {
        for i in 0..self.rows {
            let v = self.get(i, dst).add(&self.get(i, src).mul(f));
            self.set(i, dst, v);
        }
    }

    pub fn scale(&self, f: &Poly) -> PolyMatrix {
        PolyMatrix::from_fn(self.ring, self.rows, self.cols, |i, j| self.get(i, j).mul(f))
    }

    pub fn scale_row(&mut self, r: usize, f: &Poly) {
        for j in 0..self.cols {
            let v = self.get(r, j).mul(f);
            self.set(r, j, v);
        }
    }
}

impl fmt::Display for PolyMatrix {
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
