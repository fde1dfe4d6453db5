//! Dense matrices over an involutive ring.
//!
//! Entries are stored row-major. All ring-dependent operations take the ring
//! explicitly; the matrix itself is plain data.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg;
use crate::ring::InvolutiveRing;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }
    pub fn data(&self) -> &[T] {
        &self.data
    }
    pub fn into_data(self) -> Vec<T> {
        self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        assert!(r0 + rows <= self.rows && c0 + cols <= self.cols);
        Matrix::from_fn(rows, cols, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn map<U: Clone>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn try_map<U: Clone>(&self, f: impl FnMut(&T) -> Result<U>) -> Result<Matrix<U>> {
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<Result<_>>()?,
        })
    }

    /// Column vector.
    pub fn column_vector(v: Vec<T>) -> Self {
        Matrix { rows: v.len(), cols: 1, data: v }
    }
}

impl<T: Clone + PartialEq> Matrix<T> {
    pub fn zeros<R: InvolutiveRing<Elem = T>>(ring: &R, rows: usize, cols: usize) -> Self {
        let z = ring.zero();
        Matrix::from_fn(rows, cols, |_, _| z.clone())
    }

    pub fn identity<R: InvolutiveRing<Elem = T>>(ring: &R, n: usize) -> Self {
        let (z, o) = (ring.zero(), ring.one());
        Matrix::from_fn(n, n, |i, j| if i == j { o.clone() } else { z.clone() })
    }

    pub fn scalar_diag<R: InvolutiveRing<Elem = T>>(ring: &R, entries: &[T]) -> Self {
        let z = ring.zero();
        let n = entries.len();
        Matrix::from_fn(n, n, |i, j| if i == j { entries[i].clone() } else { z.clone() })
    }

    pub fn is_zero<R: InvolutiveRing<Elem = T>>(&self, ring: &R) -> bool {
        self.data.iter().all(|x| ring.is_zero(x))
    }

    pub fn mul<R: InvolutiveRing<Elem = T>>(&self, ring: &R, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Matrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = ring.zero();
            for k in 0..self.cols {
                acc = ring.add(&acc, &ring.mul(self.get(i, k), other.get(k, j)));
            }
            acc
        }))
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add<R: InvolutiveRing<Elem = T>>(&self, ring: &R, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| ring.add(a, b)).collect(),
        })
    }

    pub fn sub<R: InvolutiveRing<Elem = T>>(&self, ring: &R, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| ring.sub(a, b)).collect(),
        })
    }

    pub fn neg<R: InvolutiveRing<Elem = T>>(&self, ring: &R) -> Self {
        self.map(|a| ring.neg(a))
    }

    /// `a * self`, entrywise on the left.
    pub fn scale_left<R: InvolutiveRing<Elem = T>>(&self, ring: &R, a: &T) -> Self {
        self.map(|x| ring.mul(a, x))
    }

    /// `self * a`, entrywise on the right.
    pub fn scale_right<R: InvolutiveRing<Elem = T>>(&self, ring: &R, a: &T) -> Self {
        self.map(|x| ring.mul(x, a))
    }

    /// The involution applied entrywise to the transpose.
    pub fn conj_transpose<R: InvolutiveRing<Elem = T>>(&self, ring: &R) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| ring.conj(self.get(j, i)))
    }

    pub fn block_diag<R: InvolutiveRing<Elem = T>>(ring: &R, blocks: &[&Self]) -> Self {
        let rows: usize = blocks.iter().map(|b| b.rows).sum();
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(ring, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r0 + i, c0 + j, b.get(i, j).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Assembles a block matrix; every block row must share its row count and
    /// every block column its column count.
    pub fn from_blocks(grid: &[Vec<&Self>]) -> Result<Self> {
        let heights: Vec<usize> = grid.iter().map(|row| row[0].rows).collect();
        let widths: Vec<usize> = grid[0].iter().map(|b| b.cols).collect();
        for (bi, row) in grid.iter().enumerate() {
            if row.len() != widths.len() {
                return Err(Error::DimensionMismatch("ragged block grid".into()));
            }
            for (bj, b) in row.iter().enumerate() {
                if b.rows != heights[bi] || b.cols != widths[bj] {
                    return Err(Error::DimensionMismatch(format!(
                        "block ({bi},{bj}) is {}x{}, expected {}x{}",
                        b.rows, b.cols, heights[bi], widths[bj]
                    )));
                }
            }
        }
        let rows: usize = heights.iter().sum();
        let cols: usize = widths.iter().sum();
        let mut data = Vec::with_capacity(rows * cols);
        for (bi, row) in grid.iter().enumerate() {
            for i in 0..heights[bi] {
                for b in row {
                    for j in 0..b.cols {
                        data.push(b.get(i, j).clone());
                    }
                }
            }
        }
        Ok(Matrix { rows, cols, data })
    }

    /// The base-field matrix of `x -> self * x` on `A^cols`, with coordinates
    /// ordered (vector slot, algebra coordinate).
    pub fn regular_representation<R: InvolutiveRing<Elem = T>>(
        &self,
        ring: &R,
    ) -> Matrix<<R::Base as Field>::Elem> {
        let m = ring.dim();
        let base = ring.base();
        let basis: Vec<T> = (0..m)
            .map(|l| {
                let c: Vec<_> = (0..m).map(|k| if k == l { base.one() } else { base.zero() }).collect();
                ring.from_coords(&c)
            })
            .collect();
        let mut out = Matrix::from_fn(self.rows * m, self.cols * m, |_, _| base.zero());
        for i in 0..self.rows {
            for j in 0..self.cols {
                let x = self.get(i, j);
                if ring.is_zero(x) {
                    continue;
                }
                for (l, e) in basis.iter().enumerate() {
                    let c = ring.coords(&ring.mul(x, e));
                    for (k, v) in c.into_iter().enumerate() {
                        out.set(i * m + k, j * m + l, v);
                    }
                }
            }
        }
        out
    }

    /// Two-sided inverse, or `None` when the matrix is singular.
    pub fn try_inverse<R: InvolutiveRing<Elem = T>>(&self, ring: &R) -> Result<Option<Self>> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let m = ring.dim();
        let base = ring.base();
        let rr = self.regular_representation(ring);
        let Some(rr_inv) = linalg::inverse(base, &rr)? else {
            return Ok(None);
        };
        // the inverse of a right-linear map is left multiplication by its values on e_j
        let one = ring.coords(&ring.one());
        let mut y = Matrix::zeros(ring, n, n);
        for j in 0..n {
            let mut v = vec![base.zero(); n * m];
            v[j * m..(j + 1) * m].clone_from_slice(&one);
            let col = linalg::mat_vec(base, &rr_inv, &v);
            for i in 0..n {
                y.set(i, j, ring.from_coords(&col[i * m..(i + 1) * m]));
            }
        }
        let id = Matrix::identity(ring, n);
        if self.mul(ring, &y)? != id || y.mul(ring, self)? != id {
            return Ok(None);
        }
        Ok(Some(y))
    }

    pub fn inverse<R: InvolutiveRing<Elem = T>>(&self, ring: &R) -> Result<Self> {
        self.try_inverse(ring)?.ok_or(Error::NotInvertible)
    }

    pub fn is_invertible<R: InvolutiveRing<Elem = T>>(&self, ring: &R) -> bool {
        if !self.is_square() {
            return false;
        }
        let rr = self.regular_representation(ring);
        linalg::rank(ring.base(), &rr) == rr.rows()
    }
}
