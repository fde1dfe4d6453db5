//! Gaussian elimination over a base field.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;

/// Reduced row echelon form together with the pivot columns.
pub struct Echelon<E> {
    pub matrix: Matrix<E>,
    pub pivots: Vec<usize>,
}

pub fn rref<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Echelon<F::Elem> {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !field.is_zero(a.get(i, c))) else {
            continue;
        };
        a.swap_rows(r, pr);
        let inv = field.inv(a.get(r, c)).expect("non-zero pivot");
        for j in c..cols {
            let v = field.mul(a.get(r, j), &inv);
            a.set(r, j, v);
        }
        for i in 0..rows {
            if i != r && !field.is_zero(a.get(i, c)) {
                let factor = a.get(i, c).clone();
                for j in c..cols {
                    let v = field.sub(a.get(i, j), &field.mul(&factor, a.get(r, j)));
                    a.set(i, j, v);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    Echelon { matrix: a, pivots }
}

pub fn rank<F: Field>(field: &F, m: &Matrix<F::Elem>) -> usize {
    rref(field, m).pivots.len()
}

/// Basis of the right kernel `{x : m x = 0}`, one vector per free column in increasing order.
///
/// Basis vector `j` has a 1 in its free column and 0 in every other free column.
pub fn nullspace<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    let ech = rref(field, m);
    let cols = m.cols();
    let free: Vec<usize> = (0..cols).filter(|c| !ech.pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![field.zero(); cols];
            v[f] = field.one();
            for (row, &pc) in ech.pivots.iter().enumerate() {
                v[pc] = field.neg(ech.matrix.get(row, f));
            }
            v
        })
        .collect()
}

/// Free columns of the kernel basis returned by [`nullspace`].
pub fn free_columns<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Vec<usize> {
    let ech = rref(field, m);
    (0..m.cols()).filter(|c| !ech.pivots.contains(c)).collect()
}

/// Affine solution set of `m x = rhs`: a particular solution and a kernel basis.
pub fn solve_affine<F: Field>(
    field: &F,
    m: &Matrix<F::Elem>,
    rhs: &[F::Elem],
) -> Option<(Vec<F::Elem>, Vec<Vec<F::Elem>>)> {
    assert_eq!(rhs.len(), m.rows());
    let cols = m.cols();
    let aug = Matrix::from_fn(m.rows(), cols + 1, |i, j| {
        if j < cols {
            m.get(i, j).clone()
        } else {
            rhs[i].clone()
        }
    });
    let ech = rref(field, &aug);
    if ech.pivots.contains(&cols) {
        return None;
    }
    let mut particular = vec![field.zero(); cols];
    for (row, &pc) in ech.pivots.iter().enumerate() {
        particular[pc] = ech.matrix.get(row, cols).clone();
    }
    let free: Vec<usize> = (0..cols).filter(|c| !ech.pivots.contains(c)).collect();
    let kernel = free
        .iter()
        .map(|&f| {
            let mut v = vec![field.zero(); cols];
            v[f] = field.one();
            for (row, &pc) in ech.pivots.iter().enumerate() {
                v[pc] = field.neg(ech.matrix.get(row, f));
            }
            v
        })
        .collect();
    Some((particular, kernel))
}

pub fn inverse<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Result<Option<Matrix<F::Elem>>> {
    if m.rows() != m.cols() {
        return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    let n = m.rows();
    let aug = Matrix::from_fn(n, 2 * n, |i, j| {
        if j < n {
            m.get(i, j).clone()
        } else if j - n == i {
            field.one()
        } else {
            field.zero()
        }
    });
    let ech = rref(field, &aug);
    if n > 0 && (ech.pivots.len() < n || ech.pivots[n - 1] != n - 1) {
        return Ok(None);
    }
    Ok(Some(Matrix::from_fn(n, n, |i, j| ech.matrix.get(i, n + j).clone())))
}

pub fn mat_vec<F: Field>(field: &F, m: &Matrix<F::Elem>, v: &[F::Elem]) -> Vec<F::Elem> {
    (0..m.rows())
        .map(|i| {
            (0..m.cols()).fold(field.zero(), |acc, j| field.add(&acc, &field.mul(m.get(i, j), &v[j])))
        })
        .collect()
}

pub fn mat_mul<F: Field>(field: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    assert_eq!(a.cols(), b.rows());
    Matrix::from_fn(a.rows(), b.cols(), |i, j| {
        (0..a.cols()).fold(field.zero(), |acc, k| field.add(&acc, &field.mul(a.get(i, k), b.get(k, j))))
    })
}
