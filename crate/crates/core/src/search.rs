//! Exhaustive isometry search and orbit classification over coded algebras.

use crate::budget::Budget;
use crate::coded::{for_each_affine, CodedMatrix, FiniteAlgebra};
use crate::error::{Error, Result};
use crate::linalg;
use crate::matrix::Matrix;
use crate::ring::InvolutiveRing;

/// Finds `P` invertible with `P^* b_i P = a_i` for every `i`.
///
/// Columns of `P` are chosen one at a time. The off-diagonal conditions linking a
/// new column to earlier ones are K-linear in the new column, so each step solves
/// an affine system and only walks its solution space.
pub fn find_isometry(
    fa: &FiniteAlgebra,
    a: &[CodedMatrix],
    b: &[CodedMatrix],
    budget: &Budget,
) -> Result<Option<CodedMatrix>> {
    if a.len() != b.len() {
        return Err(Error::IndexSetMismatch { left: a.len(), right: b.len() });
    }
    let n = a.first().map_or(0, |s| s.rows());
    if a.iter().chain(b).any(|s| s.rows() != n || s.cols() != n) {
        return Err(Error::DimensionMismatch("Gram matrices of different sizes".into()));
    }
    if n == 0 {
        return Ok(Some(Matrix::new(0, 0, vec![]).unwrap()));
    }
    if a.iter().zip(b).any(|(x, y)| fa.rr_rank(x) != fa.rr_rank(y)) {
        return Ok(None);
    }
    let search = Search { fa, a, b, n, m: fa.dim(), budget, elements: (0..fa.field().order()).collect() };
    let mut cols = Vec::with_capacity(n);
    search.extend(&mut cols)
}

struct Search<'a> {
    fa: &'a FiniteAlgebra,
    a: &'a [CodedMatrix],
    b: &'a [CodedMatrix],
    n: usize,
    m: usize,
    budget: &'a Budget,
    elements: Vec<u32>,
}

impl Search<'_> {
    fn columns_matrix(&self, cols: &[Vec<u32>]) -> CodedMatrix {
        Matrix::from_fn(self.n, cols.len(), |i, j| cols[j][i])
    }

    fn extend(&self, cols: &mut Vec<Vec<u32>>) -> Result<Option<CodedMatrix>> {
        let (fa, n, m) = (self.fa, self.n, self.m);
        let c = cols.len();
        if c == n {
            let p = self.columns_matrix(cols);
            return Ok(fa.is_invertible_c(&p).then_some(p));
        }
        let k = fa.field();
        let mut rows: Vec<Vec<u32>> = Vec::new();
        let mut rhs: Vec<u32> = Vec::new();
        for (sa, sb) in self.a.iter().zip(self.b) {
            for (r, pr) in cols.iter().enumerate() {
                // p_r^* B p_c = A[r, c]
                let u: Vec<u32> = (0..n)
                    .map(|l| (0..n).fold(0, |acc, kk| fa.add_c(acc, fa.mul_c(fa.conj_c(pr[kk]), *sb.get(kk, l)))))
                    .collect();
                self.push_equations(&u, *sa.get(r, c), &mut rows, &mut rhs);
                // p_c^* B p_r = A[c, r], conjugated: sum_k sigma(v_k) x_k = sigma(A[c, r])
                let v: Vec<u32> = (0..n)
                    .map(|kk| (0..n).fold(0, |acc, l| fa.add_c(acc, fa.mul_c(*sb.get(kk, l), pr[l]))))
                    .map(|x| fa.conj_c(x))
                    .collect();
                self.push_equations(&v, fa.conj_c(*sa.get(c, r)), &mut rows, &mut rhs);
            }
        }
        let unknowns = n * m;
        let (particular, kernel) = if rows.is_empty() {
            let id = (0..unknowns)
                .map(|i| (0..unknowns).map(|j| if i == j { 1 } else { 0 }).collect())
                .collect();
            (vec![0; unknowns], id)
        } else {
            let mat = Matrix::new(rows.len(), unknowns, rows.concat()).unwrap();
            match linalg::solve_affine(k, &mat, &rhs) {
                Some(s) => s,
                None => return Ok(None),
            }
        };
        let mut found = None;
        for_each_affine(k, &particular, &kernel, &self.elements, |x| {
            self.budget.charge(n as u64 * n as u64)?;
            let p: Vec<u32> = (0..n).map(|l| fa.encode_coords(&x[l * m..(l + 1) * m])).collect();
            if p.iter().all(|&e| e == 0) {
                return Ok(false);
            }
            for (sa, sb) in self.a.iter().zip(self.b) {
                if fa.bilinear(&p, sb, &p) != *sa.get(c, c) {
                    return Ok(false);
                }
            }
            cols.push(p);
            let partial = self.columns_matrix(cols);
            if fa.rr_rank(&partial) == cols.len() * m {
                if let Some(res) = self.extend(cols)? {
                    found = Some(res);
                    return Ok(true);
                }
            }
            cols.pop();
            Ok(false)
        })?;
        Ok(found)
    }

    /// Appends the `m` K-equations of `sum_l w_l x_l = target`.
    fn push_equations(&self, w: &[u32], target: u32, rows: &mut Vec<Vec<u32>>, rhs: &mut Vec<u32>) {
        let (fa, m) = (self.fa, self.m);
        let t = fa.coords_of(target);
        for row_t in 0..m {
            let mut row = vec![0u32; self.n * m];
            for (l, &wl) in w.iter().enumerate() {
                let lm = fa.left_matrix(wl);
                row[l * m..(l + 1) * m].copy_from_slice(&lm[row_t * m..(row_t + 1) * m]);
            }
            rows.push(row);
            rhs.push(t[row_t]);
        }
    }
}

/// Position of a Gram tuple in serialization order.
pub fn tuple_index(fa: &FiniteAlgebra, tuple: &[CodedMatrix]) -> u64 {
    let s = fa.size() as u64;
    tuple.iter().flat_map(|g| g.data().iter()).fold(0u64, |acc, &e| acc * s + e as u64)
}

pub fn tuple_from_index(fa: &FiniteAlgebra, n: usize, count: usize, mut idx: u64) -> Vec<CodedMatrix> {
    let per = (fa.size() as u64).pow((n * n) as u32);
    let mut out: Vec<CodedMatrix> = (0..count)
        .map(|_| {
            let g = fa.matrix_from_index(n, n, idx % per);
            idx /= per;
            g
        })
        .collect();
    out.reverse();
    out
}

/// Orbit representatives of `GL_n(A)` acting by `S -> g^* S g` on tuples of
/// `count` Gram matrices that satisfy `filter`. Each representative is the
/// minimum of its orbit in serialization order; output is in that order.
///
/// `filter` must be invariant under the action.
pub fn classify(
    fa: &FiniteAlgebra,
    n: usize,
    count: usize,
    filter: &(dyn Fn(&[CodedMatrix]) -> bool + Sync),
    budget: &Budget,
) -> Result<Vec<Vec<CodedMatrix>>> {
    let total = (fa.size() as u64).checked_pow((count * n * n) as u32).unwrap_or(u64::MAX);
    budget.check_estimate(total)?;
    let gl = fa.general_linear(n, budget)?;
    let mut visited = vec![0u64; (total as usize).div_ceil(64)];
    let mut reps = Vec::new();
    for idx in 0..total {
        if visited[(idx / 64) as usize] >> (idx % 64) & 1 == 1 {
            continue;
        }
        budget.charge(1)?;
        let tuple = tuple_from_index(fa, n, count, idx);
        if !filter(&tuple) {
            continue;
        }
        budget.charge(gl.len() as u64 * count as u64)?;
        for g in gl.iter() {
            let image: Vec<CodedMatrix> = tuple.iter().map(|s| fa.congruence(s, g)).collect();
            let j = tuple_index(fa, &image);
            visited[(j / 64) as usize] |= 1 << (j % 64);
        }
        reps.push(tuple);
    }
    Ok(reps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::InvolutiveAlgebra;

    fn m1(x: u32) -> CodedMatrix {
        Matrix::new(1, 1, vec![x]).unwrap()
    }

    /// Oracle: enumerate all of GL_n.
    fn naive(fa: &FiniteAlgebra, a: &[CodedMatrix], b: &[CodedMatrix]) -> bool {
        let n = a[0].rows();
        let gl = fa.general_linear(n, &Budget::unlimited()).unwrap();
        gl.iter().any(|p| a.iter().zip(b).all(|(x, y)| &fa.congruence(y, p) == x))
    }

    #[test]
    fn rank_one_squares() {
        let b = Budget::unlimited();
        let f3 = InvolutiveAlgebra::prime_field(3).unwrap().finite().unwrap();
        assert!(find_isometry(&f3, &[m1(1)], &[m1(2)], &b).unwrap().is_none());
        let f5 = InvolutiveAlgebra::prime_field(5).unwrap().finite().unwrap();
        let p = find_isometry(&f5, &[m1(4)], &[m1(1)], &b).unwrap().unwrap();
        assert_eq!(f5.congruence(&m1(1), &p), m1(4));
    }

    #[test]
    fn agrees_with_naive_search_rank_two() {
        let b = Budget::unlimited();
        for alg in [InvolutiveAlgebra::prime_field(3).unwrap(), InvolutiveAlgebra::f9(true)] {
            let fa = alg.finite().unwrap();
            let step = if fa.size() == 3 { 1 } else { 97 };
            let total = (fa.size() as u64).pow(4);
            let sample: Vec<CodedMatrix> =
                (0..total).step_by(step).map(|i| fa.matrix_from_index(2, 2, i)).collect();
            let target = &sample[..sample.len().min(30)];
            for x in target {
                for y in sample.iter().take(200) {
                    let got = find_isometry(&fa, std::slice::from_ref(x), std::slice::from_ref(y), &b).unwrap();
                    if let Some(p) = &got {
                        assert_eq!(&fa.congruence(y, p), x);
                    }
                    assert_eq!(got.is_some(), naive(&fa, std::slice::from_ref(x), std::slice::from_ref(y)), "{x:?} {y:?}");
                }
            }
        }
    }

    #[test]
    fn classify_rank_one_f3() {
        let fa = InvolutiveAlgebra::prime_field(3).unwrap().finite().unwrap();
        let reps = classify(&fa, 1, 1, &|_| true, &Budget::unlimited()).unwrap();
        assert_eq!(reps, vec![vec![m1(0)], vec![m1(1)], vec![m1(2)]]);
        let reps0 = classify(&fa, 0, 1, &|_| true, &Budget::unlimited()).unwrap();
        assert_eq!(reps0.len(), 1);
    }

    #[test]
    fn tuple_index_round_trip() {
        let fa = InvolutiveAlgebra::f9(true).finite().unwrap();
        for idx in [0u64, 1, 80, 6561 * 5 + 17, 6561 * 6561 - 1] {
            let t = tuple_from_index(&fa, 2, 2, idx);
            assert_eq!(tuple_index(&fa, &t), idx);
        }
    }
}
