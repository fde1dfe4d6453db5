//! Table-driven arithmetic for algebras over finite fields.
//!
//! Elements are coded as integers: the code of `sum c_i e_i` is the base-`q`
//! number with digits `c_0 c_1 .. c_{m-1}` (most significant first), so the
//! numeric order of codes is the lexicographic order of coefficient vectors.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::algebra::{AlgebraElement, InvolutiveAlgebra, MatrixOverA};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::field::{Field, FiniteField, Scalar};
use crate::linalg;
use crate::matrix::Matrix;
use crate::ring::InvolutiveRing;

/// Largest algebra (number of elements) that gets full operation tables.
pub const MAX_CODED_SIZE: u64 = 2048;

pub type CodedMatrix = Matrix<u32>;

pub struct FiniteAlgebra {
    field: Arc<FiniteField>,
    dim: usize,
    size: u32,
    one: u32,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    conj: Vec<u32>,
    coords: Vec<u32>,
    /// K-matrix (row-major, m x m) of left multiplication by each element.
    left: Vec<u32>,
    gl_cache: Mutex<HashMap<usize, Arc<Vec<CodedMatrix>>>>,
}

impl std::fmt::Debug for FiniteAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FiniteAlgebra(dim {} over {:?}, {} elements)", self.dim, self.field, self.size)
    }
}

impl FiniteAlgebra {
    pub(crate) fn build(a: &InvolutiveAlgebra) -> Result<Self> {
        let field = a.base_field().finite_field()?.clone();
        let q = field.order() as u64;
        let m = a.dimension();
        let size = q.checked_pow(m as u32).unwrap_or(u64::MAX);
        if size > MAX_CODED_SIZE {
            return Err(Error::BudgetExceeded { estimate: size, limit: MAX_CODED_SIZE });
        }
        let size_u = size as usize;
        let q32 = q as u32;
        let mut coords = vec![0u32; size_u * m];
        for code in 0..size_u {
            let mut c = code as u32;
            for t in (0..m).rev() {
                coords[code * m + t] = c % q32;
                c /= q32;
            }
        }
        let encode = |c: &[u32]| c.iter().fold(0u32, |acc, &d| acc * q32 + d);
        let fin = |s: &Scalar| match s {
            Scalar::Fin(c) => *c,
            _ => unreachable!("finite base field"),
        };
        let structure: Vec<u32> = a.structure_constants().iter().map(fin).collect();
        let invol: Vec<u32> = a.involution_matrix().into_data().iter().map(fin).collect();
        let unit: Vec<u32> = a.unit().0.iter().map(fin).collect();

        let mut add = vec![0u32; size_u * size_u];
        let mut mul = vec![0u32; size_u * size_u];
        let mut buf = vec![0u32; m];
        for x in 0..size_u {
            let cx = &coords[x * m..(x + 1) * m];
            for y in 0..size_u {
                let cy = &coords[y * m..(y + 1) * m];
                for t in 0..m {
                    buf[t] = field.add_code(cx[t], cy[t]);
                }
                add[x * size_u + y] = encode(&buf);
                buf.iter_mut().for_each(|v| *v = 0);
                for i in 0..m {
                    if cx[i] == 0 {
                        continue;
                    }
                    for j in 0..m {
                        if cy[j] == 0 {
                            continue;
                        }
                        let ab = field.mul_code(cx[i], cy[j]);
                        let row = &structure[(i * m + j) * m..(i * m + j + 1) * m];
                        for (k, &c) in row.iter().enumerate() {
                            if c != 0 {
                                buf[k] = field.add_code(buf[k], field.mul_code(ab, c));
                            }
                        }
                    }
                }
                mul[x * size_u + y] = encode(&buf);
            }
        }
        let mut neg = vec![0u32; size_u];
        let mut conj = vec![0u32; size_u];
        for x in 0..size_u {
            let cx = &coords[x * m..(x + 1) * m];
            let n: Vec<u32> = cx.iter().map(|&c| field.neg_code(c)).collect();
            neg[x] = encode(&n);
            let s: Vec<u32> = (0..m)
                .map(|i| {
                    (0..m).fold(0, |acc, j| field.add_code(acc, field.mul_code(invol[i * m + j], cx[j])))
                })
                .collect();
            conj[x] = encode(&s);
        }
        let basis: Vec<u32> = (0..m).map(|t| q32.pow((m - 1 - t) as u32)).collect();
        let mut left = vec![0u32; size_u * m * m];
        for x in 0..size_u {
            for (t, &e) in basis.iter().enumerate() {
                let prod = mul[x * size_u + e as usize] as usize;
                for k in 0..m {
                    left[x * m * m + k * m + t] = coords[prod * m + k];
                }
            }
        }
        Ok(FiniteAlgebra {
            one: encode(&unit),
            field,
            dim: m,
            size: size as u32,
            add,
            mul,
            neg,
            conj,
            coords,
            left,
            gl_cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    #[inline]
    pub fn add_c(&self, a: u32, b: u32) -> u32 {
        self.add[a as usize * self.size as usize + b as usize]
    }
    #[inline]
    pub fn mul_c(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.size as usize + b as usize]
    }
    #[inline]
    pub fn neg_c(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }
    #[inline]
    pub fn conj_c(&self, a: u32) -> u32 {
        self.conj[a as usize]
    }
    #[inline]
    pub fn coords_of(&self, a: u32) -> &[u32] {
        &self.coords[a as usize * self.dim..(a as usize + 1) * self.dim]
    }
    /// Row-major K-matrix of `x -> a x`.
    #[inline]
    pub fn left_matrix(&self, a: u32) -> &[u32] {
        let mm = self.dim * self.dim;
        &self.left[a as usize * mm..(a as usize + 1) * mm]
    }

    pub fn encode_coords(&self, c: &[u32]) -> u32 {
        let q = self.field.order();
        c.iter().fold(0u32, |acc, &d| acc * q + d)
    }

    pub fn encode(&self, a: &AlgebraElement) -> Result<u32> {
        if a.0.len() != self.dim {
            return Err(Error::DimensionMismatch("element length differs from algebra dimension".into()));
        }
        let c: Vec<u32> = a
            .0
            .iter()
            .map(|s| match s {
                Scalar::Fin(c) if *c < self.field.order() => Ok(*c),
                other => Err(Error::DimensionMismatch(format!("{other:?} is not in the base field"))),
            })
            .collect::<Result<_>>()?;
        Ok(self.encode_coords(&c))
    }

    pub fn decode(&self, code: u32) -> AlgebraElement {
        AlgebraElement(self.coords_of(code).iter().map(|&c| Scalar::Fin(c)).collect())
    }

    pub fn encode_matrix(&self, m: &MatrixOverA) -> Result<CodedMatrix> {
        m.try_map(|a| self.encode(a))
    }

    pub fn decode_matrix(&self, m: &CodedMatrix) -> MatrixOverA {
        m.map(|&c| self.decode(c))
    }

    /// Rank over K of the regular representation of a coded matrix.
    pub fn rr_rank(&self, x: &CodedMatrix) -> usize {
        linalg::rank(&self.field, &x.regular_representation(self))
    }

    pub fn is_invertible_c(&self, x: &CodedMatrix) -> bool {
        x.is_square() && self.rr_rank(x) == x.rows() * self.dim
    }

    /// All invertible `n x n` matrices in increasing code order, cached per `n`.
    pub fn general_linear(&self, n: usize, budget: &Budget) -> Result<Arc<Vec<CodedMatrix>>> {
        if let Some(v) = self.gl_cache.lock().unwrap().get(&n) {
            return Ok(v.clone());
        }
        let total = (self.size as u64).checked_pow((n * n) as u32).unwrap_or(u64::MAX);
        budget.check_estimate(total)?;
        budget.charge(total)?;
        let units: Vec<CodedMatrix> = (0..total)
            .map(|idx| self.matrix_from_index(n, n, idx))
            .filter(|x| self.is_invertible_c(x))
            .collect();
        let units = Arc::new(units);
        self.gl_cache.lock().unwrap().insert(n, units.clone());
        Ok(units)
    }

    /// The matrix whose row-major entry sequence is the base-`|A|` expansion of `idx`.
    pub fn matrix_from_index(&self, rows: usize, cols: usize, mut idx: u64) -> CodedMatrix {
        let s = self.size as u64;
        let mut data = vec![0u32; rows * cols];
        for slot in data.iter_mut().rev() {
            *slot = (idx % s) as u32;
            idx /= s;
        }
        Matrix::new(rows, cols, data).unwrap()
    }

    /// `P^* S P`.
    pub fn congruence(&self, s: &CodedMatrix, p: &CodedMatrix) -> CodedMatrix {
        let sp = s.mul(self, p).expect("shapes checked by caller");
        p.conj_transpose(self).mul(self, &sp).expect("shapes checked by caller")
    }

    /// `u^* S v` for coded vectors.
    pub fn bilinear(&self, u: &[u32], s: &CodedMatrix, v: &[u32]) -> u32 {
        let n = u.len();
        let mut acc = 0;
        for k in 0..n {
            if u[k] == 0 {
                continue;
            }
            let ck = self.conj_c(u[k]);
            for l in 0..n {
                let e = *s.get(k, l);
                if e != 0 && v[l] != 0 {
                    acc = self.add_c(acc, self.mul_c(ck, self.mul_c(e, v[l])));
                }
            }
        }
        acc
    }
}

impl InvolutiveRing for FiniteAlgebra {
    type Elem = u32;
    type Base = Arc<FiniteField>;

    fn base(&self) -> &Arc<FiniteField> {
        &self.field
    }
    fn dim(&self) -> usize {
        self.dim
    }
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        self.one
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        self.add_c(*a, *b)
    }
    fn neg(&self, a: &u32) -> u32 {
        self.neg_c(*a)
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        self.mul_c(*a, *b)
    }
    fn conj(&self, a: &u32) -> u32 {
        self.conj_c(*a)
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn coords(&self, a: &u32) -> Vec<u32> {
        self.coords_of(*a).to_vec()
    }
    fn from_coords(&self, c: &[u32]) -> u32 {
        self.encode_coords(c)
    }
}

/// Apply `f` to every element of the K-affine space `particular + span(kernel)`.
pub(crate) fn for_each_affine<F: Field>(
    field: &F,
    particular: &[F::Elem],
    kernel: &[Vec<F::Elem>],
    elements: &[F::Elem],
    mut f: impl FnMut(&[F::Elem]) -> Result<bool>,
) -> Result<bool> {
    let d = kernel.len();
    let q = elements.len();
    let mut digits = vec![0usize; d];
    let mut v = particular.to_vec();
    loop {
        if f(&v)? {
            return Ok(true);
        }
        // odometer increment, updating v incrementally
        let mut pos = d;
        loop {
            if pos == 0 {
                return Ok(false);
            }
            pos -= 1;
            let old = &elements[digits[pos]];
            digits[pos] = (digits[pos] + 1) % q;
            let new = &elements[digits[pos]];
            let delta = field.sub(new, old);
            for (x, k) in v.iter_mut().zip(&kernel[pos]) {
                *x = field.add(x, &field.mul(&delta, k));
            }
            if digits[pos] != 0 {
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_match_generic_arithmetic() {
        for a in [
            InvolutiveAlgebra::f9(true),
            InvolutiveAlgebra::quaternion(crate::field::BaseField::prime(3).unwrap(), -1, -1).unwrap(),
        ] {
            let fa = a.finite().unwrap();
            let els: Vec<_> = a.enumerate_elements().unwrap().collect();
            assert_eq!(els.len() as u32, fa.size());
            for (i, x) in els.iter().enumerate() {
                assert_eq!(fa.encode(x).unwrap(), i as u32);
                assert_eq!(fa.decode(fa.conj_c(i as u32)), a.conj(x));
                for (j, y) in els.iter().enumerate() {
                    assert_eq!(fa.decode(fa.mul_c(i as u32, j as u32)), a.mul(x, y));
                    assert_eq!(fa.decode(fa.add_c(i as u32, j as u32)), a.add(x, y));
                }
            }
        }
    }

    #[test]
    fn gl_counts() {
        let b = Budget::unlimited();
        let f3 = InvolutiveAlgebra::prime_field(3).unwrap().finite().unwrap();
        assert_eq!(f3.general_linear(1, &b).unwrap().len(), 2);
        // (9-1)(9-3)
        assert_eq!(f3.general_linear(2, &b).unwrap().len(), 48);
        assert_eq!(f3.general_linear(0, &b).unwrap().len(), 1);
        let f9 = InvolutiveAlgebra::f9(true).finite().unwrap();
        assert_eq!(f9.general_linear(1, &b).unwrap().len(), 8);
        // (81-1)(81-9)
        assert_eq!(f9.general_linear(2, &b).unwrap().len(), 80 * 72);
    }

    #[test]
    fn budget_blocks_large_enumeration() {
        let f9 = InvolutiveAlgebra::f9(true).finite().unwrap();
        assert!(matches!(
            f9.general_linear(3, &Budget::new(1000)),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn oversized_algebra_is_refused() {
        // M2(F7) has 7^4 = 2401 elements
        let a = InvolutiveAlgebra::matrix_algebra(crate::field::BaseField::prime(7).unwrap(), 2).unwrap();
        assert!(matches!(a.finite(), Err(Error::BudgetExceeded { .. })));
    }
}
