//! Classical invariants of symmetric bilinear forms over `Q`: rank, determinant
//! modulo squares and signature.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{squarefree_class, BaseField, Scalar};
use crate::forms::{is_epsilon_hermitian, SesquilinearSystem, Sign};
use crate::matrix::Matrix;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RationalInvariants {
    pub rank: usize,
    /// Square-free integer representing the determinant of the nondegenerate part.
    #[serde(serialize_with = "as_string")]
    pub determinant_class: BigInt,
    pub signature: i64,
}

fn as_string<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

type Poly = Vec<BigRational>;

fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn derivative(p: &Poly) -> Poly {
    trim(p.iter().enumerate().skip(1).map(|(i, c)| c * BigRational::from_integer(i.into())).collect())
}

/// Quotient and remainder; `d` must be non-zero.
fn divmod(n: &Poly, d: &Poly) -> (Poly, Poly) {
    let mut r = trim(n.clone());
    let dl = d.len();
    if r.len() < dl {
        return (vec![], r);
    }
    let lead = d[dl - 1].clone();
    let mut q = vec![BigRational::zero(); r.len() - dl + 1];
    while r.len() >= dl {
        let shift = r.len() - dl;
        let c = r.last().unwrap() / &lead;
        for (i, di) in d.iter().enumerate() {
            r[shift + i] = &r[shift + i] - &c * di;
        }
        q[shift] = c;
        r = trim(r);
        if r.is_empty() {
            break;
        }
    }
    (trim(q), r)
}

fn monic(p: Poly) -> Poly {
    let lead = p.last().cloned().unwrap_or_else(BigRational::one);
    p.into_iter().map(|c| c / &lead).collect()
}

fn gcd(a: &Poly, b: &Poly) -> Poly {
    let (mut a, mut b) = (trim(a.clone()), trim(b.clone()));
    while !b.is_empty() {
        let r = divmod(&a, &b).1;
        a = b;
        b = r;
    }
    monic(a)
}

fn sub(a: &Poly, b: &Poly) -> Poly {
    let len = a.len().max(b.len());
    trim((0..len).map(|k| a.get(k).cloned().unwrap_or_default() - b.get(k).cloned().unwrap_or_default()).collect())
}

/// Yun's algorithm: `p = c * prod f_i^i` with squarefree, pairwise coprime `f_i`.
fn squarefree_factors(p: &Poly) -> Vec<(Poly, usize)> {
    let dp = derivative(p);
    let a0 = gcd(p, &dp);
    let mut b = divmod(p, &a0).0;
    let mut d = sub(&divmod(&dp, &a0).0, &derivative(&b));
    let mut out = Vec::new();
    let mut i = 1;
    while b.len() > 1 {
        let a = gcd(&b, &d);
        if a.len() > 1 {
            out.push((a.clone(), i));
        }
        b = divmod(&b, &a).0;
        d = sub(&divmod(&d, &a).0, &derivative(&b));
        i += 1;
    }
    out
}

fn eval(p: &Poly, x: &BigRational) -> BigRational {
    p.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
}

fn sign_changes(signs: impl Iterator<Item = i32>) -> usize {
    let nz: Vec<i32> = signs.filter(|&s| s != 0).collect();
    nz.windows(2).filter(|w| w[0] != w[1]).count()
}

fn sturm_sequence(p: &Poly) -> Vec<Poly> {
    let mut seq = vec![p.clone(), derivative(p)];
    loop {
        let n = seq.len();
        let r = divmod(&seq[n - 2], &seq[n - 1]).1;
        if r.is_empty() {
            break;
        }
        seq.push(r.into_iter().map(|c| -c).collect());
    }
    seq
}

fn sgn(x: &BigRational) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Distinct roots of a squarefree `p` with `p(0) != 0`, counted as (positive, negative).
fn root_signs(p: &Poly) -> (usize, usize) {
    let seq = sturm_sequence(p);
    let at_zero = sign_changes(seq.iter().map(|q| sgn(&eval(q, &BigRational::zero()))));
    let at_pos = sign_changes(seq.iter().map(|q| sgn(q.last().unwrap())));
    let at_neg = sign_changes(seq.iter().map(|q| {
        let s = sgn(q.last().unwrap());
        if (q.len() - 1) % 2 == 1 {
            -s
        } else {
            s
        }
    }));
    (at_zero - at_pos, at_neg - at_zero)
}

/// `det(x I - S)` by the Faddeev-LeVerrier recursion, ascending coefficients.
pub fn characteristic_polynomial(s: &Matrix<BigRational>) -> Vec<BigRational> {
    let n = s.rows();
    let mul = |a: &Matrix<BigRational>, b: &Matrix<BigRational>| {
        Matrix::from_fn(n, n, |i, j| (0..n).fold(BigRational::zero(), |acc, k| acc + a.get(i, k) * b.get(k, j)))
    };
    let mut coeffs = vec![BigRational::zero(); n + 1];
    coeffs[n] = BigRational::one();
    let mut m = Matrix::from_fn(n, n, |_, _| BigRational::zero());
    for k in 1..=n {
        let c_prev = coeffs[n - k + 1].clone();
        let sm = mul(s, &m);
        m = Matrix::from_fn(n, n, |i, j| sm.get(i, j) + if i == j { c_prev.clone() } else { BigRational::zero() });
        let tr = (0..n).fold(BigRational::zero(), |acc, i| acc + mul(s, &m).get(i, i));
        coeffs[n - k] = -tr / BigRational::from_integer(k.into());
    }
    coeffs
}

/// Diagonal entries of a symmetric matrix congruent to `s`.
pub fn diagonalize(s: &Matrix<BigRational>) -> Vec<BigRational> {
    let mut a = s.clone();
    let n = a.rows();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        if a.get(i, i).is_zero() {
            // find a usable pivot: another diagonal entry, or make one from an off-diagonal pair
            if let Some(j) = (i + 1..n).find(|&j| !a.get(j, j).is_zero()) {
                a.swap_rows(i, j);
                a = a.transpose();
                a.swap_rows(i, j);
            } else if let Some(j) = (i + 1..n).find(|&j| !a.get(i, j).is_zero()) {
                // e_i -> e_i + e_j gives a_ii + 2 a_ij + a_jj = 2 a_ij
                for k in 0..n {
                    let v = a.get(i, k) + a.get(j, k);
                    a.set(i, k, v);
                }
                for k in 0..n {
                    let v = a.get(k, i) + a.get(k, j);
                    a.set(k, i, v);
                }
            }
        }
        let p = a.get(i, i).clone();
        out.push(p.clone());
        if p.is_zero() {
            continue;
        }
        for j in i + 1..n {
            let f = a.get(j, i) / &p;
            for k in 0..n {
                let v = a.get(j, k) - &f * a.get(i, k);
                a.set(j, k, v);
            }
            for k in 0..n {
                let v = a.get(k, j) - &f * a.get(k, i);
                a.set(k, j, v);
            }
        }
    }
    out
}

fn rational_gram(form: &SesquilinearSystem) -> Result<Matrix<BigRational>> {
    let a = form.algebra();
    if a.base_field() != &BaseField::Rationals || a.dimension() != 1 {
        return Err(Error::Unsupported("rational invariants need the algebra Q".into()));
    }
    if form.index_count() != 1 {
        return Err(Error::Unsupported("rational invariants take a single Gram matrix".into()));
    }
    if !is_epsilon_hermitian(form, Sign::Plus) {
        return Err(Error::InvariantViolation("Gram matrix is not symmetric".into()));
    }
    form.gram(0).try_map(|x| match &x.0[0] {
        Scalar::Rat(r) => Ok(r.clone()),
        s => Err(Error::InvalidField(format!("{s:?} is not rational"))),
    })
}

pub fn rational_symmetric_invariants(form: &SesquilinearSystem) -> Result<RationalInvariants> {
    let s = rational_gram(form)?;
    let mut p = characteristic_polynomial(&s);
    let zeros = p.iter().take_while(|c| c.is_zero()).count();
    p.drain(..zeros);
    let (mut pos, mut neg) = (0usize, 0usize);
    if p.len() > 1 {
        for (f, mult) in squarefree_factors(&p) {
            let (a, b) = root_signs(&f);
            pos += a * mult;
            neg += b * mult;
        }
    }
    let det: BigRational = diagonalize(&s).into_iter().filter(|d| !d.is_zero()).product();
    Ok(RationalInvariants {
        rank: pos + neg,
        determinant_class: squarefree_class(&det),
        signature: pos as i64 - neg as i64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::InvolutiveAlgebra;
    use std::sync::Arc;

    fn q(rows: &[&[i64]]) -> SesquilinearSystem {
        SesquilinearSystem::from_ints(Arc::new(InvolutiveAlgebra::rationals()), rows).unwrap()
    }

    fn inv(rank: usize, det: i64, sig: i64) -> RationalInvariants {
        RationalInvariants { rank, determinant_class: det.into(), signature: sig }
    }

    #[test]
    fn small_examples() {
        assert_eq!(rational_symmetric_invariants(&q(&[&[1, 0], &[0, -1]])).unwrap(), inv(2, -1, 0));
        assert_eq!(rational_symmetric_invariants(&q(&[&[0, 1], &[1, 0]])).unwrap(), inv(2, -1, 0));
        assert_eq!(rational_symmetric_invariants(&q(&[&[1, 0], &[0, 1]])).unwrap(), inv(2, 1, 2));
        assert_eq!(rational_symmetric_invariants(&q(&[&[2, 0], &[0, 8]])).unwrap(), inv(2, 1, 2));
        assert_eq!(rational_symmetric_invariants(&q(&[&[0, 0], &[0, -3]])).unwrap(), inv(1, -3, -1));
        assert_eq!(rational_symmetric_invariants(&q(&[&[0]])).unwrap(), inv(0, 1, 0));
    }

    #[test]
    fn repeated_eigenvalues() {
        let s = q(&[&[2, 1, 1], &[1, 2, 1], &[1, 1, 2]]);
        assert_eq!(rational_symmetric_invariants(&s).unwrap(), inv(3, 1, 3));
        let t = q(&[&[1, 2, 0], &[2, 1, 0], &[0, 0, 0]]);
        assert_eq!(rational_symmetric_invariants(&t).unwrap(), inv(2, -3, 0));
    }

    #[test]
    fn rejects_non_symmetric_and_finite() {
        assert!(rational_symmetric_invariants(&q(&[&[0, 1], &[0, 0]])).is_err());
        let f3 = Arc::new(InvolutiveAlgebra::prime_field(3).unwrap());
        assert!(rational_symmetric_invariants(&SesquilinearSystem::from_ints(f3, &[&[1]]).unwrap()).is_err());
    }
}
