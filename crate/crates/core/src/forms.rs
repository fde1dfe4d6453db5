//! Sesquilinear forms and systems on free modules `A^n`.
//!
//! A vector is a column `x` in `A^n` and `s_i(x, y) = x^* S_i y`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraElement, InvolutiveAlgebra, MatrixOverA};
use crate::budget::Budget;
use crate::coded::{CodedMatrix, FiniteAlgebra};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ring::InvolutiveRing;
use crate::search;

/// The sign `epsilon = +1` or `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_int(v: i64) -> Result<Self> {
        match v {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            _ => Err(Error::Parse(format!("epsilon must be 1 or -1, got {v}"))),
        }
    }

    pub fn times(self, other: Sign) -> Sign {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

/// A free module `A^rank` with a family of Gram matrices, one per index.
#[derive(Debug, Clone)]
pub struct SesquilinearSystem {
    algebra: Arc<InvolutiveAlgebra>,
    rank: usize,
    grams: Vec<MatrixOverA>,
}

impl PartialEq for SesquilinearSystem {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.algebra, &other.algebra) && self.rank == other.rank && self.grams == other.grams
    }
}
impl Eq for SesquilinearSystem {}

pub(crate) fn same_algebra(a: &Arc<InvolutiveAlgebra>, b: &Arc<InvolutiveAlgebra>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// A homomorphism `A^cols -> A^rows` given by its matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleMap {
    pub matrix: MatrixOverA,
}

impl ModuleMap {
    pub fn source_rank(&self) -> usize {
        self.matrix.cols()
    }
    pub fn target_rank(&self) -> usize {
        self.matrix.rows()
    }
}

impl SesquilinearSystem {
    pub fn new(algebra: Arc<InvolutiveAlgebra>, rank: usize, grams: Vec<MatrixOverA>) -> Result<Self> {
        if grams.is_empty() {
            return Err(Error::DimensionMismatch("a system needs at least one Gram matrix".into()));
        }
        for g in &grams {
            if g.rows() != rank || g.cols() != rank {
                return Err(Error::DimensionMismatch(format!(
                    "Gram matrix is {}x{}, rank is {rank}",
                    g.rows(),
                    g.cols()
                )));
            }
            algebra.check_matrix(g)?;
        }
        Ok(SesquilinearSystem { algebra, rank, grams })
    }

    /// A single form.
    pub fn single(algebra: Arc<InvolutiveAlgebra>, gram: MatrixOverA) -> Result<Self> {
        let n = gram.rows();
        Self::new(algebra, n, vec![gram])
    }

    /// Single form with integer Gram entries (for one-dimensional algebras).
    pub fn from_ints(algebra: Arc<InvolutiveAlgebra>, rows: &[&[i64]]) -> Result<Self> {
        let n = rows.len();
        let gram = Matrix::from_fn(n, n, |i, j| algebra.element(&[rows[i][j]]));
        Self::single(algebra, gram)
    }

    /// The diagonal form `<a_1, .., a_n>` over a one-dimensional algebra.
    pub fn diagonal(algebra: Arc<InvolutiveAlgebra>, entries: &[i64]) -> Result<Self> {
        let d: Vec<AlgebraElement> = entries.iter().map(|&e| algebra.from_int(e)).collect();
        let gram = Matrix::scalar_diag(algebra.as_ref(), &d);
        Self::single(algebra, gram)
    }

    pub fn zero(algebra: Arc<InvolutiveAlgebra>, rank: usize, count: usize) -> Result<Self> {
        let z = Matrix::zeros(algebra.as_ref(), rank, rank);
        Self::new(algebra, rank, vec![z; count])
    }

    pub fn algebra(&self) -> &Arc<InvolutiveAlgebra> {
        &self.algebra
    }
    pub fn rank(&self) -> usize {
        self.rank
    }
    pub fn index_count(&self) -> usize {
        self.grams.len()
    }
    pub fn grams(&self) -> &[MatrixOverA] {
        &self.grams
    }
    pub fn gram(&self, i: usize) -> &MatrixOverA {
        &self.grams[i]
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.grams.len() {
            return Err(Error::DimensionMismatch(format!(
                "index {i} out of range for {} Gram matrices",
                self.grams.len()
            )));
        }
        Ok(())
    }

    pub(crate) fn coded(&self) -> Result<(Arc<FiniteAlgebra>, Vec<CodedMatrix>)> {
        let fa = self.algebra.finite()?;
        let grams = self.grams.iter().map(|g| fa.encode_matrix(g)).collect::<Result<_>>()?;
        Ok((fa, grams))
    }

    pub(crate) fn from_coded(algebra: &Arc<InvolutiveAlgebra>, fa: &FiniteAlgebra, grams: &[CodedMatrix]) -> Self {
        let rank = grams[0].rows();
        SesquilinearSystem {
            algebra: algebra.clone(),
            rank,
            grams: grams.iter().map(|g| fa.decode_matrix(g)).collect(),
        }
    }
}

/// `s_i(x, y) = x^* S_i y`.
pub fn evaluate(
    form: &SesquilinearSystem,
    i: usize,
    x: &[AlgebraElement],
    y: &[AlgebraElement],
) -> Result<AlgebraElement> {
    form.check_index(i)?;
    if x.len() != form.rank || y.len() != form.rank {
        return Err(Error::DimensionMismatch(format!(
            "vectors of length {} and {} for a rank {} form",
            x.len(),
            y.len(),
            form.rank
        )));
    }
    let a = form.algebra.as_ref();
    let xv = Matrix::column_vector(x.to_vec());
    let yv = Matrix::column_vector(y.to_vec());
    let v = xv.conj_transpose(a).mul(a, &form.grams[i])?.mul(a, &yv)?;
    Ok(v.get(0, 0).clone())
}

/// Matrix `L` of `s_l: V -> V^*`, so that `(L x)^* y = s(x, y)`; equals `S^*`.
pub fn left_adjoint(form: &SesquilinearSystem, i: usize) -> Result<ModuleMap> {
    form.check_index(i)?;
    Ok(ModuleMap { matrix: form.grams[i].conj_transpose(form.algebra.as_ref()) })
}

/// Matrix `R` of `s_r: V -> V^*`, `(R x)^* y = sigma(s(y, x))`; equals `S`.
pub fn right_adjoint(form: &SesquilinearSystem, i: usize) -> Result<ModuleMap> {
    form.check_index(i)?;
    Ok(ModuleMap { matrix: form.grams[i].clone() })
}

/// The dual of a module map is its conjugate transpose under the storage convention.
pub fn dual_map(algebra: &InvolutiveAlgebra, f: &ModuleMap) -> ModuleMap {
    ModuleMap { matrix: f.matrix.conj_transpose(algebra) }
}

pub fn is_epsilon_hermitian(form: &SesquilinearSystem, eps: Sign) -> bool {
    let a = form.algebra.as_ref();
    let e = a.from_int(eps.value());
    form.grams.iter().all(|s| s.conj_transpose(a) == s.scale_left(a, &e))
}

pub fn is_unimodular(form: &SesquilinearSystem) -> bool {
    form.grams.iter().all(|s| s.is_invertible(form.algebra.as_ref()))
}

fn check_compatible(a: &SesquilinearSystem, b: &SesquilinearSystem) -> Result<()> {
    if !same_algebra(&a.algebra, &b.algebra) {
        return Err(Error::AlgebraMismatch("forms live over different algebras".into()));
    }
    if a.grams.len() != b.grams.len() {
        return Err(Error::IndexSetMismatch { left: a.grams.len(), right: b.grams.len() });
    }
    Ok(())
}

/// Block-diagonal sum.
pub fn orthogonal_sum(a: &SesquilinearSystem, b: &SesquilinearSystem) -> Result<SesquilinearSystem> {
    check_compatible(a, b)?;
    let alg = a.algebra.as_ref();
    let grams = a.grams.iter().zip(&b.grams).map(|(x, y)| Matrix::block_diag(alg, &[x, y])).collect();
    Ok(SesquilinearSystem { algebra: a.algebra.clone(), rank: a.rank + b.rank, grams })
}

/// The pullback with Grams `P^* S_i P`.
pub fn transform(form: &SesquilinearSystem, p: &ModuleMap) -> Result<SesquilinearSystem> {
    let a = form.algebra.as_ref();
    if p.matrix.rows() != form.rank || p.matrix.cols() != form.rank {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} change of basis for a rank {} form",
            p.matrix.rows(),
            p.matrix.cols(),
            form.rank
        )));
    }
    if !p.matrix.is_invertible(a) {
        return Err(Error::NotInvertible);
    }
    let pstar = p.matrix.conj_transpose(a);
    let grams = form
        .grams
        .iter()
        .map(|s| pstar.mul(a, &s.mul(a, &p.matrix)?))
        .collect::<Result<_>>()?;
    Ok(SesquilinearSystem { algebra: form.algebra.clone(), rank: form.rank, grams })
}

/// An invertible `P` with `P^* S_i(b) P = S_i(a)` for all `i`, or `None`.
pub fn is_isometric_bruteforce(
    a: &SesquilinearSystem,
    b: &SesquilinearSystem,
    budget: &Budget,
) -> Result<Option<ModuleMap>> {
    check_compatible(a, b)?;
    if a.rank != b.rank {
        return Ok(None);
    }
    let (fa, ga) = a.coded()?;
    let (_, gb) = b.coded()?;
    Ok(search::find_isometry(&fa, &ga, &gb, budget)?.map(|p| ModuleMap { matrix: fa.decode_matrix(&p) }))
}

/// Which Gram tuples a classification keeps. Every variant is invariant under isometry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FormFilter {
    All,
    Hermitian(Sign),
    Unimodular,
    UnimodularHermitian(Sign),
}

impl FormFilter {
    pub(crate) fn accepts_coded(&self, fa: &FiniteAlgebra, grams: &[CodedMatrix]) -> bool {
        let herm = |eps: Sign| {
            let e = fa.from_int(eps.value());
            grams.iter().all(|s| s.conj_transpose(fa) == s.scale_left(fa, &e))
        };
        let unimod = || grams.iter().all(|s| fa.is_invertible_c(s));
        match *self {
            FormFilter::All => true,
            FormFilter::Hermitian(eps) => herm(eps),
            FormFilter::Unimodular => unimod(),
            FormFilter::UnimodularHermitian(eps) => herm(eps) && unimod(),
        }
    }

    pub fn accepts(&self, form: &SesquilinearSystem) -> bool {
        match *self {
            FormFilter::All => true,
            FormFilter::Hermitian(eps) => is_epsilon_hermitian(form, eps),
            FormFilter::Unimodular => is_unimodular(form),
            FormFilter::UnimodularHermitian(eps) => is_epsilon_hermitian(form, eps) && is_unimodular(form),
        }
    }
}

/// One representative per isometry class of rank-`rank` systems with `count`
/// Gram matrices passing `filter`; each is the serialization-order minimum of its class.
pub fn classify_isometry_classes(
    algebra: &Arc<InvolutiveAlgebra>,
    rank: usize,
    count: usize,
    filter: FormFilter,
    budget: &Budget,
) -> Result<Vec<SesquilinearSystem>> {
    if count == 0 {
        return Err(Error::DimensionMismatch("a system needs at least one Gram matrix".into()));
    }
    let fa = algebra.finite()?;
    let reps = search::classify(&fa, rank, count, &|g| filter.accepts_coded(&fa, g), budget)?;
    Ok(reps.iter().map(|g| SesquilinearSystem::from_coded(algebra, &fa, g)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> Arc<InvolutiveAlgebra> {
        Arc::new(InvolutiveAlgebra::prime_field(p).unwrap())
    }

    fn form(p: u32, rows: &[&[i64]]) -> SesquilinearSystem {
        SesquilinearSystem::from_ints(f(p), rows).unwrap()
    }

    #[test]
    fn evaluate_basis_pairs() {
        let a = f(3);
        let s = form(3, &[&[0, 1], &[0, 0]]);
        let e1 = vec![a.element(&[1]), a.element(&[0])];
        let e2 = vec![a.element(&[0]), a.element(&[1])];
        assert_eq!(evaluate(&s, 0, &e1, &e2).unwrap(), a.element(&[1]));
        assert_eq!(evaluate(&s, 0, &e2, &e1).unwrap(), a.element(&[0]));
        assert!(evaluate(&s, 1, &e1, &e2).is_err());
        assert!(evaluate(&s, 0, &e1[..1], &e2).is_err());
        let one = form(3, &[&[1]]);
        assert_eq!(evaluate(&one, 0, &[a.element(&[1])], &[a.element(&[1])]).unwrap(), a.element(&[1]));
    }

    #[test]
    fn adjoints_of_non_hermitian_form() {
        let s = form(3, &[&[0, 1], &[0, 0]]);
        let l = left_adjoint(&s, 0).unwrap();
        let r = right_adjoint(&s, 0).unwrap();
        assert_eq!(r.matrix, l.matrix.transpose());
        assert_eq!(dual_map(s.algebra(), &l), r);
        let z = SesquilinearSystem::zero(f(3), 0, 1).unwrap();
        assert_eq!(left_adjoint(&z, 0).unwrap().matrix.rows(), 0);
    }

    #[test]
    fn hermitian_predicates() {
        assert!(is_epsilon_hermitian(&form(3, &[&[0, 1], &[1, 0]]), Sign::Plus));
        let q = Arc::new(InvolutiveAlgebra::rationals());
        let alt = SesquilinearSystem::from_ints(q, &[&[0, 1], &[-1, 0]]).unwrap();
        assert!(is_epsilon_hermitian(&alt, Sign::Minus));
        let n = form(3, &[&[0, 1], &[0, 0]]);
        assert!(!is_epsilon_hermitian(&n, Sign::Plus));
        assert!(!is_epsilon_hermitian(&n, Sign::Minus));
    }

    #[test]
    fn unimodular_predicate() {
        assert!(is_unimodular(&form(3, &[&[1, 0], &[0, 1]])));
        assert!(!is_unimodular(&form(3, &[&[0]])));
        assert!(!is_unimodular(&form(3, &[&[1, 1], &[1, 1]])));
    }

    #[test]
    fn sums_and_transforms() {
        let s = orthogonal_sum(&form(3, &[&[1]]), &form(3, &[&[2]])).unwrap();
        assert_eq!(s, form(3, &[&[1, 0], &[0, 2]]));
        let empty = SesquilinearSystem::zero(f(3), 0, 1).unwrap();
        assert_eq!(orthogonal_sum(&s, &empty).unwrap(), s);
        assert!(orthogonal_sum(&form(3, &[&[1]]), &form(5, &[&[1]])).is_err());

        let a = f(3);
        let p = ModuleMap { matrix: Matrix::from_fn(1, 1, |_, _| a.element(&[2])) };
        assert_eq!(transform(&form(3, &[&[1]]), &p).unwrap(), form(3, &[&[1]]));
        let zero = ModuleMap { matrix: Matrix::from_fn(1, 1, |_, _| a.element(&[0])) };
        assert_eq!(transform(&form(3, &[&[1]]), &zero), Err(Error::NotInvertible));
    }

    #[test]
    fn brute_force_isometry() {
        let b = Budget::unlimited();
        assert!(is_isometric_bruteforce(&form(3, &[&[1]]), &form(3, &[&[2]]), &b).unwrap().is_none());
        let w = is_isometric_bruteforce(&form(5, &[&[4]]), &form(5, &[&[1]]), &b).unwrap().unwrap();
        assert_eq!(transform(&form(5, &[&[1]]), &w).unwrap(), form(5, &[&[4]]));
        let x = form(3, &[&[1, 2], &[0, 1]]);
        let id = is_isometric_bruteforce(&x, &x, &b).unwrap().unwrap();
        assert_eq!(transform(&x, &id).unwrap(), x);
        let q = SesquilinearSystem::from_ints(Arc::new(InvolutiveAlgebra::rationals()), &[&[1]]).unwrap();
        assert_eq!(is_isometric_bruteforce(&q, &q, &b), Err(Error::InfiniteBase));
    }

    #[test]
    fn classification_rank_one_f3() {
        let b = Budget::unlimited();
        let all = classify_isometry_classes(&f(3), 1, 1, FormFilter::All, &b).unwrap();
        assert_eq!(all, vec![form(3, &[&[0]]), form(3, &[&[1]]), form(3, &[&[2]])]);
        let su = classify_isometry_classes(&f(3), 1, 1, FormFilter::UnimodularHermitian(Sign::Plus), &b).unwrap();
        assert_eq!(su, vec![form(3, &[&[1]]), form(3, &[&[2]])]);
        let r0 = classify_isometry_classes(&f(3), 0, 1, FormFilter::All, &b).unwrap();
        assert_eq!(r0.len(), 1);
        assert_eq!(r0[0].rank(), 0);
    }
}
