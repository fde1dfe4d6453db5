//! The double-arrow category: objects `(A^m, A^n, (F_i, G_i))`, their duals,
//! hermitian forms, and the functors to and from sesquilinear systems.
//!
//! Arrows `F_i, G_i` are `n x m` matrices (maps `A^m -> A^n`). A morphism
//! `(phi, psi)` satisfies `psi F_i = F'_i phi` and `psi G_i = G'_i phi`.

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{InvolutiveAlgebra, MatrixOverA};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::forms::{same_algebra, ModuleMap, SesquilinearSystem, Sign};
use crate::matrix::Matrix;
use crate::ring::InvolutiveRing;

#[derive(Debug, Clone)]
pub struct DoubleArrowObject {
    algebra: Arc<InvolutiveAlgebra>,
    m: usize,
    n: usize,
    arrows: Vec<(MatrixOverA, MatrixOverA)>,
}

impl PartialEq for DoubleArrowObject {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.algebra, &other.algebra)
            && self.m == other.m
            && self.n == other.n
            && self.arrows == other.arrows
    }
}
impl Eq for DoubleArrowObject {}

/// A pair `(phi, psi)` with `phi: A^m -> A^m'` and `psi: A^n -> A^n'`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DAMorphism {
    pub phi: MatrixOverA,
    pub psi: MatrixOverA,
}

/// A unimodular `epsilon`-hermitian form `xi = (xi1, xi2): Q -> Q^*`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HermitianDAForm {
    object: DoubleArrowObject,
    xi: DAMorphism,
    epsilon: Sign,
}

/// A failed condition of a hermitian form on a double-arrow object.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FormDefect {
    Shape,
    NotMorphism,
    NotHermitian,
    NotUnimodular,
}

impl DoubleArrowObject {
    pub fn new(
        algebra: Arc<InvolutiveAlgebra>,
        m: usize,
        n: usize,
        arrows: Vec<(MatrixOverA, MatrixOverA)>,
    ) -> Result<Self> {
        if arrows.is_empty() {
            return Err(Error::DimensionMismatch("an object needs at least one arrow pair".into()));
        }
        for (f, g) in &arrows {
            for x in [f, g] {
                if x.rows() != n || x.cols() != m {
                    return Err(Error::DimensionMismatch(format!(
                        "arrow is {}x{}, expected {n}x{m}",
                        x.rows(),
                        x.cols()
                    )));
                }
                algebra.check_matrix(x)?;
            }
        }
        Ok(DoubleArrowObject { algebra, m, n, arrows })
    }

    pub fn algebra(&self) -> &Arc<InvolutiveAlgebra> {
        &self.algebra
    }
    pub fn source_rank(&self) -> usize {
        self.m
    }
    pub fn target_rank(&self) -> usize {
        self.n
    }
    pub fn arrows(&self) -> &[(MatrixOverA, MatrixOverA)] {
        &self.arrows
    }
    pub fn index_count(&self) -> usize {
        self.arrows.len()
    }

    fn alg(&self) -> &InvolutiveAlgebra {
        self.algebra.as_ref()
    }

    pub fn identity(&self) -> DAMorphism {
        DAMorphism {
            phi: Matrix::identity(self.alg(), self.m),
            psi: Matrix::identity(self.alg(), self.n),
        }
    }
}

/// `(A^n, A^m, (G_i^*, F_i^*))`.
pub fn dual_object(q: &DoubleArrowObject) -> DoubleArrowObject {
    let a = q.alg();
    DoubleArrowObject {
        algebra: q.algebra.clone(),
        m: q.n,
        n: q.m,
        arrows: q.arrows.iter().map(|(f, g)| (g.conj_transpose(a), f.conj_transpose(a))).collect(),
    }
}

/// The dual morphism `(psi^*, phi^*): Q'^* -> Q^*` of `(phi, psi): Q -> Q'`.
pub fn dual_morphism(algebra: &InvolutiveAlgebra, f: &DAMorphism) -> DAMorphism {
    DAMorphism { phi: f.psi.conj_transpose(algebra), psi: f.phi.conj_transpose(algebra) }
}

/// `g o f`.
pub fn compose(algebra: &InvolutiveAlgebra, g: &DAMorphism, f: &DAMorphism) -> Result<DAMorphism> {
    Ok(DAMorphism { phi: g.phi.mul(algebra, &f.phi)?, psi: g.psi.mul(algebra, &f.psi)? })
}

pub fn is_da_morphism(
    source: &DoubleArrowObject,
    target: &DoubleArrowObject,
    phi: &MatrixOverA,
    psi: &MatrixOverA,
) -> Result<bool> {
    if !same_algebra(&source.algebra, &target.algebra) {
        return Err(Error::AlgebraMismatch("objects over different algebras".into()));
    }
    if source.arrows.len() != target.arrows.len() {
        return Err(Error::IndexSetMismatch { left: source.arrows.len(), right: target.arrows.len() });
    }
    if phi.rows() != target.m || phi.cols() != source.m || psi.rows() != target.n || psi.cols() != source.n {
        return Err(Error::DimensionMismatch(format!(
            "phi {}x{} and psi {}x{} do not fit ({},{}) -> ({},{})",
            phi.rows(),
            phi.cols(),
            psi.rows(),
            psi.cols(),
            source.m,
            source.n,
            target.m,
            target.n
        )));
    }
    let a = source.alg();
    for ((f, g), (f2, g2)) in source.arrows.iter().zip(&target.arrows) {
        if psi.mul(a, f)? != f2.mul(a, phi)? || psi.mul(a, g)? != g2.mul(a, phi)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The duality axiom `E_C^* E_{C^*} = id_{C^*}`, with `E` the identity under free modules.
pub fn duality_axiom_holds(q: &DoubleArrowObject) -> Result<bool> {
    let a = q.alg();
    let e_c = q.identity();
    let dual = dual_object(q);
    let e_dual = dual.identity();
    let lhs = compose(a, &dual_morphism(a, &e_c), &e_dual)?;
    Ok(dual_object(&dual) == *q && lhs == dual.identity())
}

impl HermitianDAForm {
    /// Validates the morphism, hermitian and unimodularity conditions.
    pub fn new(object: DoubleArrowObject, xi: DAMorphism, epsilon: Sign) -> Result<Self> {
        let h = HermitianDAForm { object, xi, epsilon };
        match h.defects().first() {
            None => Ok(h),
            Some(d) => Err(Error::InvariantViolation(format!("hermitian double-arrow form: {d:?}"))),
        }
    }

    pub fn object(&self) -> &DoubleArrowObject {
        &self.object
    }
    pub fn xi(&self) -> &DAMorphism {
        &self.xi
    }
    pub fn epsilon(&self) -> Sign {
        self.epsilon
    }

    /// All violated conditions, empty for a valid form.
    pub fn defects(&self) -> Vec<FormDefect> {
        let q = &self.object;
        let a = q.alg();
        let (x1, x2) = (&self.xi.phi, &self.xi.psi);
        if x1.rows() != q.n || x1.cols() != q.m || x2.rows() != q.m || x2.cols() != q.n {
            return vec![FormDefect::Shape];
        }
        let mut out = Vec::new();
        if !is_da_morphism(q, &dual_object(q), x1, x2).unwrap_or(false) {
            out.push(FormDefect::NotMorphism);
        }
        let e = a.from_int(self.epsilon.value());
        if *x1 != x2.conj_transpose(a).scale_left(a, &e) {
            out.push(FormDefect::NotHermitian);
        }
        if !(x1.is_invertible(a) && x2.is_invertible(a)) {
            out.push(FormDefect::NotUnimodular);
        }
        out
    }
}

/// The underlying object `(A^n, A^n, (S_i^*, S_i))` of `F(s)`.
pub fn underlying_object(form: &SesquilinearSystem) -> DoubleArrowObject {
    let a = form.algebra().as_ref();
    let n = form.rank();
    DoubleArrowObject {
        algebra: form.algebra().clone(),
        m: n,
        n,
        arrows: form.grams().iter().map(|s| (s.conj_transpose(a), s.clone())).collect(),
    }
}

/// `F(V, (s_i)) = ((V, V^*, (s_il, s_ir)), (e_V, id))`.
pub fn functor_f(form: &SesquilinearSystem) -> HermitianDAForm {
    let object = underlying_object(form);
    let xi = object.identity();
    HermitianDAForm { object, xi, epsilon: Sign::Plus }
}

/// `F` on an isometry `P` from `a` to `b` (`P^* S_b P = S_a`): `(P, P^{*-1})`.
pub fn functor_f_map(form_a: &SesquilinearSystem, p: &ModuleMap) -> Result<DAMorphism> {
    let a = form_a.algebra().as_ref();
    let inv = p.matrix.conj_transpose(a).inverse(a)?;
    Ok(DAMorphism { phi: p.matrix.clone(), psi: inv })
}

/// `G(h)`: the system on `A^m` with Grams `xi2 G_i`.
pub fn functor_g(h: &HermitianDAForm) -> Result<SesquilinearSystem> {
    if h.epsilon != Sign::Plus {
        return Err(Error::InvariantViolation("G is defined on hermitian (epsilon = 1) forms".into()));
    }
    if let Some(d) = h.defects().first() {
        return Err(Error::InvariantViolation(format!("{d:?}")));
    }
    let a = h.object.alg();
    let grams = h.object.arrows.iter().map(|(_, g)| h.xi.psi.mul(a, g)).collect::<Result<_>>()?;
    SesquilinearSystem::new(h.object.algebra.clone(), h.object.m, grams)
}

/// `G` on a double-arrow isometry: its first component.
pub fn functor_g_map(f: &DAMorphism) -> ModuleMap {
    ModuleMap { matrix: f.phi.clone() }
}

/// An isometry `h -> F(G(h))`, namely `(id, xi2)`.
pub fn roundtrip_witness(h: &HermitianDAForm) -> DAMorphism {
    DAMorphism { phi: Matrix::identity(h.object.alg(), h.object.m), psi: h.xi.psi.clone() }
}

/// The condition `xi = f^* xi' f` for a morphism `f: h -> h'`, including invertibility
/// and the intertwining conditions.
pub fn is_da_isometry(h: &HermitianDAForm, h2: &HermitianDAForm, f: &DAMorphism) -> Result<bool> {
    let a = h.object.alg();
    if !is_da_morphism(&h.object, &h2.object, &f.phi, &f.psi)? {
        return Ok(false);
    }
    if !f.phi.is_invertible(a) || !f.psi.is_invertible(a) {
        return Ok(false);
    }
    let x1 = f.psi.conj_transpose(a).mul(a, &h2.xi.phi.mul(a, &f.phi)?)?;
    let x2 = f.phi.conj_transpose(a).mul(a, &h2.xi.psi.mul(a, &f.psi)?)?;
    Ok(x1 == h.xi.phi && x2 == h.xi.psi)
}

/// The hyperbolic form `epsilon E_Q + id_{Q^*}` on `Q + Q^*`.
pub fn hyperbolic_da(q: &DoubleArrowObject, eps: Sign) -> HermitianDAForm {
    let a = q.alg();
    let (m, n) = (q.m, q.n);
    let e = a.from_int(eps.value());
    let object = direct_sum(q, &dual_object(q)).expect("an object and its dual are compatible");
    let zero = |r, c| Matrix::zeros(a, r, c);
    let id = |k| Matrix::identity(a, k);
    let eid = |k| Matrix::scalar_diag(a, &vec![e.clone(); k]);
    let xi1 = Matrix::from_blocks(&[vec![&zero(n, m), &id(n)], vec![&eid(m), &zero(m, n)]]).unwrap();
    let xi2 = Matrix::from_blocks(&[vec![&zero(m, n), &id(m)], vec![&eid(n), &zero(n, m)]]).unwrap();
    HermitianDAForm { object, xi: DAMorphism { phi: xi1, psi: xi2 }, epsilon: eps }
}

/// `Q + Q'` with block-diagonal arrows.
pub fn direct_sum(q: &DoubleArrowObject, q2: &DoubleArrowObject) -> Result<DoubleArrowObject> {
    if !same_algebra(&q.algebra, &q2.algebra) {
        return Err(Error::AlgebraMismatch("objects over different algebras".into()));
    }
    if q.arrows.len() != q2.arrows.len() {
        return Err(Error::IndexSetMismatch { left: q.arrows.len(), right: q2.arrows.len() });
    }
    let a = q.alg();
    let arrows = q
        .arrows
        .iter()
        .zip(&q2.arrows)
        .map(|((f, g), (f2, g2))| (Matrix::block_diag(a, &[f, f2]), Matrix::block_diag(a, &[g, g2])))
        .collect();
    Ok(DoubleArrowObject { algebra: q.algebra.clone(), m: q.m + q2.m, n: q.n + q2.n, arrows })
}

/// Orthogonal sum of two forms of the same sign.
pub fn form_sum(h: &HermitianDAForm, h2: &HermitianDAForm) -> Result<HermitianDAForm> {
    if h.epsilon != h2.epsilon {
        return Err(Error::InvariantViolation("summands have different signs".into()));
    }
    let a = h.object.alg();
    let object = direct_sum(&h.object, &h2.object)?;
    let xi = DAMorphism {
        phi: Matrix::block_diag(a, &[&h.xi.phi, &h2.xi.phi]),
        psi: Matrix::block_diag(a, &[&h.xi.psi, &h2.xi.psi]),
    };
    Ok(HermitianDAForm { object, xi, epsilon: h.epsilon })
}

/// An isometry `h -> h2` found by enumerating `phi` in `GL_m`; `psi` is then forced by
/// `xi1 = psi^* xi2'_1 phi` and every remaining condition is checked.
pub fn is_da_isometric_bruteforce(
    h: &HermitianDAForm,
    h2: &HermitianDAForm,
    budget: &Budget,
) -> Result<Option<DAMorphism>> {
    let q = &h.object;
    if !same_algebra(&q.algebra, &h2.object.algebra) {
        return Err(Error::AlgebraMismatch("forms over different algebras".into()));
    }
    if q.arrows.len() != h2.object.arrows.len() {
        return Err(Error::IndexSetMismatch { left: q.arrows.len(), right: h2.object.arrows.len() });
    }
    let fa = q.algebra.finite()?;
    if q.m != h2.object.m || q.n != h2.object.n || h.epsilon != h2.epsilon {
        return Ok(None);
    }
    let code = |x: &MatrixOverA| fa.encode_matrix(x);
    let x1 = code(&h.xi.phi)?;
    let x2 = code(&h.xi.psi)?;
    let y1_inv = code(&h2.xi.phi)?.inverse(fa.as_ref())?;
    let y2 = code(&h2.xi.psi)?;
    let arrows: Vec<_> = q.arrows.iter().map(|(f, g)| Ok((code(f)?, code(g)?))).collect::<Result<_>>()?;
    let arrows2: Vec<_> =
        h2.object.arrows.iter().map(|(f, g)| Ok((code(f)?, code(g)?))).collect::<Result<_>>()?;
    let r = fa.as_ref();
    for phi in fa.general_linear(q.m, budget)?.iter() {
        budget.charge(q.m as u64 * q.m as u64 * 4)?;
        let phi_inv = phi.inverse(r)?;
        let psi = x1.mul(r, &phi_inv)?.mul(r, &y1_inv)?.conj_transpose(r);
        if phi.conj_transpose(r).mul(r, &y2.mul(r, &psi)?)? != x2 {
            continue;
        }
        let intertwines = arrows.iter().zip(&arrows2).all(|((f, g), (f2, g2))| {
            psi.mul(r, f).unwrap() == f2.mul(r, phi).unwrap() && psi.mul(r, g).unwrap() == g2.mul(r, phi).unwrap()
        });
        if intertwines && fa.is_invertible_c(&psi) {
            return Ok(Some(DAMorphism { phi: fa.decode_matrix(phi), psi: fa.decode_matrix(&psi) }));
        }
    }
    Ok(None)
}

/// An isomorphism of objects `Q -> Q'`, searching `phi` then `psi` in code order.
pub fn find_object_isomorphism(
    q: &DoubleArrowObject,
    q2: &DoubleArrowObject,
    budget: &Budget,
) -> Result<Option<DAMorphism>> {
    Ok(object_isomorphisms(q, q2, budget)?.into_iter().next())
}

/// Every isomorphism `Q -> Q'`, in search order.
pub fn object_isomorphisms(
    q: &DoubleArrowObject,
    q2: &DoubleArrowObject,
    budget: &Budget,
) -> Result<Vec<DAMorphism>> {
    if !same_algebra(&q.algebra, &q2.algebra) {
        return Err(Error::AlgebraMismatch("objects over different algebras".into()));
    }
    let fa = q.algebra.finite()?;
    if q.m != q2.m || q.n != q2.n || q.arrows.len() != q2.arrows.len() {
        return Ok(vec![]);
    }
    let r = fa.as_ref();
    let code = |x: &MatrixOverA| fa.encode_matrix(x);
    let arrows: Vec<_> = q.arrows.iter().map(|(f, g)| Ok((code(f)?, code(g)?))).collect::<Result<_>>()?;
    let arrows2: Vec<_> = q2.arrows.iter().map(|(f, g)| Ok((code(f)?, code(g)?))).collect::<Result<_>>()?;
    let gm = fa.general_linear(q.m, budget)?;
    let gn = fa.general_linear(q.n, budget)?;
    budget.check_estimate(gm.len() as u64 * gn.len() as u64)?;
    let mut out = Vec::new();
    for phi in gm.iter() {
        let targets: Vec<_> = arrows2.iter().map(|(f2, g2)| (f2.mul(r, phi).unwrap(), g2.mul(r, phi).unwrap())).collect();
        for psi in gn.iter() {
            budget.charge(1)?;
            let ok = arrows
                .iter()
                .zip(&targets)
                .all(|((f, g), (tf, tg))| &psi.mul(r, f).unwrap() == tf && &psi.mul(r, g).unwrap() == tg);
            if ok {
                out.push(DAMorphism { phi: fa.decode_matrix(phi), psi: fa.decode_matrix(psi) });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::{is_isometric_bruteforce, transform};

    fn f(p: u32) -> Arc<InvolutiveAlgebra> {
        Arc::new(InvolutiveAlgebra::prime_field(p).unwrap())
    }

    fn one_by_one(a: &Arc<InvolutiveAlgebra>, x: i64, y: i64) -> DoubleArrowObject {
        let s = |v| Matrix::from_fn(1, 1, |_, _| a.from_int(v));
        DoubleArrowObject::new(a.clone(), 1, 1, vec![(s(x), s(y))]).unwrap()
    }

    #[test]
    fn dual_of_self_dual_and_frobenius_object() {
        let q = one_by_one(&f(3), 1, 1);
        assert_eq!(dual_object(&q), q);
        let f9 = Arc::new(InvolutiveAlgebra::f9(true));
        let t = f9.element(&[0, 1]);
        let b = f9.element(&[1, 1]);
        let s = |x: &crate::algebra::AlgebraElement| Matrix::from_fn(1, 1, |_, _| x.clone());
        let q9 = DoubleArrowObject::new(f9.clone(), 1, 1, vec![(s(&t), s(&b))]).unwrap();
        let d = dual_object(&q9);
        assert_eq!(d.arrows()[0], (s(&f9.conj(&b)), s(&f9.conj(&t))));
        assert_eq!(dual_object(&d), q9);
        assert!(duality_axiom_holds(&q9).unwrap());
    }

    #[test]
    fn morphism_predicate() {
        let a = f(3);
        let (q1, q2) = (one_by_one(&a, 1, 1), one_by_one(&a, 2, 2));
        let s = |v| Matrix::from_fn(1, 1, |_, _| a.from_int(v));
        assert!(is_da_morphism(&q1, &q2, &s(1), &s(2)).unwrap());
        assert!(!is_da_morphism(&q1, &q2, &s(1), &s(1)).unwrap());
        let id = q1.identity();
        assert!(is_da_morphism(&q1, &q1, &id.phi, &id.psi).unwrap());
    }

    #[test]
    fn functor_examples() {
        let s = SesquilinearSystem::from_ints(f(3), &[&[1]]).unwrap();
        let h = functor_f(&s);
        assert_eq!(h.object(), &one_by_one(&f(3), 1, 1));
        assert!(h.defects().is_empty());
        let s5 = SesquilinearSystem::from_ints(f(5), &[&[2]]).unwrap();
        assert_eq!(functor_g(&functor_f(&s5)).unwrap(), s5);

        let a = f(3);
        let q = one_by_one(&a, 1, 1);
        let two = Matrix::from_fn(1, 1, |_, _| a.from_int(2));
        let h = HermitianDAForm::new(q, DAMorphism { phi: two.clone(), psi: two }, Sign::Plus).unwrap();
        assert_eq!(functor_g(&h).unwrap(), SesquilinearSystem::from_ints(f(3), &[&[2]]).unwrap());

        let n = SesquilinearSystem::from_ints(f(3), &[&[0, 1], &[0, 0]]).unwrap();
        let hn = functor_f(&n);
        assert!(hn.defects().is_empty());
        assert_eq!(hn.object().arrows()[0].1, hn.object().arrows()[0].0.transpose());
    }

    #[test]
    fn invalid_forms_are_rejected() {
        let a = f(3);
        let q = one_by_one(&a, 1, 2);
        let one = Matrix::from_fn(1, 1, |_, _| a.from_int(1));
        // xi2 * F = 1 but G^* xi1 = 2
        let err = HermitianDAForm::new(q, DAMorphism { phi: one.clone(), psi: one.clone() }, Sign::Plus);
        assert!(matches!(err, Err(Error::InvariantViolation(_))));
        let q0 = one_by_one(&a, 0, 0);
        let zero = Matrix::from_fn(1, 1, |_, _| a.from_int(0));
        let h = HermitianDAForm { object: q0, xi: DAMorphism { phi: zero.clone(), psi: zero }, epsilon: Sign::Plus };
        assert_eq!(h.defects(), vec![FormDefect::NotUnimodular]);
    }

    #[test]
    fn isometry_transport_through_f() {
        let b = Budget::unlimited();
        let f3 = |x| SesquilinearSystem::from_ints(f(3), &[&[x]]).unwrap();
        assert!(is_da_isometric_bruteforce(&functor_f(&f3(1)), &functor_f(&f3(2)), &b).unwrap().is_none());
        let f5 = |x| SesquilinearSystem::from_ints(f(5), &[&[x]]).unwrap();
        let (a, c) = (f5(4), f5(1));
        let p = is_isometric_bruteforce(&a, &c, &b).unwrap().unwrap();
        let fp = functor_f_map(&a, &p).unwrap();
        assert!(is_da_isometry(&functor_f(&a), &functor_f(&c), &fp).unwrap());
        let found = is_da_isometric_bruteforce(&functor_f(&a), &functor_f(&c), &b).unwrap().unwrap();
        assert_eq!(transform(&c, &functor_g_map(&found)).unwrap(), a);
    }

    #[test]
    fn hyperbolic_objects() {
        let a = f(3);
        let q = one_by_one(&a, 1, 1);
        for eps in [Sign::Plus, Sign::Minus] {
            let h = hyperbolic_da(&q, eps);
            assert!(h.defects().is_empty(), "{eps:?}");
            assert_eq!(h.object().source_rank(), 2);
        }
        let empty = DoubleArrowObject::new(a.clone(), 0, 0, vec![(Matrix::zeros(a.as_ref(), 0, 0), Matrix::zeros(a.as_ref(), 0, 0))]).unwrap();
        assert_eq!(hyperbolic_da(&empty, Sign::Plus).object().source_rank(), 0);
    }

    #[test]
    fn roundtrip_witness_is_isometry() {
        let s = SesquilinearSystem::from_ints(f(3), &[&[1, 2], &[0, 1]]).unwrap();
        let h = functor_f(&s);
        let w = roundtrip_witness(&h);
        let back = functor_f(&functor_g(&h).unwrap());
        assert!(is_da_isometry(&h, &back, &w).unwrap());
    }
}
