//! Endomorphism rings with the involution induced by a unimodular form, transfer of
//! forms on powers `M^k` to forms over that ring, and the classes `H(~, E^x)`.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::algebra::{AlgebraElement, InvolutiveAlgebra, MatrixOverA};
use crate::budget::Budget;
use crate::double_arrow::{
    direct_sum, object_isomorphisms, underlying_object, DAMorphism, DoubleArrowObject, HermitianDAForm,
};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::forms::{
    classify_isometry_classes, is_epsilon_hermitian, is_unimodular, FormFilter, SesquilinearSystem, Sign,
};
use crate::linalg;
use crate::matrix::Matrix;
use crate::ring::InvolutiveRing;

/// The object whose endomorphisms are computed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Ambient {
    /// The free module `A^rank`.
    Module { algebra: Arc<InvolutiveAlgebra>, rank: usize },
    DoubleArrow(DoubleArrowObject),
}

/// A unimodular hermitian or skew-hermitian form on an ambient object.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AmbientForm {
    Module(SesquilinearSystem),
    DoubleArrow(HermitianDAForm),
}

/// An endomorphism as its list of component matrices: `[X]` on a module, `[phi, psi]`
/// on a double-arrow object.
pub type Endo = Vec<MatrixOverA>;

impl Ambient {
    pub fn algebra(&self) -> &Arc<InvolutiveAlgebra> {
        match self {
            Ambient::Module { algebra, .. } => algebra,
            Ambient::DoubleArrow(q) => q.algebra(),
        }
    }

    fn component_sizes(&self) -> Vec<usize> {
        match self {
            Ambient::Module { rank, .. } => vec![*rank],
            Ambient::DoubleArrow(q) => vec![q.source_rank(), q.target_rank()],
        }
    }

    /// `M^k`.
    pub fn power(&self, k: usize) -> Result<Ambient> {
        Ok(match self {
            Ambient::Module { algebra, rank } => Ambient::Module { algebra: algebra.clone(), rank: rank * k },
            Ambient::DoubleArrow(q) => {
                let a = q.algebra().as_ref();
                let empty = |_: &(MatrixOverA, MatrixOverA)| (Matrix::zeros(a, 0, 0), Matrix::zeros(a, 0, 0));
                let mut acc =
                    DoubleArrowObject::new(q.algebra().clone(), 0, 0, q.arrows().iter().map(empty).collect())?;
                for _ in 0..k {
                    acc = direct_sum(&acc, q)?;
                }
                Ambient::DoubleArrow(acc)
            }
        })
    }

    /// Residuals of the intertwining conditions, all zero exactly for endomorphisms.
    fn residuals(&self, e: &[MatrixOverA]) -> Vec<MatrixOverA> {
        match self {
            Ambient::Module { .. } => vec![],
            Ambient::DoubleArrow(q) => {
                let a = q.algebra().as_ref();
                let (phi, psi) = (&e[0], &e[1]);
                q.arrows()
                    .iter()
                    .flat_map(|(f, g)| {
                        [
                            psi.mul(a, f).unwrap().sub(a, &f.mul(a, phi).unwrap()).unwrap(),
                            psi.mul(a, g).unwrap().sub(a, &g.mul(a, phi).unwrap()).unwrap(),
                        ]
                    })
                    .collect()
            }
        }
    }
}

impl AmbientForm {
    pub fn ambient(&self) -> Ambient {
        match self {
            AmbientForm::Module(s) => Ambient::Module { algebra: s.algebra().clone(), rank: s.rank() },
            AmbientForm::DoubleArrow(h) => Ambient::DoubleArrow(h.object().clone()),
        }
    }

    /// The sign for which the form is hermitian, provided it is unimodular.
    pub fn sign(&self) -> Result<Sign> {
        match self {
            AmbientForm::DoubleArrow(h) => Ok(h.epsilon()),
            AmbientForm::Module(s) => {
                if s.index_count() != 1 || !is_unimodular(s) {
                    return Err(Error::InvariantViolation("expected a single unimodular form".into()));
                }
                [Sign::Plus, Sign::Minus]
                    .into_iter()
                    .find(|&e| is_epsilon_hermitian(s, e))
                    .ok_or_else(|| Error::InvariantViolation("form is neither hermitian nor skew-hermitian".into()))
            }
        }
    }
}

fn flatten(a: &InvolutiveAlgebra, e: &[MatrixOverA]) -> Vec<Scalar> {
    e.iter().flat_map(|x| x.data().iter().flat_map(|v| a.coords(v))).collect()
}

fn unflatten(a: &InvolutiveAlgebra, sizes: &[usize], v: &[Scalar]) -> Endo {
    let d = a.dimension();
    let mut pos = 0;
    sizes
        .iter()
        .map(|&s| {
            Matrix::from_fn(s, s, |_, _| {
                let x = a.from_coords(&v[pos..pos + d]);
                pos += d;
                x
            })
        })
        .collect()
}

/// `End(M)` as a K-algebra with a basis of endomorphisms and structure constants from composition.
#[derive(Debug, Clone)]
pub struct EndomorphismRing {
    ambient: Ambient,
    basis: Vec<Endo>,
    free: Vec<usize>,
    structure: Vec<Scalar>,
    unit: Vec<Scalar>,
}

pub fn endomorphism_ring(ambient: &Ambient) -> Result<EndomorphismRing> {
    let alg = ambient.algebra().clone();
    let a = alg.as_ref();
    let k = a.base_field();
    let d = a.dimension();
    let sizes = ambient.component_sizes();
    let unknowns: usize = sizes.iter().map(|s| s * s * d).sum();
    let columns: Vec<Vec<Scalar>> = (0..unknowns)
        .map(|p| {
            let mut v = vec![k.zero(); unknowns];
            v[p] = k.one();
            let e = unflatten(a, &sizes, &v);
            flatten(a, &ambient.residuals(&e))
        })
        .collect();
    let rows = columns.first().map_or(0, |c| c.len());
    let system = Matrix::from_fn(rows, unknowns, |i, j| columns[j][i].clone());
    let kernel = linalg::nullspace(k, &system);
    let free = linalg::free_columns(k, &system);
    let basis: Vec<Endo> = kernel.iter().map(|v| unflatten(a, &sizes, v)).collect();
    let mut ring = EndomorphismRing { ambient: ambient.clone(), basis, free, structure: vec![], unit: vec![] };
    let dim = ring.basis.len();
    let mut structure = Vec::with_capacity(dim * dim * dim);
    for i in 0..dim {
        for j in 0..dim {
            let prod = ring.compose(&ring.basis[i], &ring.basis[j]);
            structure.extend(ring.coordinates(&prod)?);
        }
    }
    ring.unit = ring.coordinates(&ring.identity())?;
    ring.structure = structure;
    Ok(ring)
}

impl EndomorphismRing {
    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
    pub fn basis(&self) -> &[Endo] {
        &self.basis
    }
    pub fn structure_constants(&self) -> &[Scalar] {
        &self.structure
    }
    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    fn alg(&self) -> &InvolutiveAlgebra {
        self.ambient.algebra().as_ref()
    }

    pub fn identity(&self) -> Endo {
        let a = self.alg();
        self.ambient.component_sizes().iter().map(|&s| Matrix::identity(a, s)).collect()
    }

    /// `f o g`.
    pub fn compose(&self, f: &[MatrixOverA], g: &[MatrixOverA]) -> Endo {
        let a = self.alg();
        f.iter().zip(g).map(|(x, y)| x.mul(a, y).unwrap()).collect()
    }

    /// Coordinates in the basis; fails for non-endomorphisms.
    pub fn coordinates(&self, e: &[MatrixOverA]) -> Result<Vec<Scalar>> {
        let a = self.alg();
        let sizes = self.ambient.component_sizes();
        if e.len() != sizes.len() || e.iter().zip(&sizes).any(|(x, &s)| x.rows() != s || x.cols() != s) {
            return Err(Error::DimensionMismatch("endomorphism has the wrong shape".into()));
        }
        let flat = flatten(a, e);
        let c: Vec<Scalar> = self.free.iter().map(|&p| flat[p].clone()).collect();
        if flatten(a, &self.from_coordinates(&c)) != flat {
            return Err(Error::InvariantViolation("not an endomorphism of the ambient object".into()));
        }
        Ok(c)
    }

    pub fn from_coordinates(&self, c: &[Scalar]) -> Endo {
        let a = self.alg();
        let k = a.base_field();
        let mut acc: Endo = self.ambient.component_sizes().iter().map(|&s| Matrix::zeros(a, s, s)).collect();
        for (cj, bj) in c.iter().zip(&self.basis) {
            if k.is_zero(cj) {
                continue;
            }
            let kc = a.scalar(cj);
            for (x, y) in acc.iter_mut().zip(bj) {
                *x = x.add(a, &y.scale_left(a, &kc)).unwrap();
            }
        }
        acc
    }
}

/// `End(M)` with the involution `f -> h0^{-1} f^* h0`, packaged as an algebra.
#[derive(Debug, Clone)]
pub struct InvolutiveEndomorphismRing {
    ring: EndomorphismRing,
    h0: AmbientForm,
    epsilon0: Sign,
    algebra: Arc<InvolutiveAlgebra>,
}

impl InvolutiveEndomorphismRing {
    pub fn ring(&self) -> &EndomorphismRing {
        &self.ring
    }
    pub fn h0(&self) -> &AmbientForm {
        &self.h0
    }
    pub fn epsilon0(&self) -> Sign {
        self.epsilon0
    }
    /// The presentation as an involutive algebra over the base field.
    pub fn algebra(&self) -> &Arc<InvolutiveAlgebra> {
        &self.algebra
    }

    /// `h0^{-1} f^* h0` on an endomorphism.
    pub fn involution(&self, f: &[MatrixOverA]) -> Result<Endo> {
        let a = self.ring.alg();
        match &self.h0 {
            AmbientForm::Module(s) => {
                let t0 = s.gram(0).conj_transpose(a);
                let t0_inv = t0.inverse(a)?;
                Ok(vec![t0_inv.mul(a, &f[0].conj_transpose(a).mul(a, &t0)?)?])
            }
            AmbientForm::DoubleArrow(h) => {
                let (e1, e2) = (&h.xi().phi, &h.xi().psi);
                let (phi, psi) = (&f[0], &f[1]);
                Ok(vec![
                    e1.inverse(a)?.mul(a, &psi.conj_transpose(a).mul(a, e1)?)?,
                    e2.inverse(a)?.mul(a, &phi.conj_transpose(a).mul(a, e2)?)?,
                ])
            }
        }
    }

    pub fn element(&self, f: &[MatrixOverA]) -> Result<AlgebraElement> {
        Ok(AlgebraElement(self.ring.coordinates(f)?))
    }

    pub fn endomorphism(&self, x: &AlgebraElement) -> Endo {
        self.ring.from_coordinates(&x.0)
    }
}

pub fn induced_involution(ring: &EndomorphismRing, h0: &AmbientForm) -> Result<InvolutiveEndomorphismRing> {
    if h0.ambient() != ring.ambient {
        return Err(Error::InvariantViolation("h0 lives on a different object".into()));
    }
    let epsilon0 = h0.sign()?;
    let dim = ring.dimension();
    if dim == 0 {
        return Err(Error::InvalidAlgebra("the endomorphism ring is zero".into()));
    }
    let mut out = InvolutiveEndomorphismRing {
        ring: ring.clone(),
        h0: h0.clone(),
        epsilon0,
        algebra: Arc::new(InvolutiveAlgebra::field(ring.alg().base_field().clone())),
    };
    let images: Vec<Vec<Scalar>> = ring
        .basis
        .iter()
        .map(|b| ring.coordinates(&out.involution(b)?))
        .collect::<Result<_>>()?;
    let involution = (0..dim * dim).map(|idx| images[idx % dim][idx / dim].clone()).collect();
    out.algebra = Arc::new(InvolutiveAlgebra::new(
        ring.alg().base_field().clone(),
        dim,
        ring.structure.clone(),
        ring.unit.clone(),
        involution,
    )?);
    Ok(out)
}

/// Blocks `(a, b)` of size `s x s` of every component.
fn block(comps: &[MatrixOverA], sizes: &[(usize, usize)], a: usize, b: usize) -> Endo {
    comps
        .iter()
        .zip(sizes)
        .map(|(x, &(r, c))| x.submatrix(a * r, b * c, r, c))
        .collect()
}

/// The form over `(E, sigma)` obtained from a form `h` on `M^k`: entry `(a, b)` is
/// `h0^{-1}` composed with block `(a, b)` of the dual of `h`.
pub fn transfer_form(e: &InvolutiveEndomorphismRing, k: usize, h: &AmbientForm) -> Result<SesquilinearSystem> {
    let ambient = e.ring.ambient();
    if h.ambient() != ambient.power(k)? {
        return Err(Error::InvariantViolation("the form does not live on a power of the ambient object".into()));
    }
    h.sign()?;
    let a = e.ring.alg();
    let entries: Vec<Endo> = match (&e.h0, h) {
        (AmbientForm::Module(s0), AmbientForm::Module(s)) => {
            let t0_inv = s0.gram(0).conj_transpose(a).inverse(a)?;
            let r = s0.rank();
            let g = s.gram(0);
            (0..k * k)
                .map(|idx| Ok(vec![t0_inv.mul(a, &block(std::slice::from_ref(g), &[(r, r)], idx / k, idx % k)[0])?]))
                .collect::<Result<_>>()?
        }
        (AmbientForm::DoubleArrow(h0), AmbientForm::DoubleArrow(hh)) => {
            let (m, n) = (h0.object().source_rank(), h0.object().target_rank());
            let e1_inv = h0.xi().phi.inverse(a)?;
            let e2_inv = h0.xi().psi.inverse(a)?;
            let x2s = hh.xi().psi.conj_transpose(a);
            let x1s = hh.xi().phi.conj_transpose(a);
            (0..k * k)
                .map(|idx| {
                    let (r, c) = (idx / k, idx % k);
                    let b = block(&[x2s.clone(), x1s.clone()], &[(n, m), (m, n)], r, c);
                    Ok(vec![e1_inv.mul(a, &b[0])?, e2_inv.mul(a, &b[1])?])
                })
                .collect::<Result<_>>()?
        }
        _ => return Err(Error::InvariantViolation("h0 and h are of different kinds".into())),
    };
    let coords: Vec<AlgebraElement> = entries.iter().map(|x| e.element(x)).collect::<Result<_>>()?;
    let gram = Matrix::new(k, k, coords)?;
    SesquilinearSystem::single(e.algebra.clone(), gram)
}

/// K-dimension of `Hom(Q, Q')` for double-arrow objects.
pub fn hom_dimension(q: &DoubleArrowObject, q2: &DoubleArrowObject) -> Result<usize> {
    let a = q.algebra().as_ref();
    let k = a.base_field();
    let d = a.dimension();
    let (m, n, m2, n2) = (q.source_rank(), q.target_rank(), q2.source_rank(), q2.target_rank());
    let unknowns = (m2 * m + n2 * n) * d;
    let mut cols = Vec::with_capacity(unknowns);
    for p in 0..unknowns {
        let mut v = vec![k.zero(); unknowns];
        v[p] = k.one();
        let split = m2 * m * d;
        let mk = |r, c, s: &[Scalar]| {
            let mut pos = 0;
            Matrix::from_fn(r, c, |_, _| {
                let x = a.from_coords(&s[pos..pos + d]);
                pos += d;
                x
            })
        };
        let phi = mk(m2, m, &v[..split]);
        let psi = mk(n2, n, &v[split..]);
        let res: Vec<Scalar> = q
            .arrows()
            .iter()
            .zip(q2.arrows())
            .flat_map(|((f, g), (f2, g2))| {
                let r1 = psi.mul(a, f).unwrap().sub(a, &f2.mul(a, &phi).unwrap()).unwrap();
                let r2 = psi.mul(a, g).unwrap().sub(a, &g2.mul(a, &phi).unwrap()).unwrap();
                flatten(a, &[r1, r2])
            })
            .collect();
        cols.push(res);
    }
    let rows = cols.first().map_or(0, |c| c.len());
    let system = Matrix::from_fn(rows, unknowns, |i, j| cols[j][i].clone());
    Ok(unknowns - linalg::rank(k, &system))
}

/// Representatives (orbit minima in code order) of symmetric units of `E` modulo
/// `f ~ sigma(g) f g`.
pub fn enumerate_h(e: &InvolutiveAlgebra) -> Result<Vec<AlgebraElement>> {
    let fa = e.finite()?;
    let size = fa.size();
    let units: Vec<u32> = (0..size).filter(|&g| (0..size).any(|y| fa.mul_c(g, y) == fa.one() && fa.mul_c(y, g) == fa.one())).collect();
    let mut seen = vec![false; size as usize];
    let mut reps = Vec::new();
    for &f in &units {
        if fa.conj_c(f) != f || seen[f as usize] {
            continue;
        }
        for &g in &units {
            seen[fa.mul_c(fa.conj_c(g), fa.mul_c(f, g)) as usize] = true;
        }
        reps.push(fa.decode(f));
    }
    Ok(reps)
}

/// Index in `reps` of the class of a symmetric unit.
fn h_class(e: &InvolutiveAlgebra, reps: &[AlgebraElement], f: &AlgebraElement) -> Result<usize> {
    let fa = e.finite()?;
    let fc = fa.encode(f)?;
    let size = fa.size();
    for (i, r) in reps.iter().enumerate() {
        let rc = fa.encode(r)?;
        if (0..size).any(|g| fa.mul_c(fa.conj_c(g), fa.mul_c(rc, g)) == fc && is_unit(&fa, g)) {
            return Ok(i);
        }
    }
    Err(Error::InvariantViolation("element is not a symmetric unit".into()))
}

fn is_unit(fa: &crate::coded::FiniteAlgebra, g: u32) -> bool {
    (0..fa.size()).any(|y| fa.mul_c(g, y) == fa.one() && fa.mul_c(y, g) == fa.one())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BijectionReport {
    /// Isometry classes of systems whose underlying object is isomorphic to `Q0`.
    pub isometry_classes: Vec<SesquilinearSystem>,
    pub h_classes: Vec<AlgebraElement>,
    /// For each isometry class, the `H` class it maps to.
    pub image: Vec<usize>,
    /// Every choice of isomorphism gave the same `H` class.
    pub well_defined: bool,
    pub injective: bool,
    pub surjective: bool,
}

impl BijectionReport {
    pub fn is_bijection(&self) -> bool {
        self.well_defined && self.injective && self.surjective
    }
}

/// For `Q0 = q(V0)`, maps each isometry class of systems `V` with `q(V)` isomorphic to `Q0`
/// to the class of `eta0^{-1} eta_V` in `H(~, E^x)` and checks the map is a bijection.
/// Every isomorphism `Q0 -> q(V)` is tried to confirm the class does not depend on it.
pub fn verify_class_bijection(v0: &SesquilinearSystem, budget: &Budget) -> Result<BijectionReport> {
    let algebra = v0.algebra();
    let q0 = underlying_object(v0);
    let h0 = crate::double_arrow::functor_f(v0);
    let ring = endomorphism_ring(&Ambient::DoubleArrow(q0.clone()))?;
    let e = induced_involution(&ring, &AmbientForm::DoubleArrow(h0))?;
    let h_classes = enumerate_h(e.algebra())?;
    let a = algebra.as_ref();
    let mut isometry_classes = Vec::new();
    let mut image = Vec::new();
    let mut well_defined = true;
    for s in classify_isometry_classes(algebra, v0.rank(), v0.index_count(), FormFilter::All, budget)? {
        let lambdas = object_isomorphisms(&q0, &underlying_object(&s), budget)?;
        if lambdas.is_empty() {
            continue;
        }
        let mut classes = BTreeSet::new();
        for DAMorphism { phi, psi } in &lambdas {
            // eta_V = lambda^* xi lambda with xi = (id, id)
            let f = vec![psi.conj_transpose(a).mul(a, phi)?, phi.conj_transpose(a).mul(a, psi)?];
            let x = e.element(&f)?;
            classes.insert(h_class(e.algebra(), &h_classes, &x)?);
        }
        well_defined &= classes.len() == 1;
        image.push(*classes.iter().next().unwrap());
        isometry_classes.push(s);
    }
    let distinct: BTreeSet<usize> = image.iter().copied().collect();
    Ok(BijectionReport {
        injective: distinct.len() == image.len(),
        surjective: distinct.len() == h_classes.len(),
        isometry_classes,
        h_classes,
        image,
        well_defined,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::validate_algebra;
    use crate::double_arrow::functor_f;

    fn f(p: u32) -> Arc<InvolutiveAlgebra> {
        Arc::new(InvolutiveAlgebra::prime_field(p).unwrap())
    }

    fn obj(a: &Arc<InvolutiveAlgebra>, x: i64, y: i64) -> DoubleArrowObject {
        let s = |v| Matrix::from_fn(1, 1, |_, _| a.from_int(v));
        DoubleArrowObject::new(a.clone(), 1, 1, vec![(s(x), s(y))]).unwrap()
    }

    #[test]
    fn endomorphism_dimensions() {
        let a = f(3);
        let q = obj(&a, 1, 1);
        assert_eq!(endomorphism_ring(&Ambient::DoubleArrow(q.clone())).unwrap().dimension(), 1);
        assert_eq!(endomorphism_ring(&Ambient::DoubleArrow(obj(&a, 1, 0))).unwrap().dimension(), 1);
        let q2 = direct_sum(&q, &q).unwrap();
        assert_eq!(endomorphism_ring(&Ambient::DoubleArrow(q2)).unwrap().dimension(), 4);
        let m = endomorphism_ring(&Ambient::Module { algebra: Arc::new(InvolutiveAlgebra::f9(true)), rank: 2 }).unwrap();
        assert_eq!(m.dimension(), 8);
    }

    #[test]
    fn induced_involutions() {
        let a = f(3);
        let s = SesquilinearSystem::from_ints(a.clone(), &[&[1]]).unwrap();
        let h0 = AmbientForm::DoubleArrow(functor_f(&s));
        let e = induced_involution(&endomorphism_ring(&h0.ambient()).unwrap(), &h0).unwrap();
        assert!(e.algebra().has_trivial_involution());
        assert!(validate_algebra(e.algebra()).passed());

        let f9 = Arc::new(InvolutiveAlgebra::f9(true));
        let s9 = SesquilinearSystem::single(f9.clone(), Matrix::identity(f9.as_ref(), 1)).unwrap();
        let h9 = AmbientForm::Module(s9);
        let e9 = induced_involution(&endomorphism_ring(&h9.ambient()).unwrap(), &h9).unwrap();
        assert_eq!(e9.algebra().as_ref(), &InvolutiveAlgebra::f9(true));

        let bad = AmbientForm::Module(SesquilinearSystem::from_ints(a, &[&[0]]).unwrap());
        assert!(induced_involution(&endomorphism_ring(&bad.ambient()).unwrap(), &bad).is_err());
    }

    #[test]
    fn transfer_examples() {
        let a = f(3);
        let h0 = AmbientForm::Module(SesquilinearSystem::from_ints(a.clone(), &[&[1]]).unwrap());
        let e = induced_involution(&endomorphism_ring(&h0.ambient()).unwrap(), &h0).unwrap();
        let t1 = transfer_form(&e, 1, &h0).unwrap();
        assert_eq!(t1.gram(0), &Matrix::identity(e.algebra().as_ref(), 1));
        let h = AmbientForm::Module(SesquilinearSystem::diagonal(a.clone(), &[1, 2]).unwrap());
        let t = transfer_form(&e, 2, &h).unwrap();
        assert_eq!(t, SesquilinearSystem::diagonal(e.algebra().clone(), &[1, 2]).unwrap());
        assert!(transfer_form(&e, 3, &h).is_err());
    }

    #[test]
    fn h_classes() {
        assert_eq!(enumerate_h(&InvolutiveAlgebra::prime_field(3).unwrap()).unwrap().len(), 2);
        assert_eq!(enumerate_h(&InvolutiveAlgebra::prime_field(5).unwrap()).unwrap().len(), 2);
        assert_eq!(enumerate_h(&InvolutiveAlgebra::f9(true)).unwrap().len(), 1);
    }

    #[test]
    fn bijection_f3() {
        let s = SesquilinearSystem::from_ints(f(3), &[&[1]]).unwrap();
        let r = verify_class_bijection(&s, &Budget::unlimited()).unwrap();
        assert_eq!(r.isometry_classes.len(), 2);
        assert!(r.is_bijection());
    }

    #[test]
    fn hom_dimension_of_powers() {
        let a = f(3);
        let q = obj(&a, 1, 1);
        let q2 = direct_sum(&q, &q).unwrap();
        assert_eq!(hom_dimension(&q, &q2).unwrap(), 2);
        assert_eq!(hom_dimension(&q2, &q2).unwrap(), 4);
    }

    #[test]
    fn double_arrow_transfer_is_hermitian() {
        let a = f(3);
        let s0 = SesquilinearSystem::from_ints(a.clone(), &[&[1]]).unwrap();
        let h0 = AmbientForm::DoubleArrow(functor_f(&s0));
        let e = induced_involution(&endomorphism_ring(&h0.ambient()).unwrap(), &h0).unwrap();
        let h = AmbientForm::DoubleArrow(functor_f(&SesquilinearSystem::diagonal(a, &[1, 1]).unwrap()));
        let t = transfer_form(&e, 2, &h).unwrap();
        assert!(is_epsilon_hermitian(&t, Sign::Plus));
        assert!(is_unimodular(&t));
    }

    #[test]
    fn bijection_f5_and_f9() {
        let s5 = SesquilinearSystem::from_ints(f(5), &[&[1]]).unwrap();
        let r5 = verify_class_bijection(&s5, &Budget::unlimited()).unwrap();
        assert_eq!((r5.h_classes.len(), r5.isometry_classes.len()), (2, 2));
        assert!(r5.is_bijection());
        let f9 = Arc::new(InvolutiveAlgebra::f9(true));
        let s9 = SesquilinearSystem::single(f9.clone(), Matrix::identity(f9.as_ref(), 1)).unwrap();
        let r9 = verify_class_bijection(&s9, &Budget::unlimited()).unwrap();
        assert_eq!(r9.h_classes.len(), 1);
        assert!(r9.is_bijection());
    }
}
