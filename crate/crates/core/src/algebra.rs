//! Finite-dimensional algebras with involution, presented by structure constants.

use std::sync::{Arc, OnceLock};

use num_rational::BigRational;
use serde::Serialize;

use crate::coded::FiniteAlgebra;
use crate::error::{Error, Result};
use crate::field::{BaseField, Field, FiniteField, Scalar};
use crate::matrix::Matrix;
use crate::ring::InvolutiveRing;

/// Coefficient vector of an algebra element in the algebra's basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlgebraElement(pub Vec<Scalar>);

impl AlgebraElement {
    pub fn coeffs(&self) -> &[Scalar] {
        &self.0
    }
}

pub type MatrixOverA = Matrix<AlgebraElement>;

/// An associative unital algebra `A` over a base field with an involution `sigma`.
///
/// `structure[(i*m + j)*m + k]` is the coefficient of `e_k` in `e_i e_j`;
/// column `j` of the involution matrix holds the coordinates of `sigma(e_j)`.
#[derive(Debug, Clone)]
pub struct InvolutiveAlgebra {
    base: BaseField,
    dim: usize,
    structure: Vec<Scalar>,
    unit: Vec<Scalar>,
    involution: Vec<Scalar>,
    coded: OnceLock<std::result::Result<Arc<FiniteAlgebra>, Error>>,
}

impl PartialEq for InvolutiveAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base
            && self.dim == other.dim
            && self.structure == other.structure
            && self.unit == other.unit
            && self.involution == other.involution
    }
}
impl Eq for InvolutiveAlgebra {}

/// A failed algebra axiom with the basis indices that witness it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "axiom", rename_all = "snake_case")]
pub enum Violation {
    Associativity { i: usize, j: usize, k: usize },
    Unit { i: usize },
    AntiMultiplicative { i: usize, j: usize },
    NotInvolutive { i: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

impl InvolutiveAlgebra {
    /// Builds an algebra from raw data, checking only shapes and field membership.
    /// Use [`validate_algebra`] for the axioms.
    pub fn new(
        base: BaseField,
        dim: usize,
        structure: Vec<Scalar>,
        unit: Vec<Scalar>,
        involution: Vec<Scalar>,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidAlgebra("dimension must be positive".into()));
        }
        if structure.len() != dim * dim * dim {
            return Err(Error::InvalidAlgebra(format!(
                "expected {} structure constants, got {}",
                dim * dim * dim,
                structure.len()
            )));
        }
        if unit.len() != dim {
            return Err(Error::InvalidAlgebra("unit has wrong length".into()));
        }
        if involution.len() != dim * dim {
            return Err(Error::InvalidAlgebra("involution matrix has wrong size".into()));
        }
        if let Some(s) = structure.iter().chain(&unit).chain(&involution).find(|s| !base.contains(s)) {
            return Err(Error::InvalidAlgebra(format!("{s:?} is not an element of {base:?}")));
        }
        Ok(InvolutiveAlgebra { base, dim, structure, unit, involution, coded: OnceLock::new() })
    }

    /// The base field itself, with trivial involution.
    pub fn field(base: BaseField) -> Self {
        let one = base.one();
        Self::new(base, 1, vec![one.clone()], vec![one.clone()], vec![one]).unwrap()
    }

    pub fn prime_field(p: u32) -> Result<Self> {
        Ok(Self::field(BaseField::prime(p)?))
    }

    pub fn rationals() -> Self {
        Self::field(BaseField::Rationals)
    }

    /// `F_p[t]/(modulus)` as an algebra of dimension `deg(modulus)` over `F_p`.
    /// With `frobenius`, the involution is `x -> x^(p^(e/2))` (requires even degree);
    /// otherwise it is the identity.
    pub fn finite_field(p: u32, modulus: Vec<u32>, frobenius: bool) -> Result<Self> {
        let big = Arc::new(FiniteField::new(p, modulus)?);
        let e = big.degree() as usize;
        if frobenius && !e.is_multiple_of(2) {
            return Err(Error::InvalidAlgebra(format!(
                "Frobenius of order 2 needs even degree, got {e}"
            )));
        }
        let base = BaseField::prime(p)?;
        let basis: Vec<u32> = (0..e)
            .map(|i| {
                let mut d = vec![0u32; e];
                d[i] = 1;
                big.from_digits(&d)
            })
            .collect();
        let fin = |code: u32| -> Vec<Scalar> {
            big.digits(code).into_iter().map(Scalar::Fin).collect()
        };
        let mut structure = Vec::with_capacity(e * e * e);
        for i in 0..e {
            for j in 0..e {
                structure.extend(fin(big.mul_code(basis[i], basis[j])));
            }
        }
        let exponent = if frobenius { (p as u64).pow((e / 2) as u32) } else { 1 };
        let images: Vec<Vec<Scalar>> = basis.iter().map(|&b| fin(big.pow(b, exponent))).collect();
        let involution = (0..e * e).map(|idx| images[idx % e][idx / e].clone()).collect();
        Self::new(base, e, structure, fin(big.constant(1)), involution)
    }

    /// `F_9 = F_3[t]/(t^2 + 1)` over `F_3`, with or without the Frobenius involution.
    pub fn f9(frobenius: bool) -> Self {
        Self::finite_field(3, vec![1, 0, 1], frobenius).unwrap()
    }

    /// `Q(sqrt d)` as a 2-dimensional algebra over `Q` with conjugation, basis `(1, sqrt d)`.
    pub fn quadratic_over_rationals(d: BigRational) -> Result<Self> {
        crate::field::QuadraticField::new(d.clone())?;
        let q = |n: i64| Scalar::Rat(BigRational::from_integer(n.into()));
        let z = || q(0);
        let d = Scalar::Rat(d);
        // 1*1 = 1, 1*r = r, r*1 = r, r*r = d
        let structure = vec![q(1), z(), z(), q(1), z(), q(1), d, z()];
        Self::new(BaseField::Rationals, 2, structure, vec![q(1), z()], vec![q(1), z(), z(), q(-1)])
    }

    /// The full matrix algebra `M_r(K)` with the transpose involution, basis `E_ij` at `i*r + j`.
    pub fn matrix_algebra(base: BaseField, r: usize) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidAlgebra("matrix size must be positive".into()));
        }
        let m = r * r;
        let (zero, one) = (base.zero(), base.one());
        let mut structure = vec![zero.clone(); m * m * m];
        for a in 0..r {
            for b in 0..r {
                for c in 0..r {
                    // E_ab E_bc = E_ac
                    structure[((a * r + b) * m + (b * r + c)) * m + (a * r + c)] = one.clone();
                }
            }
        }
        let unit = (0..m).map(|i| if i / r == i % r { one.clone() } else { zero.clone() }).collect();
        let mut involution = vec![zero; m * m];
        for a in 0..r {
            for b in 0..r {
                // sigma(E_ab) = E_ba
                involution[(b * r + a) * m + (a * r + b)] = one.clone();
            }
        }
        Self::new(base, m, structure, unit, involution)
    }

    /// `K x K` with the exchange involution `(a, b) -> (b, a)`.
    pub fn exchange(base: BaseField) -> Self {
        let (z, o) = (base.zero(), base.one());
        let structure = vec![o.clone(), z.clone(), z.clone(), z.clone(), z.clone(), z.clone(), z.clone(), o.clone()];
        let unit = vec![o.clone(), o.clone()];
        let involution = vec![z.clone(), o.clone(), o, z];
        Self::new(base, 2, structure, unit, involution).unwrap()
    }

    /// The quaternion algebra `(a, b)_K` with basis `1, i, j, k` and canonical involution.
    pub fn quaternion(base: BaseField, a: i64, b: i64) -> Result<Self> {
        let z = base.zero();
        let c = |n: i64| base.from_int(n);
        let mut s = vec![z.clone(); 64];
        let mut put = |x: usize, y: usize, k: usize, v: Scalar| s[(x * 4 + y) * 4 + k] = v;
        for x in 0..4 {
            put(0, x, x, c(1));
            if x > 0 {
                put(x, 0, x, c(1));
            }
        }
        put(1, 1, 0, c(a));
        put(1, 2, 3, c(1));
        put(1, 3, 2, c(a));
        put(2, 1, 3, c(-1));
        put(2, 2, 0, c(b));
        put(2, 3, 1, c(-b));
        put(3, 1, 2, c(-a));
        put(3, 2, 1, c(b));
        put(3, 3, 0, c(-a * b));
        let unit = vec![c(1), z.clone(), z.clone(), z.clone()];
        let involution = (0..16)
            .map(|idx| {
                let (i, j) = (idx / 4, idx % 4);
                if i != j {
                    z.clone()
                } else if i == 0 {
                    c(1)
                } else {
                    c(-1)
                }
            })
            .collect();
        Self::new(base, 4, s, unit, involution)
    }

    /// Same multiplication with a different involution matrix.
    pub fn with_involution(&self, involution: Vec<Scalar>) -> Result<Self> {
        Self::new(self.base.clone(), self.dim, self.structure.clone(), self.unit.clone(), involution)
    }

    pub fn base_field(&self) -> &BaseField {
        &self.base
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn structure_constants(&self) -> &[Scalar] {
        &self.structure
    }

    pub fn unit(&self) -> AlgebraElement {
        AlgebraElement(self.unit.clone())
    }

    pub fn involution_matrix(&self) -> Matrix<Scalar> {
        Matrix::new(self.dim, self.dim, self.involution.clone()).unwrap()
    }

    /// The involution is trivial.
    pub fn has_trivial_involution(&self) -> bool {
        (0..self.dim).all(|i| {
            (0..self.dim).all(|j| {
                let v = &self.involution[i * self.dim + j];
                if i == j {
                    *v == self.base.one()
                } else {
                    self.base.is_zero(v)
                }
            })
        })
    }

    pub fn basis_element(&self, i: usize) -> AlgebraElement {
        AlgebraElement(
            (0..self.dim).map(|k| if k == i { self.base.one() } else { self.base.zero() }).collect(),
        )
    }

    /// Element with integer coefficients (reduced into the base field).
    pub fn element(&self, coeffs: &[i64]) -> AlgebraElement {
        assert_eq!(coeffs.len(), self.dim, "coefficient count must equal the dimension");
        AlgebraElement(coeffs.iter().map(|&c| self.base.from_int(c)).collect())
    }

    pub fn check_element(&self, a: &AlgebraElement) -> Result<()> {
        if a.0.len() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "element has {} coordinates, algebra has dimension {}",
                a.0.len(),
                self.dim
            )));
        }
        if a.0.iter().any(|s| !self.base.contains(s)) {
            return Err(Error::DimensionMismatch("coordinate outside the base field".into()));
        }
        Ok(())
    }

    pub fn check_matrix(&self, m: &MatrixOverA) -> Result<()> {
        m.data().iter().try_for_each(|a| self.check_element(a))
    }

    /// `sigma(a)`.
    pub fn apply_involution(&self, a: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_element(a)?;
        Ok(self.conj(a))
    }

    /// Table-driven copy of this algebra; requires a finite base field.
    pub fn finite(&self) -> Result<Arc<FiniteAlgebra>> {
        self.coded.get_or_init(|| FiniteAlgebra::build(self).map(Arc::new)).clone()
    }

    /// Every element, in lexicographic order of coefficient vectors.
    pub fn enumerate_elements(&self) -> Result<impl Iterator<Item = AlgebraElement> + '_> {
        let q = self.base.order().ok_or(Error::InfiniteBase)?;
        let total = q.checked_pow(self.dim as u32).ok_or(Error::BudgetExceeded {
            estimate: u64::MAX,
            limit: u64::MAX,
        })?;
        let m = self.dim;
        Ok((0..total).map(move |mut code| {
            let mut c = vec![Scalar::Fin(0); m];
            for slot in c.iter_mut().rev() {
                *slot = Scalar::Fin((code % q) as u32);
                code /= q;
            }
            AlgebraElement(c)
        }))
    }

    /// Invertible `n x n` matrices in lexicographic order of their entry sequence.
    pub fn enumerate_units(
        &self,
        n: usize,
        budget: &crate::budget::Budget,
    ) -> Result<impl Iterator<Item = MatrixOverA> + '_> {
        let fa = self.finite()?;
        let units = fa.general_linear(n, budget)?;
        Ok((0..units.len()).map(move |i| fa.decode_matrix(&units[i])))
    }
}

impl InvolutiveRing for InvolutiveAlgebra {
    type Elem = AlgebraElement;
    type Base = BaseField;

    fn base(&self) -> &BaseField {
        &self.base
    }
    fn dim(&self) -> usize {
        self.dim
    }
    fn zero(&self) -> AlgebraElement {
        AlgebraElement(vec![self.base.zero(); self.dim])
    }
    fn one(&self) -> AlgebraElement {
        self.unit()
    }
    fn add(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        AlgebraElement(a.0.iter().zip(&b.0).map(|(x, y)| self.base.add(x, y)).collect())
    }
    fn neg(&self, a: &AlgebraElement) -> AlgebraElement {
        AlgebraElement(a.0.iter().map(|x| self.base.neg(x)).collect())
    }
    fn mul(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        let m = self.dim;
        let mut out = vec![self.base.zero(); m];
        for i in 0..m {
            if self.base.is_zero(&a.0[i]) {
                continue;
            }
            for j in 0..m {
                if self.base.is_zero(&b.0[j]) {
                    continue;
                }
                let ab = self.base.mul(&a.0[i], &b.0[j]);
                let row = &self.structure[(i * m + j) * m..(i * m + j + 1) * m];
                for (k, c) in row.iter().enumerate() {
                    if !self.base.is_zero(c) {
                        out[k] = self.base.add(&out[k], &self.base.mul(&ab, c));
                    }
                }
            }
        }
        AlgebraElement(out)
    }
    fn conj(&self, a: &AlgebraElement) -> AlgebraElement {
        let m = self.dim;
        AlgebraElement(
            (0..m)
                .map(|i| {
                    (0..m).fold(self.base.zero(), |acc, j| {
                        self.base.add(&acc, &self.base.mul(&self.involution[i * m + j], &a.0[j]))
                    })
                })
                .collect(),
        )
    }
    fn is_zero(&self, a: &AlgebraElement) -> bool {
        a.0.iter().all(|x| self.base.is_zero(x))
    }
    fn coords(&self, a: &AlgebraElement) -> Vec<Scalar> {
        a.0.clone()
    }
    fn from_coords(&self, c: &[Scalar]) -> AlgebraElement {
        AlgebraElement(c.to_vec())
    }
}

/// Checks associativity, the unit, anti-multiplicativity of the involution and
/// `sigma^2 = id` on all basis elements. Additivity holds because the involution is a matrix.
pub fn validate_algebra(a: &InvolutiveAlgebra) -> ValidationReport {
    let m = a.dimension();
    let e: Vec<AlgebraElement> = (0..m).map(|i| a.basis_element(i)).collect();
    let one = a.unit();
    let mut violations = Vec::new();
    for i in 0..m {
        for j in 0..m {
            let ij = a.mul(&e[i], &e[j]);
            for k in 0..m {
                if a.mul(&ij, &e[k]) != a.mul(&e[i], &a.mul(&e[j], &e[k])) {
                    violations.push(Violation::Associativity { i, j, k });
                }
            }
        }
    }
    for i in 0..m {
        if a.mul(&one, &e[i]) != e[i] || a.mul(&e[i], &one) != e[i] {
            violations.push(Violation::Unit { i });
        }
    }
    for i in 0..m {
        for j in 0..m {
            let lhs = a.conj(&a.mul(&e[i], &e[j]));
            let rhs = a.mul(&a.conj(&e[j]), &a.conj(&e[i]));
            if lhs != rhs {
                violations.push(Violation::AntiMultiplicative { i, j });
            }
        }
    }
    for i in 0..m {
        if a.conj(&a.conj(&e[i])) != e[i] {
            violations.push(Violation::NotInvolutive { i });
        }
    }
    ValidationReport { violations }
}

/// The shipped algebra constructors over small fields, used by axiom suites.
pub fn shipped_algebras() -> Vec<(&'static str, InvolutiveAlgebra)> {
    let f3 = BaseField::prime(3).unwrap();
    let f5 = BaseField::prime(5).unwrap();
    let two = BigRational::from_integer(2.into());
    vec![
        ("F3", InvolutiveAlgebra::prime_field(3).unwrap()),
        ("F5", InvolutiveAlgebra::prime_field(5).unwrap()),
        ("Q", InvolutiveAlgebra::rationals()),
        ("F9/F3 identity", InvolutiveAlgebra::f9(false)),
        ("F9/F3 Frobenius", InvolutiveAlgebra::f9(true)),
        ("F27/F3 identity", InvolutiveAlgebra::finite_field(3, vec![2, 2, 0, 1], false).unwrap()),
        ("Q(sqrt 2) conjugation", InvolutiveAlgebra::quadratic_over_rationals(two).unwrap()),
        ("M2(F3) transpose", InvolutiveAlgebra::matrix_algebra(f3.clone(), 2).unwrap()),
        ("F3 x F3 exchange", InvolutiveAlgebra::exchange(f3.clone())),
        ("F5 x F5 exchange", InvolutiveAlgebra::exchange(f5)),
        ("(-1,-1)_F3 canonical", InvolutiveAlgebra::quaternion(f3, -1, -1).unwrap()),
        (
            "(-1,-1)_Q canonical",
            InvolutiveAlgebra::quaternion(BaseField::Rationals, -1, -1).unwrap(),
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_algebras_validate() {
        for (name, a) in shipped_algebras() {
            let report = validate_algebra(&a);
            assert!(report.passed(), "{name}: {:?}", report.violations);
        }
    }

    #[test]
    fn f3_trivial() {
        let a = InvolutiveAlgebra::prime_field(3).unwrap();
        assert!(validate_algebra(&a).passed());
        assert!(a.has_trivial_involution());
        let x = a.element(&[2]);
        assert_eq!(a.apply_involution(&x).unwrap(), x);
    }

    #[test]
    fn f9_frobenius_is_cubing() {
        let a = InvolutiveAlgebra::f9(true);
        let t = a.basis_element(1);
        let t3 = a.mul(&t, &a.mul(&t, &t));
        assert_eq!(a.apply_involution(&t).unwrap(), t3);
        // t^2 = -1 so t^3 = -t
        assert_eq!(t3, a.element(&[0, -1]));
        assert!(!a.has_trivial_involution());
    }

    #[test]
    fn f9_sigma_is_multiplicative_and_anti_multiplicative() {
        let a = InvolutiveAlgebra::f9(true);
        let els: Vec<_> = a.enumerate_elements().unwrap().collect();
        assert_eq!(els.len(), 9);
        for x in &els {
            for y in &els {
                let lhs = a.conj(&a.mul(x, y));
                assert_eq!(lhs, a.mul(&a.conj(x), &a.conj(y)));
                assert_eq!(lhs, a.mul(&a.conj(y), &a.conj(x)));
            }
        }
    }

    #[test]
    fn quadratic_conjugation() {
        let a = InvolutiveAlgebra::quadratic_over_rationals(BigRational::from_integer(2.into())).unwrap();
        let x = a.element(&[1, 1]);
        assert_eq!(a.apply_involution(&x).unwrap(), a.element(&[1, -1]));
        assert!(a.apply_involution(&AlgebraElement(vec![])).is_err());
    }

    #[test]
    fn broken_structure_constants_are_reported() {
        // F9 with e1*e1 changed from -1 to +1 on one side only breaks associativity
        let good = InvolutiveAlgebra::f9(false);
        let mut s = good.structure_constants().to_vec();
        // e0 * e1 := e0 (instead of e1)
        s[2] = Scalar::Fin(1);
        s[2 + 1] = Scalar::Fin(0);
        let bad = InvolutiveAlgebra::new(
            good.base_field().clone(),
            2,
            s,
            good.unit().0,
            good.involution_matrix().into_data(),
        )
        .unwrap();
        let report = validate_algebra(&bad);
        assert!(!report.passed());
        assert!(report.violations.iter().any(|v| matches!(v, Violation::Associativity { .. })));
        assert!(report.violations.contains(&Violation::Unit { i: 1 }));
    }

    #[test]
    fn non_anti_multiplicative_involution_is_reported() {
        // transpose composed with nothing is fine; the identity on M2 is not anti-multiplicative
        let m2 = InvolutiveAlgebra::matrix_algebra(BaseField::prime(3).unwrap(), 2).unwrap();
        let id = Matrix::identity(&InvolutiveAlgebra::prime_field(3).unwrap(), 4)
            .into_data()
            .into_iter()
            .map(|x| x.0[0].clone())
            .collect();
        let bad = m2.with_involution(id).unwrap();
        let report = validate_algebra(&bad);
        assert!(report.violations.iter().any(|v| matches!(v, Violation::AntiMultiplicative { .. })));
        assert!(!report.violations.iter().any(|v| matches!(v, Violation::NotInvolutive { .. })));
    }

    #[test]
    fn element_enumeration_order_and_count() {
        let a = InvolutiveAlgebra::f9(true);
        let els: Vec<_> = a.enumerate_elements().unwrap().collect();
        assert_eq!(els[0], a.element(&[0, 0]));
        assert_eq!(els[1], a.element(&[0, 1]));
        assert_eq!(els[3], a.element(&[1, 0]));
        assert!(InvolutiveAlgebra::rationals().enumerate_elements().is_err());
    }

    #[test]
    fn shape_errors() {
        let k = BaseField::prime(3).unwrap();
        assert!(InvolutiveAlgebra::new(k.clone(), 0, vec![], vec![], vec![]).is_err());
        assert!(InvolutiveAlgebra::new(k.clone(), 1, vec![], vec![k.one()], vec![k.one()]).is_err());
        let q = Scalar::Rat(BigRational::from_integer(1.into()));
        assert!(InvolutiveAlgebra::new(k, 1, vec![q.clone()], vec![q.clone()], vec![q]).is_err());
    }
}
