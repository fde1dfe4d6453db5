//! Scalar extension along a finite field extension `L/K`, and exhaustive checks of
//! odd-degree descent for isometry and hyperbolicity.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::algebra::{InvolutiveAlgebra, MatrixOverA};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::field::{is_rational_square, BaseField, Field, FiniteField, Scalar};
use crate::matrix::Matrix;
use crate::ring::InvolutiveRing;
use crate::forms::{
    classify_isometry_classes, is_isometric_bruteforce, orthogonal_sum, FormFilter, ModuleMap, SesquilinearSystem,
    Sign,
};
use crate::transfer::{endomorphism_ring, induced_involution, transfer_form, Ambient, AmbientForm};
use crate::witt::is_standard_hyperbolic;

/// `L = K[t]/(modulus)` together with the embedding `K -> L`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldExtension {
    base: BaseField,
    degree: usize,
    /// Ascending coefficients over `K`, monic.
    modulus: Vec<Scalar>,
    target: BaseField,
}

impl FieldExtension {
    /// Supported: any degree over a prime field, degree 1 over any field, degree 2 over `Q`.
    pub fn new(base: BaseField, modulus: Vec<Scalar>) -> Result<Self> {
        if modulus.len() < 2 {
            return Err(Error::InvalidField("modulus must have degree >= 1".into()));
        }
        if modulus.iter().any(|c| !base.contains(c)) {
            return Err(Error::InvalidField("modulus coefficients are not in the base field".into()));
        }
        if *modulus.last().unwrap() != base.one() {
            return Err(Error::InvalidField("modulus must be monic".into()));
        }
        let degree = modulus.len() - 1;
        let target = if degree == 1 {
            base.clone()
        } else {
            match &base {
                BaseField::Finite(f) if f.degree() == 1 => {
                    let coeffs = modulus
                        .iter()
                        .map(|c| match c {
                            Scalar::Fin(x) => f.digits(*x)[0],
                            _ => unreachable!(),
                        })
                        .collect();
                    BaseField::Finite(Arc::new(FiniteField::new(f.characteristic(), coeffs)?))
                }
                BaseField::Rationals if degree == 2 => {
                    let (c, b) = match (&modulus[0], &modulus[1]) {
                        (Scalar::Rat(c), Scalar::Rat(b)) => (c.clone(), b.clone()),
                        _ => unreachable!(),
                    };
                    let disc = &b * &b - BigRational::from_integer(4.into()) * c;
                    if disc.is_zero() || (disc.is_positive() && is_rational_square(&disc)) {
                        return Err(Error::InvalidField("modulus is reducible over Q".into()));
                    }
                    BaseField::quadratic(disc)?
                }
                _ => {
                    return Err(Error::Unsupported(format!(
                        "extensions of degree {degree} over {base:?}"
                    )))
                }
            }
        };
        Ok(FieldExtension { base, degree, modulus, target })
    }

    /// `F_p -> F_p[t]/(modulus)`; `modulus` ascending and monic.
    pub fn finite(p: u32, modulus: Vec<u32>) -> Result<Self> {
        let base = BaseField::prime(p)?;
        let m = modulus.iter().map(|&c| base.from_int(c as i64)).collect();
        Self::new(base, m)
    }

    /// The extension of `F_p` of the given degree by its first irreducible modulus.
    pub fn of_degree(p: u32, degree: u32) -> Result<Self> {
        Self::finite(p, FiniteField::first_irreducible(p, degree)?)
    }

    pub fn base(&self) -> &BaseField {
        &self.base
    }
    pub fn target(&self) -> &BaseField {
        &self.target
    }
    pub fn degree(&self) -> usize {
        self.degree
    }
    pub fn modulus(&self) -> &[Scalar] {
        &self.modulus
    }

    pub fn embed(&self, s: &Scalar) -> Scalar {
        if self.degree == 1 {
            return s.clone();
        }
        match (&self.target, s) {
            (BaseField::Finite(l), Scalar::Fin(c)) => Scalar::Fin(l.constant(*c as i64)),
            (BaseField::Quadratic(_), Scalar::Rat(r)) => Scalar::Quad(r.clone(), BigRational::zero()),
            _ => panic!("scalar {s:?} is not in the base field"),
        }
    }

    fn require_odd(&self) -> Result<()> {
        if self.degree.is_multiple_of(2) {
            return Err(Error::EvenDegree(self.degree));
        }
        Ok(())
    }
}

/// `A` and `A_L = A (x)_K L` side by side, for transporting forms and maps.
#[derive(Debug, Clone)]
pub struct ScalarExtension {
    ext: FieldExtension,
    source: Arc<InvolutiveAlgebra>,
    target: Arc<InvolutiveAlgebra>,
}

impl ScalarExtension {
    pub fn new(source: Arc<InvolutiveAlgebra>, ext: &FieldExtension) -> Result<Self> {
        let target = Arc::new(extend_algebra(&source, ext)?);
        Ok(ScalarExtension { ext: ext.clone(), source, target })
    }
    pub fn extension(&self) -> &FieldExtension {
        &self.ext
    }
    pub fn source(&self) -> &Arc<InvolutiveAlgebra> {
        &self.source
    }
    pub fn target(&self) -> &Arc<InvolutiveAlgebra> {
        &self.target
    }

    pub fn matrix(&self, m: &MatrixOverA) -> MatrixOverA {
        m.map(|x| crate::algebra::AlgebraElement(x.0.iter().map(|c| self.ext.embed(c)).collect()))
    }

    pub fn form(&self, s: &SesquilinearSystem) -> Result<SesquilinearSystem> {
        if s.algebra().as_ref() != self.source.as_ref() {
            return Err(Error::AlgebraMismatch("form is over a different algebra".into()));
        }
        SesquilinearSystem::new(self.target.clone(), s.rank(), s.grams().iter().map(|g| self.matrix(g)).collect())
    }

    pub fn map(&self, f: &ModuleMap) -> ModuleMap {
        ModuleMap { matrix: self.matrix(&f.matrix) }
    }
}

/// `A_L`: the same structure constants read over `L`, involution `sigma (x) id`.
pub fn extend_algebra(a: &InvolutiveAlgebra, ext: &FieldExtension) -> Result<InvolutiveAlgebra> {
    if a.base_field() != ext.base() {
        return Err(Error::AlgebraMismatch("algebra base differs from the extension base".into()));
    }
    let e = |v: &[Scalar]| v.iter().map(|c| ext.embed(c)).collect::<Vec<_>>();
    InvolutiveAlgebra::new(
        ext.target().clone(),
        a.dimension(),
        e(a.structure_constants()),
        e(a.unit().coeffs()),
        e(a.involution_matrix().data()),
    )
}

pub fn extend_form(s: &SesquilinearSystem, ext: &FieldExtension) -> Result<SesquilinearSystem> {
    ScalarExtension::new(s.algebra().clone(), ext)?.form(s)
}

/// Congruence-invariant fingerprint: rank of every `K`-combination `sum c_i S_i`.
fn rank_profile(s: &SesquilinearSystem) -> Result<Vec<usize>> {
    let a = s.algebra().as_ref();
    let fa = a.finite()?;
    let scalars: Vec<Scalar> = a.base_field().elements()?.collect();
    let mut out = Vec::new();
    let mut combos: Vec<Vec<&Scalar>> = vec![vec![]];
    for _ in 0..s.index_count() {
        combos = combos.into_iter().flat_map(|c| scalars.iter().map(move |x| [c.clone(), vec![x]].concat())).collect();
    }
    for c in combos {
        let mut acc = Matrix::zeros(a, s.rank(), s.rank());
        for (x, g) in c.iter().zip(s.grams()) {
            acc = acc.add(a, &g.scale_left(a, &a.scalar(x)))?;
        }
        out.push(fa.rr_rank(&fa.encode_matrix(&acc)?));
    }
    Ok(out)
}

/// A pair of base-level classes that become isometric after extension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Collapse {
    pub left: SesquilinearSystem,
    pub right: SesquilinearSystem,
    /// Isometry over `A_L` from the extension of `left` to that of `right`.
    pub witness: ModuleMap,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescentReport {
    pub degree: usize,
    pub rank_bound: usize,
    pub index_count: usize,
    pub classes: usize,
    pub pairs_checked: usize,
    pub collapses: Vec<Collapse>,
}

/// Classifies systems over `A` up to `rank_bound` and tests every pair of distinct
/// classes of equal rank for isometry over `A_L`. Works for any degree.
pub fn descent_sweep(
    algebra: &Arc<InvolutiveAlgebra>,
    ext: &FieldExtension,
    rank_bound: usize,
    count: usize,
    budget: &Budget,
) -> Result<DescentReport> {
    let se = ScalarExtension::new(algebra.clone(), ext)?;
    let mut classes = 0;
    let mut pairs = Vec::new();
    for rank in 0..=rank_bound {
        let reps = classify_isometry_classes(algebra, rank, count, FormFilter::All, budget)?;
        classes += reps.len();
        let mut buckets: BTreeMap<Vec<usize>, Vec<SesquilinearSystem>> = BTreeMap::new();
        for r in reps {
            buckets.entry(rank_profile(&r)?).or_default().push(r);
        }
        for bucket in buckets.values() {
            for i in 0..bucket.len() {
                for j in i + 1..bucket.len() {
                    pairs.push((bucket[i].clone(), bucket[j].clone()));
                }
            }
        }
    }
    let results: Vec<Option<Collapse>> = pairs
        .par_iter()
        .map(|(a, b)| {
            let found = is_isometric_bruteforce(&se.form(b)?, &se.form(a)?, budget)?;
            Ok(found.map(|witness| Collapse { left: a.clone(), right: b.clone(), witness }))
        })
        .collect::<Result<_>>()?;
    Ok(DescentReport {
        degree: ext.degree(),
        rank_bound,
        index_count: count,
        classes,
        pairs_checked: pairs.len(),
        collapses: results.into_iter().flatten().collect(),
    })
}

/// Odd-degree descent: systems isometric over `A_L` are already isometric over `A`.
/// Every collapse in the report is a counterexample.
pub fn springer_descent_check(
    algebra: &Arc<InvolutiveAlgebra>,
    ext: &FieldExtension,
    rank_bound: usize,
    count: usize,
    budget: &Budget,
) -> Result<DescentReport> {
    ext.require_odd()?;
    descent_sweep(algebra, ext, rank_bound, count, budget)
}

/// One instance of the transfer/extension square.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareInstance {
    pub h0: SesquilinearSystem,
    pub h: SesquilinearSystem,
    /// The two presentations of `End(M_L)` coincide.
    pub rings_agree: bool,
    /// Isometry from extend-then-transfer to transfer-then-extend.
    pub witness: Option<ModuleMap>,
}

impl SquareInstance {
    pub fn commutes(&self) -> bool {
        self.rings_agree && self.witness.is_some()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestrictionReport {
    pub degree: usize,
    pub rank_bound: usize,
    pub epsilon: Sign,
    pub forms_checked: usize,
    /// Forms hyperbolic over `A_L` but not over `A`.
    pub injectivity_violations: Vec<SesquilinearSystem>,
    /// Hyperbolic forms over `A` whose extension was not found hyperbolic.
    pub hyperbolicity_not_preserved: Vec<SesquilinearSystem>,
    /// Pairs where extension failed to commute with orthogonal sum.
    pub sum_violations: Vec<(SesquilinearSystem, SesquilinearSystem)>,
    pub square: Vec<SquareInstance>,
}

impl RestrictionReport {
    pub fn passed(&self) -> bool {
        self.injectivity_violations.is_empty()
            && self.hyperbolicity_not_preserved.is_empty()
            && self.sum_violations.is_empty()
            && self.square.iter().all(SquareInstance::commutes)
    }
}

/// Checks on unimodular `eps`-hermitian forms up to `rank_bound`:
/// hyperbolic over `A_L` implies hyperbolic over `A`; extension preserves sums and
/// hyperbolicity; and transfer along `M = A^1` commutes with extension for `N = M^k`,
/// `k <= square_rank`.
pub fn restriction_map_check(
    algebra: &Arc<InvolutiveAlgebra>,
    ext: &FieldExtension,
    rank_bound: usize,
    eps: Sign,
    square_rank: usize,
    budget: &Budget,
) -> Result<RestrictionReport> {
    ext.require_odd()?;
    let se = ScalarExtension::new(algebra.clone(), ext)?;
    let mut by_rank = Vec::new();
    for rank in 0..=rank_bound {
        by_rank.push(classify_isometry_classes(algebra, rank, 1, FormFilter::UnimodularHermitian(eps), budget)?);
    }
    let all: Vec<&SesquilinearSystem> = by_rank.iter().flatten().collect();
    let verdicts: Vec<(bool, bool)> = all
        .par_iter()
        .map(|s| {
            let up = is_standard_hyperbolic(&se.form(s)?, eps, budget)?.is_some();
            let down = is_standard_hyperbolic(s, eps, budget)?.is_some();
            Ok((up, down))
        })
        .collect::<Result<_>>()?;
    let mut report = RestrictionReport {
        degree: ext.degree(),
        rank_bound,
        epsilon: eps,
        forms_checked: all.len(),
        injectivity_violations: vec![],
        hyperbolicity_not_preserved: vec![],
        sum_violations: vec![],
        square: vec![],
    };
    for (s, &(up, down)) in all.iter().zip(&verdicts) {
        if up && !down {
            report.injectivity_violations.push((*s).clone());
        }
        if down && !up {
            report.hyperbolicity_not_preserved.push((*s).clone());
        }
    }
    for a in &all {
        for b in &all {
            if a.rank() + b.rank() <= rank_bound
                && se.form(&orthogonal_sum(a, b)?)? != orthogonal_sum(&se.form(a)?, &se.form(b)?)?
            {
                report.sum_violations.push(((*a).clone(), (*b).clone()));
            }
        }
    }
    let rank_one = if rank_bound >= 1 {
        by_rank[1].clone()
    } else {
        classify_isometry_classes(algebra, 1, 1, FormFilter::UnimodularHermitian(eps), budget)?
    };
    for h0 in rank_one.iter() {
        for k in 1..=square_rank {
            let hs = classify_isometry_classes(algebra, k, 1, FormFilter::UnimodularHermitian(eps), budget)?;
            for h in hs {
                report.square.push(square_instance(&se, h0, &h, k, budget)?);
            }
        }
    }
    Ok(report)
}

/// Compares transfer-then-extend with extend-then-transfer for `h` on `M^k`, `M = A^1`.
pub fn square_instance(
    se: &ScalarExtension,
    h0: &SesquilinearSystem,
    h: &SesquilinearSystem,
    k: usize,
    budget: &Budget,
) -> Result<SquareInstance> {
    let ambient = Ambient::Module { algebra: se.source().clone(), rank: h0.rank() };
    let e = induced_involution(&endomorphism_ring(&ambient)?, &AmbientForm::Module(h0.clone()))?;
    let t = transfer_form(&e, k, &AmbientForm::Module(h.clone()))?;
    let e_ext = ScalarExtension::new(e.algebra().clone(), se.extension())?;
    let top = e_ext.form(&t)?;

    let ambient_l = Ambient::Module { algebra: se.target().clone(), rank: h0.rank() };
    let el = induced_involution(&endomorphism_ring(&ambient_l)?, &AmbientForm::Module(se.form(h0)?))?;
    let bottom = transfer_form(&el, k, &AmbientForm::Module(se.form(h)?))?;

    let rings_agree = el.algebra().as_ref() == e_ext.target().as_ref();
    let witness = if rings_agree {
        let bottom = SesquilinearSystem::new(e_ext.target().clone(), bottom.rank(), bottom.grams().to_vec())?;
        is_isometric_bruteforce(&bottom, &top, budget)?
    } else {
        None
    };
    Ok(SquareInstance { h0: h0.clone(), h: h.clone(), rings_agree, witness })
}

/// Ascending rational coefficients as scalars.
pub fn rational_modulus(coeffs: &[BigRational]) -> Vec<Scalar> {
    coeffs.iter().cloned().map(Scalar::Rat).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::validate_algebra;
    use crate::forms::is_epsilon_hermitian;
    use num_traits::One;

    fn f3() -> Arc<InvolutiveAlgebra> {
        Arc::new(InvolutiveAlgebra::prime_field(3).unwrap())
    }

    #[test]
    fn f27_from_f3() {
        let ext = FieldExtension::finite(3, vec![2, 2, 0, 1]).unwrap();
        let l = extend_algebra(&f3(), &ext).unwrap();
        assert_eq!(l.base_field().order(), Some(27));
        assert_eq!(l.dimension(), 1);
        assert!(validate_algebra(&l).passed());
        assert!(FieldExtension::finite(3, vec![1, 0, 0, 1]).is_err());
    }

    #[test]
    fn f9_frobenius_extended() {
        let ext = FieldExtension::finite(3, vec![2, 2, 0, 1]).unwrap();
        let l = extend_algebra(&InvolutiveAlgebra::f9(true), &ext).unwrap();
        assert!(validate_algebra(&l).passed());
        assert_eq!(l.finite().unwrap().size(), 729);
    }

    #[test]
    fn degree_one_is_a_copy() {
        let ext = FieldExtension::finite(3, vec![0, 1]).unwrap();
        let a = InvolutiveAlgebra::f9(true);
        assert_eq!(extend_algebra(&a, &ext).unwrap(), a);
        let q = FieldExtension::new(BaseField::Rationals, rational_modulus(&[BigRational::from_integer((-2).into()), BigRational::one()])).unwrap();
        assert_eq!(q.degree(), 1);
    }

    #[test]
    fn rational_quadratic() {
        let two = BigRational::from_integer(2.into());
        let m = rational_modulus(&[-two.clone(), BigRational::zero(), BigRational::one()]);
        let ext = FieldExtension::new(BaseField::Rationals, m).unwrap();
        assert_eq!(ext.target(), &BaseField::quadratic(BigRational::from_integer(8.into())).unwrap());
        let sq = rational_modulus(&[-BigRational::from_integer(4.into()), BigRational::zero(), BigRational::one()]);
        assert!(FieldExtension::new(BaseField::Rationals, sq).is_err());
    }

    #[test]
    fn forms_keep_properties() {
        let ext = FieldExtension::of_degree(3, 3).unwrap();
        let s = SesquilinearSystem::from_ints(f3(), &[&[1, 2], &[2, 0]]).unwrap();
        let t = extend_form(&s, &ext).unwrap();
        assert!(is_epsilon_hermitian(&t, Sign::Plus));
    }

    #[test]
    fn springer_rank_two_single() {
        let ext = FieldExtension::finite(3, vec![2, 2, 0, 1]).unwrap();
        let r = springer_descent_check(&f3(), &ext, 2, 1, &Budget::unlimited()).unwrap();
        assert!(r.collapses.is_empty());
        assert!(r.classes > 0);
    }

    #[test]
    fn even_degree_rejected_and_collapses() {
        let ext = FieldExtension::finite(3, vec![1, 0, 1]).unwrap();
        assert_eq!(
            springer_descent_check(&f3(), &ext, 1, 1, &Budget::unlimited()).unwrap_err(),
            Error::EvenDegree(2)
        );
        let r = descent_sweep(&f3(), &ext, 1, 1, &Budget::unlimited()).unwrap();
        let one = SesquilinearSystem::from_ints(f3(), &[&[1]]).unwrap();
        let two = SesquilinearSystem::from_ints(f3(), &[&[2]]).unwrap();
        assert!(r.collapses.iter().any(|c| c.left == one && c.right == two));
    }

    #[test]
    fn restriction_over_f3() {
        let ext = FieldExtension::finite(3, vec![2, 2, 0, 1]).unwrap();
        let r = restriction_map_check(&f3(), &ext, 2, Sign::Plus, 2, &Budget::unlimited()).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(!r.square.is_empty());
    }
}
