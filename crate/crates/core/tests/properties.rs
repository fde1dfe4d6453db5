use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use sesqui::algebra::{AlgebraElement, InvolutiveAlgebra, MatrixOverA};
use sesqui::budget::Budget;
use sesqui::double_arrow::{dual_object, functor_f, functor_g, is_da_isometry, roundtrip_witness, DoubleArrowObject};
use sesqui::extension::{extend_form, FieldExtension};
use sesqui::field::{squarefree_class, BaseField};
use sesqui::forms::{
    dual_map, evaluate, is_epsilon_hermitian, is_isometric_bruteforce, is_unimodular, left_adjoint, orthogonal_sum,
    right_adjoint, transform, ModuleMap, SesquilinearSystem, Sign,
};
use sesqui::invariants::{diagonalize, rational_symmetric_invariants};
use sesqui::matrix::Matrix;
use sesqui::ring::InvolutiveRing;
use sesqui::transfer::{endomorphism_ring, induced_involution, transfer_form, AmbientForm};
use sesqui::witt::{
    hermitian_iff_equal_arrows, hyperbolic_hermitian_standard, hyperbolic_sesquilinear, standard_hyperbolic_isometry,
    unimodular_iff_invertible, HyperbolicSpec,
};

fn algebras() -> Vec<Arc<InvolutiveAlgebra>> {
    let f3 = BaseField::prime(3).unwrap();
    vec![
        Arc::new(InvolutiveAlgebra::prime_field(5).unwrap()),
        Arc::new(InvolutiveAlgebra::f9(true)),
        Arc::new(InvolutiveAlgebra::matrix_algebra(f3.clone(), 2).unwrap()),
        Arc::new(InvolutiveAlgebra::quaternion(f3.clone(), -1, -1).unwrap()),
        Arc::new(InvolutiveAlgebra::exchange(f3)),
    ]
}

/// Small algebras where exhaustive isometry search over rank 2 stays cheap.
fn search_algebras() -> Vec<Arc<InvolutiveAlgebra>> {
    vec![
        Arc::new(InvolutiveAlgebra::prime_field(3).unwrap()),
        Arc::new(InvolutiveAlgebra::prime_field(5).unwrap()),
        Arc::new(InvolutiveAlgebra::f9(true)),
    ]
}

fn element(a: &InvolutiveAlgebra, seed: &[i64]) -> AlgebraElement {
    a.element(&seed[..a.dimension()])
}

fn matrix(a: &InvolutiveAlgebra, rows: usize, cols: usize, seeds: &[i64]) -> MatrixOverA {
    let m = a.dimension();
    Matrix::from_fn(rows, cols, |i, j| {
        let k = (i * cols + j) * m;
        a.element(&seeds[k..k + m])
    })
}

/// Enough coefficients for any matrix used below.
fn seeds() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(0i64..9, 64)
}

fn invertible(a: &InvolutiveAlgebra, n: usize, seeds: &[i64]) -> MatrixOverA {
    // upper unitriangular
    let one = a.one();
    let mut p = matrix(a, n, n, seeds);
    for i in 0..n {
        for j in 0..i {
            p.set(i, j, a.zero());
        }
        p.set(i, i, one.clone());
    }
    p
}

fn form(a: &Arc<InvolutiveAlgebra>, n: usize, seeds: &[i64]) -> SesquilinearSystem {
    SesquilinearSystem::single(a.clone(), matrix(a, n, n, seeds)).unwrap()
}

fn hermitian(a: &Arc<InvolutiveAlgebra>, n: usize, seeds: &[i64]) -> SesquilinearSystem {
    let x = matrix(a, n, n, seeds);
    let s = x.add(a.as_ref(), &x.conj_transpose(a.as_ref())).unwrap();
    SesquilinearSystem::single(a.clone(), s).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn involution_reverses_products(alg in 0usize..5, s in seeds()) {
        let a = &algebras()[alg];
        let x = matrix(a, 2, 3, &s);
        let y = matrix(a, 3, 2, &s[24..]);
        let xy = x.mul(a.as_ref(), &y).unwrap();
        let lhs = xy.conj_transpose(a.as_ref());
        let rhs = y.conj_transpose(a.as_ref()).mul(a.as_ref(), &x.conj_transpose(a.as_ref())).unwrap();
        prop_assert_eq!(lhs, rhs);
        let e = element(a, &s);
        prop_assert_eq!(a.conj(&a.conj(&e)), e);
    }

    #[test]
    fn inverse_is_two_sided(alg in 0usize..5, s in seeds()) {
        let a = &algebras()[alg];
        let p = invertible(a, 2, &s);
        let q = p.inverse(a.as_ref()).unwrap();
        let id = Matrix::identity(a.as_ref(), 2);
        prop_assert_eq!(p.mul(a.as_ref(), &q).unwrap(), id.clone());
        prop_assert_eq!(q.mul(a.as_ref(), &p).unwrap(), id);
    }

    #[test]
    fn evaluation_is_sesquilinear(alg in 0usize..5, s in seeds()) {
        let a = &algebras()[alg];
        let f = form(a, 2, &s);
        let x = [element(a, &s[20..]), element(a, &s[24..])];
        let y = [element(a, &s[28..]), element(a, &s[32..])];
        let (c, d) = (element(a, &s[36..]), element(a, &s[40..]));
        let xc: Vec<_> = x.iter().map(|v| a.mul(v, &c)).collect();
        let yd: Vec<_> = y.iter().map(|v| a.mul(v, &d)).collect();
        let lhs = evaluate(&f, 0, &xc, &yd).unwrap();
        let rhs = a.mul(&a.mul(&a.conj(&c), &evaluate(&f, 0, &x, &y).unwrap()), &d);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn right_adjoint_is_dual_of_left(alg in 0usize..5, s in seeds()) {
        let a = &algebras()[alg];
        let f = form(a, 3, &s);
        let l = left_adjoint(&f, 0).unwrap();
        prop_assert_eq!(right_adjoint(&f, 0).unwrap(), dual_map(a, &l));
    }

    #[test]
    fn sum_preserves_structure(alg in 0usize..5, s in seeds()) {
        let a = &algebras()[alg];
        let (h1, h2) = (hermitian(a, 1, &s), hermitian(a, 2, &s[8..]));
        let sum = orthogonal_sum(&h1, &h2).unwrap();
        prop_assert_eq!(sum.rank(), 3);
        prop_assert!(is_epsilon_hermitian(&sum, Sign::Plus));
        prop_assert_eq!(is_unimodular(&sum), is_unimodular(&h1) && is_unimodular(&h2));
    }

    #[test]
    fn transforms_compose(alg in 0usize..5, s in seeds()) {
        let a = &algebras()[alg];
        let f = form(a, 2, &s);
        let p = invertible(a, 2, &s[16..]);
        let q = invertible(a, 2, &s[32..]).transpose();
        let pq = ModuleMap { matrix: p.mul(a.as_ref(), &q).unwrap() };
        let step = transform(&transform(&f, &ModuleMap { matrix: p }).unwrap(), &ModuleMap { matrix: q }).unwrap();
        prop_assert_eq!(step, transform(&f, &pq).unwrap());
    }

    #[test]
    fn transform_by_invertible_is_isometric(alg in 0usize..3, s in seeds()) {
        let a = &search_algebras()[alg];
        let f = form(a, 2, &s);
        let p = ModuleMap { matrix: invertible(a, 2, &s[16..]) };
        let g = transform(&f, &p).unwrap();
        let w = is_isometric_bruteforce(&g, &f, &Budget::unlimited()).unwrap().expect("isometric by construction");
        prop_assert_eq!(transform(&f, &w).unwrap(), g);
    }

    #[test]
    fn sum_is_commutative_up_to_isometry(alg in 0usize..3, s in seeds()) {
        let a = &search_algebras()[alg];
        let (u, v) = (form(a, 1, &s), form(a, 1, &s[8..]));
        let uv = orthogonal_sum(&u, &v).unwrap();
        let vu = orthogonal_sum(&v, &u).unwrap();
        prop_assert!(is_isometric_bruteforce(&uv, &vu, &Budget::unlimited()).unwrap().is_some());
    }

    #[test]
    fn g_inverts_f_exactly(alg in 0usize..5, s in seeds()) {
        let a = &algebras()[alg];
        let f = form(a, 2, &s);
        let h = functor_f(&f);
        prop_assert!(h.defects().is_empty());
        prop_assert_eq!(&functor_g(&h).unwrap(), &f);
        let back = functor_f(&functor_g(&h).unwrap());
        prop_assert!(is_da_isometry(&h, &back, &roundtrip_witness(&h)).unwrap());
    }

    #[test]
    fn double_dual_is_identity(alg in 0usize..5, s in seeds(), m in 1usize..3, n in 1usize..3) {
        let a = &algebras()[alg];
        let q = DoubleArrowObject::new(a.clone(), m, n, vec![(matrix(a, n, m, &s), matrix(a, n, m, &s[32..]))]).unwrap();
        prop_assert_eq!(dual_object(&dual_object(&q)), q);
    }

    #[test]
    fn hyperbolic_predicates_match_oracles(alg in 0usize..5, s in seeds(), same in any::<bool>()) {
        let a = &algebras()[alg];
        let f = matrix(a, 1, 1, &s);
        let g = if same { f.clone() } else { matrix(a, 1, 1, &s[8..]) };
        let spec = HyperbolicSpec::pair(a.clone(), f, g).unwrap();
        let h = hyperbolic_sesquilinear(&spec);
        prop_assert_eq!(hermitian_iff_equal_arrows(&spec), is_epsilon_hermitian(&h, Sign::Plus));
        prop_assert_eq!(unimodular_iff_invertible(&spec), is_unimodular(&h));
    }

    #[test]
    fn standard_witness_carries_the_form(alg in 0usize..5, s in seeds()) {
        let a = &algebras()[alg];
        let f = invertible(a, 2, &s);
        let spec = HyperbolicSpec::pair(a.clone(), f.clone(), f).unwrap();
        let p = standard_hyperbolic_isometry(&spec).unwrap();
        let std = hyperbolic_hermitian_standard(a.clone(), 2, Sign::Plus);
        prop_assert_eq!(transform(&std, &p).unwrap(), hyperbolic_sesquilinear(&spec));
    }

    #[test]
    fn extension_commutes_with_sums(alg in 0usize..2, s in seeds()) {
        let a = &search_algebras()[alg];
        let p = a.base_field().characteristic();
        let ext = FieldExtension::of_degree(p, 3).unwrap();
        let (u, v) = (hermitian(a, 1, &s), hermitian(a, 2, &s[8..]));
        let lhs = extend_form(&orthogonal_sum(&u, &v).unwrap(), &ext).unwrap();
        let rhs = orthogonal_sum(&extend_form(&u, &ext).unwrap(), &extend_form(&v, &ext).unwrap()).unwrap();
        prop_assert_eq!(&lhs, &rhs);
        prop_assert!(is_epsilon_hermitian(&lhs, Sign::Plus));
        prop_assert_eq!(is_unimodular(&lhs), is_unimodular(&u) && is_unimodular(&v));
    }

    #[test]
    fn transfer_respects_sums_and_isometry(alg in 0usize..3, s in seeds()) {
        let a = &search_algebras()[alg];
        let h0 = AmbientForm::Module(SesquilinearSystem::single(a.clone(), Matrix::identity(a.as_ref(), 1)).unwrap());
        let e = induced_involution(&endomorphism_ring(&h0.ambient()).unwrap(), &h0).unwrap();
        let (u, v) = (hermitian(a, 1, &s), hermitian(a, 1, &s[8..]));
        prop_assume!(is_unimodular(&u) && is_unimodular(&v));
        let t = |h: &SesquilinearSystem| transfer_form(&e, h.rank(), &AmbientForm::Module(h.clone())).unwrap();
        let uv = orthogonal_sum(&u, &v).unwrap();
        prop_assert_eq!(t(&uv), orthogonal_sum(&t(&u), &t(&v)).unwrap());
        let p = ModuleMap { matrix: invertible(a, 2, &s[16..]) };
        let moved = transform(&uv, &p).unwrap();
        prop_assert!(is_isometric_bruteforce(&t(&uv), &t(&moved), &Budget::unlimited()).unwrap().is_some());
    }

    #[test]
    fn rational_invariants_match_diagonalization(entries in prop::collection::vec(-6i64..7, 6), conj in prop::collection::vec(-3i64..4, 3)) {
        let q = Arc::new(InvolutiveAlgebra::rationals());
        let [a, b, c, d, e, f] = entries[..] else { unreachable!() };
        let rows: [&[i64]; 3] = [&[a, b, c], &[b, d, e], &[c, e, f]];
        let s = SesquilinearSystem::from_ints(q.clone(), &rows).unwrap();
        let inv = rational_symmetric_invariants(&s).unwrap();
        let r = |x: i64| BigRational::from_integer(x.into());
        let m = Matrix::from_fn(3, 3, |i, j| r(rows[i][j]));
        let diag = diagonalize(&m);
        let pos = diag.iter().filter(|x| x.is_positive()).count() as i64;
        let neg = diag.iter().filter(|x| x.is_negative()).count() as i64;
        prop_assert_eq!(inv.rank as i64, pos + neg);
        prop_assert_eq!(inv.signature, pos - neg);
        let det: BigRational = diag.iter().filter(|x| !x.is_zero()).cloned().product();
        prop_assert_eq!(&inv.determinant_class, &squarefree_class(&det));

        // congruence by a unitriangular matrix keeps all three invariants
        let p = ModuleMap { matrix: Matrix::from_fn(3, 3, |i, j| {
            let v = if i == j { 1 } else if i < j { conj[i + j - 1] } else { 0 };
            q.from_int(v)
        }) };
        prop_assert_eq!(rational_symmetric_invariants(&transform(&s, &p).unwrap()).unwrap(), inv);
    }
}
