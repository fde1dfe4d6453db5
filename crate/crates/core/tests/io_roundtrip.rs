use std::sync::Arc;

use num_rational::BigRational;
use sesqui::algebra::{shipped_algebras, InvolutiveAlgebra};
use sesqui::double_arrow::functor_f;
use sesqui::extension::FieldExtension;
use sesqui::forms::SesquilinearSystem;
use sesqui::io;
use sesqui::matrix::Matrix;
use sesqui::ring::InvolutiveRing;
use sesqui::witt::HyperbolicSpec;

#[test]
fn algebras_round_trip() {
    for (name, a) in shipped_algebras() {
        let v = io::algebra_to_json(&a);
        let text = serde_json::to_string(&v).unwrap();
        let back = io::algebra_from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back, a, "{name}");
    }
}

#[test]
fn forms_and_da_forms_round_trip() {
    for (name, a) in shipped_algebras() {
        let a = Arc::new(a);
        let g = Matrix::from_fn(2, 2, |i, j| a.basis_element((i + 2 * j) % a.dimension()));
        let s = SesquilinearSystem::new(a.clone(), 2, vec![g.clone(), Matrix::identity(a.as_ref(), 2)]).unwrap();
        assert_eq!(io::form_from_json(&io::form_to_json(&s), None).unwrap(), s, "{name}");
        let single = SesquilinearSystem::single(a.clone(), g).unwrap();
        let h = functor_f(&single);
        assert_eq!(io::da_form_from_json(&io::da_form_to_json(&h), None).unwrap(), h, "{name}");
    }
}

#[test]
fn specs_and_extensions_round_trip() {
    let f3 = Arc::new(InvolutiveAlgebra::prime_field(3).unwrap());
    let m = |v: i64| Matrix::from_fn(1, 2, |_, j| f3.from_int(v + j as i64));
    let spec = HyperbolicSpec::new(f3.clone(), 2, 1, vec![(m(1), m(2))]).unwrap();
    assert_eq!(io::spec_from_json(&io::spec_to_json(&spec), None).unwrap(), spec);
    for e in [FieldExtension::of_degree(3, 3).unwrap(), FieldExtension::of_degree(5, 2).unwrap()] {
        let back = io::extension_from_json(&io::extension_to_json(&e)).unwrap();
        assert_eq!(back.target(), e.target());
        assert_eq!(back.modulus(), e.modulus());
    }
    let r = |x: i64| BigRational::from_integer(x.into());
    let q2 = FieldExtension::new(
        sesqui::field::BaseField::Rationals,
        sesqui::extension::rational_modulus(&[r(-2), r(0), r(1)]),
    )
    .unwrap();
    assert_eq!(io::extension_from_json(&io::extension_to_json(&q2)).unwrap().target(), q2.target());
}

#[test]
fn shipped_sample_files_parse() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    for entry in std::fs::read_dir(&dir).unwrap() {
        let path = entry.unwrap().path();
        let v = io::read_json(&path).unwrap();
        let ok = if v.get("xi").is_some() {
            io::da_form_from_json(&v, Some(&dir)).is_ok()
        } else if v.get("arrows").is_some() {
            io::spec_from_json(&v, Some(&dir)).is_ok()
        } else if v.get("grams").is_some() {
            io::form_from_json(&v, Some(&dir)).is_ok()
        } else if v.get("structure_constants").is_some() {
            io::algebra_from_json(&v).is_ok()
        } else if v.get("degree").is_some() {
            io::extension_from_json(&v).is_ok()
        } else {
            v.get("matrix").is_some()
        };
        assert!(ok, "{}", path.display());
    }
}
