//! Writes the sample input files used by the command-line tool and reads them back.
//!
//! `cargo run --example json_io -- DIR` (default `data/` next to this crate).

use std::path::PathBuf;
use std::sync::Arc;

use serde_json::Value;
use sesqui::algebra::InvolutiveAlgebra;
use sesqui::double_arrow::functor_f;
use sesqui::extension::FieldExtension;
use sesqui::forms::{ModuleMap, SesquilinearSystem};
use sesqui::io;
use sesqui::matrix::Matrix;
use sesqui::ring::InvolutiveRing;
use sesqui::witt::HyperbolicSpec;

/// Replaces the inline algebra with a reference to `file`.
fn by_ref(mut v: Value, file: &str) -> Value {
    v["algebra"] = Value::String(file.into());
    v
}

fn main() -> sesqui::Result<()> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data"));
    std::fs::create_dir_all(&dir).map_err(|e| sesqui::Error::Io(e.to_string()))?;

    let f3 = Arc::new(InvolutiveAlgebra::prime_field(3)?);
    let f9 = Arc::new(InvolutiveAlgebra::f9(true));
    let q = Arc::new(InvolutiveAlgebra::rationals());
    let d = |a: &Arc<InvolutiveAlgebra>, e: &[i64]| SesquilinearSystem::diagonal(a.clone(), e);
    let m = |v: i64| Matrix::from_fn(1, 1, |_, _| f3.from_int(v));

    let files: Vec<(&str, Value)> = vec![
        ("f3.json", io::algebra_to_json(&f3)),
        ("f9_frobenius.json", io::algebra_to_json(&f9)),
        ("q.json", io::algebra_to_json(&q)),
        ("f3_one.json", by_ref(io::form_to_json(&d(&f3, &[1])?), "f3.json")),
        ("f3_two.json", by_ref(io::form_to_json(&d(&f3, &[2])?), "f3.json")),
        ("f3_one_two.json", by_ref(io::form_to_json(&d(&f3, &[1, 2])?), "f3.json")),
        (
            "f3_plane.json",
            by_ref(io::form_to_json(&SesquilinearSystem::from_ints(f3.clone(), &[&[0, 1], &[1, 0]])?), "f3.json"),
        ),
        ("f9_one.json", by_ref(io::form_to_json(&d(&f9, &[1])?), "f9_frobenius.json")),
        ("q_plane.json", by_ref(io::form_to_json(&SesquilinearSystem::from_ints(q.clone(), &[&[0, 1], &[1, 0]])?), "q.json")),
        ("f3_one_da.json", by_ref(io::da_form_to_json(&functor_f(&d(&f3, &[1])?)), "f3.json")),
        ("f3_spec.json", by_ref(io::spec_to_json(&HyperbolicSpec::pair(f3.clone(), m(1), m(2))?), "f3.json")),
        ("swap.json", io::module_map_to_json(&f3, &ModuleMap { matrix: Matrix::from_fn(2, 2, |i, j| f3.from_int((i != j) as i64)) })),
        ("f27_over_f3.json", io::extension_to_json(&FieldExtension::of_degree(3, 3)?)),
    ];
    for (name, v) in &files {
        let path = dir.join(name);
        let text = serde_json::to_string_pretty(v)? + "\n";
        std::fs::write(&path, text).map_err(|e| sesqui::Error::Io(e.to_string()))?;
    }

    // Everything written must parse back to the same object.
    let back = io::form_from_json(&io::read_json(&dir.join("f3_one_two.json"))?, Some(&dir))?;
    assert_eq!(back, d(&f3, &[1, 2])?);
    let alg = io::algebra_from_json(&io::read_json(&dir.join("f9_frobenius.json"))?)?;
    assert_eq!(&alg, f9.as_ref());
    println!("wrote {} files to {}", files.len(), dir.display());
    Ok(())
}
