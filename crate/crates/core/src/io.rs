//! JSON formats for fields, algebras, forms, double-arrow data, extensions and reports.
//!
//! Scalars: integers over a prime field, coefficient arrays over `F_{p^e}`, `"num/den"`
//! strings over `Q`, `["a", "b"]` for `a + b sqrt d`. Algebra elements are coefficient
//! vectors; matrices are nested arrays of rows.

use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Arc;

use num_rational::BigRational;
use serde_json::{json, Map, Value};

use crate::algebra::{AlgebraElement, InvolutiveAlgebra, MatrixOverA};
use crate::double_arrow::{DAMorphism, DoubleArrowObject, HermitianDAForm};
use crate::error::{Error, Result};
use crate::extension::FieldExtension;
use crate::field::{BaseField, Scalar};
use crate::forms::{ModuleMap, SesquilinearSystem, Sign};
use crate::matrix::Matrix;
use crate::witt::HyperbolicSpec;

pub const SCHEMA_VERSION: u64 = 1;

fn parse_err(what: &str, v: &Value) -> Error {
    Error::Parse(format!("expected {what}, found {v}"))
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::Parse(format!("missing field `{key}`")))
}

fn as_usize(v: &Value, what: &str) -> Result<usize> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| parse_err(what, v))
}

fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| parse_err(what, v))
}

pub fn base_to_json(b: &BaseField) -> Value {
    match b {
        BaseField::Rationals => json!({"kind": "rationals"}),
        BaseField::Finite(f) if f.degree() == 1 && f.modulus() == [0, 1] => {
            json!({"kind": "prime", "p": f.characteristic()})
        }
        BaseField::Finite(f) => {
            json!({"kind": "finite", "p": f.characteristic(), "e": f.degree(), "modulus": f.modulus()})
        }
        BaseField::Quadratic(q) => json!({"kind": "quadratic", "d": rational_str(q.d())}),
    }
}

pub fn base_from_json(v: &Value) -> Result<BaseField> {
    let kind = field(v, "kind")?.as_str().ok_or_else(|| parse_err("a string kind", v))?;
    let p = || -> Result<u32> { Ok(as_usize(field(v, "p")?, "a prime p")? as u32) };
    match kind {
        "rationals" => Ok(BaseField::Rationals),
        "prime" => BaseField::prime(p()?),
        "finite" => {
            let modulus: Vec<u32> = as_array(field(v, "modulus")?, "a modulus array")?
                .iter()
                .map(|c| as_usize(c, "a modulus coefficient").map(|x| x as u32))
                .collect::<Result<_>>()?;
            if let Some(e) = v.get("e") {
                if as_usize(e, "a degree e")? + 1 != modulus.len() {
                    return Err(Error::Parse("degree e does not match the modulus".into()));
                }
            }
            BaseField::finite(p()?, modulus)
        }
        "quadratic" => BaseField::quadratic(rational_from_json(field(v, "d")?)?),
        other => Err(Error::Parse(format!("unknown field kind `{other}`"))),
    }
}

fn rational_str(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn rational_from_json(v: &Value) -> Result<BigRational> {
    match v {
        Value::String(s) => BigRational::from_str(s.trim()).map_err(|_| parse_err("a rational \"num/den\"", v)),
        Value::Number(n) => n
            .as_i64()
            .map(|i| BigRational::from_integer(i.into()))
            .ok_or_else(|| parse_err("an integer", v)),
        _ => Err(parse_err("a rational", v)),
    }
}

pub fn scalar_to_json(b: &BaseField, s: &Scalar) -> Value {
    match (b, s) {
        (BaseField::Finite(f), Scalar::Fin(c)) if f.degree() == 1 => json!(c),
        (BaseField::Finite(f), Scalar::Fin(c)) => json!(f.digits(*c)),
        (_, Scalar::Rat(r)) => json!(rational_str(r)),
        (_, Scalar::Quad(a, c)) => json!([rational_str(a), rational_str(c)]),
        _ => unreachable!("scalar kind does not match base"),
    }
}

pub fn scalar_from_json(b: &BaseField, v: &Value) -> Result<Scalar> {
    match b {
        BaseField::Finite(f) => {
            let p = f.characteristic() as i64;
            let digit = |x: &Value| -> Result<u32> {
                x.as_i64().map(|i| i.rem_euclid(p) as u32).ok_or_else(|| parse_err("an integer", x))
            };
            if f.degree() == 1 {
                Ok(Scalar::Fin(digit(v)?))
            } else {
                let d = as_array(v, "a coefficient array")?;
                if d.len() != f.degree() as usize {
                    return Err(Error::Parse(format!("expected {} coefficients, found {v}", f.degree())));
                }
                let digits: Vec<u32> = d.iter().map(digit).collect::<Result<_>>()?;
                Ok(Scalar::Fin(f.from_digits(&digits)))
            }
        }
        BaseField::Rationals => Ok(Scalar::Rat(rational_from_json(v)?)),
        BaseField::Quadratic(_) => match v.as_array().map(|a| a.as_slice()) {
            Some([a, c]) => Ok(Scalar::Quad(rational_from_json(a)?, rational_from_json(c)?)),
            _ => Ok(Scalar::Quad(rational_from_json(v)?, BigRational::from_integer(0.into()))),
        },
    }
}

fn scalars_from_json(b: &BaseField, v: &Value, len: usize, what: &str) -> Result<Vec<Scalar>> {
    let arr = as_array(v, what)?;
    if arr.len() != len {
        return Err(Error::Parse(format!("{what}: expected {len} entries, found {}", arr.len())));
    }
    arr.iter().map(|x| scalar_from_json(b, x)).collect()
}

pub fn algebra_to_json(a: &InvolutiveAlgebra) -> Value {
    let b = a.base_field();
    let m = a.dimension();
    let s = a.structure_constants();
    let sc = |x: &Scalar| scalar_to_json(b, x);
    let structure: Vec<Value> = (0..m)
        .map(|i| {
            json!((0..m)
                .map(|j| json!((0..m).map(|k| sc(&s[(i * m + j) * m + k])).collect::<Vec<_>>()))
                .collect::<Vec<_>>())
        })
        .collect();
    let inv = a.involution_matrix();
    json!({
        "base": base_to_json(b),
        "dim": m,
        "structure_constants": structure,
        "unit": a.unit().0.iter().map(sc).collect::<Vec<_>>(),
        "involution": (0..m).map(|i| json!((0..m).map(|j| sc(inv.get(i, j))).collect::<Vec<_>>())).collect::<Vec<_>>(),
    })
}

pub fn algebra_from_json(v: &Value) -> Result<InvolutiveAlgebra> {
    let b = base_from_json(field(v, "base")?)?;
    let m = as_usize(field(v, "dim")?, "a dimension")?;
    let mut structure = Vec::with_capacity(m * m * m);
    for row in as_array(field(v, "structure_constants")?, "structure constants")?.iter() {
        for cell in as_array(row, "structure constants row")? {
            structure.extend(scalars_from_json(&b, cell, m, "structure constant vector")?);
        }
    }
    let unit = scalars_from_json(&b, field(v, "unit")?, m, "unit")?;
    let mut involution = Vec::with_capacity(m * m);
    let rows = as_array(field(v, "involution")?, "involution matrix")?;
    if rows.len() != m {
        return Err(Error::Parse("involution matrix has the wrong number of rows".into()));
    }
    for row in rows {
        involution.extend(scalars_from_json(&b, row, m, "involution row")?);
    }
    InvolutiveAlgebra::new(b, m, structure, unit, involution)
}

pub fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    Ok(serde_json::from_str(&text)?)
}

/// An algebra given inline or as a path relative to `dir`.
pub fn algebra_ref_from_json(v: &Value, dir: Option<&Path>) -> Result<Arc<InvolutiveAlgebra>> {
    match v {
        Value::String(p) => {
            let path = match dir {
                Some(d) => d.join(p),
                None => PathBuf::from(p),
            };
            Ok(Arc::new(algebra_from_json(&read_json(&path)?)?))
        }
        _ => Ok(Arc::new(algebra_from_json(v)?)),
    }
}

pub fn element_to_json(a: &InvolutiveAlgebra, x: &AlgebraElement) -> Value {
    json!(x.0.iter().map(|c| scalar_to_json(a.base_field(), c)).collect::<Vec<_>>())
}

/// A coefficient vector; over a one-dimensional algebra a bare scalar is accepted too.
pub fn element_from_json(a: &InvolutiveAlgebra, v: &Value) -> Result<AlgebraElement> {
    let b = a.base_field();
    let m = a.dimension();
    let nested = v.as_array().is_some_and(|arr| {
        arr.len() == m && !(m == 2 && matches!(b, BaseField::Quadratic(_)) && arr.iter().all(Value::is_string))
    });
    let x = if m == 1 && !nested {
        AlgebraElement(vec![scalar_from_json(b, v)?])
    } else {
        AlgebraElement(scalars_from_json(b, v, m, "algebra element")?)
    };
    a.check_element(&x)?;
    Ok(x)
}

pub fn matrix_to_json(a: &InvolutiveAlgebra, m: &MatrixOverA) -> Value {
    json!((0..m.rows())
        .map(|i| json!((0..m.cols()).map(|j| element_to_json(a, m.get(i, j))).collect::<Vec<_>>()))
        .collect::<Vec<_>>())
}

/// Shape is checked against `rows x cols`; an empty row list is a `0 x cols` matrix.
pub fn matrix_from_json(a: &InvolutiveAlgebra, v: &Value, rows: usize, cols: usize) -> Result<MatrixOverA> {
    let rs = as_array(v, "a matrix")?;
    if rs.len() != rows {
        return Err(Error::DimensionMismatch(format!("expected {rows} rows, found {}", rs.len())));
    }
    let mut data = Vec::with_capacity(rows * cols);
    for r in rs {
        let cells = as_array(r, "a matrix row")?;
        if cells.len() != cols {
            return Err(Error::DimensionMismatch(format!("expected {cols} columns, found {}", cells.len())));
        }
        for c in cells {
            data.push(element_from_json(a, c)?);
        }
    }
    Matrix::new(rows, cols, data)
}

/// Infers the shape of a square matrix from its row count.
pub fn square_from_json(a: &InvolutiveAlgebra, v: &Value) -> Result<MatrixOverA> {
    let n = as_array(v, "a matrix")?.len();
    matrix_from_json(a, v, n, n)
}

pub fn form_to_json(s: &SesquilinearSystem) -> Value {
    let a = s.algebra().as_ref();
    json!({
        "algebra": algebra_to_json(a),
        "rank": s.rank(),
        "grams": s.grams().iter().map(|g| matrix_to_json(a, g)).collect::<Vec<_>>(),
    })
}

/// A single Gram matrix may be given as `gram` instead of `grams`.
pub fn form_from_json(v: &Value, dir: Option<&Path>) -> Result<SesquilinearSystem> {
    let alg = algebra_ref_from_json(field(v, "algebra")?, dir)?;
    form_over(&alg, v)
}

pub fn form_over(alg: &Arc<InvolutiveAlgebra>, v: &Value) -> Result<SesquilinearSystem> {
    let grams_v: Vec<&Value> = match (v.get("grams"), v.get("gram")) {
        (Some(g), _) => as_array(g, "a list of Gram matrices")?.iter().collect(),
        (None, Some(g)) => vec![g],
        _ => return Err(Error::Parse("missing field `grams`".into())),
    };
    let rank = match v.get("rank") {
        Some(r) => as_usize(r, "a rank")?,
        None => grams_v.first().and_then(|g| g.as_array()).map_or(0, Vec::len),
    };
    let grams = grams_v.iter().map(|g| matrix_from_json(alg, g, rank, rank)).collect::<Result<_>>()?;
    SesquilinearSystem::new(alg.clone(), rank, grams)
}

pub fn module_map_to_json(a: &InvolutiveAlgebra, f: &ModuleMap) -> Value {
    json!({"matrix": matrix_to_json(a, &f.matrix)})
}

pub fn module_map_from_json(a: &InvolutiveAlgebra, v: &Value) -> Result<ModuleMap> {
    let m = v.get("matrix").unwrap_or(v);
    let rows = as_array(m, "a matrix")?.len();
    let cols = m.get(0).and_then(Value::as_array).map_or(0, Vec::len);
    Ok(ModuleMap { matrix: matrix_from_json(a, m, rows, cols)? })
}

fn arrows_to_json(a: &InvolutiveAlgebra, arrows: &[(MatrixOverA, MatrixOverA)]) -> Value {
    json!(arrows.iter().map(|(f, g)| json!([matrix_to_json(a, f), matrix_to_json(a, g)])).collect::<Vec<_>>())
}

fn arrows_from_json(a: &InvolutiveAlgebra, v: &Value, m: usize, n: usize) -> Result<Vec<(MatrixOverA, MatrixOverA)>> {
    as_array(v, "a list of arrow pairs")?
        .iter()
        .map(|p| match p.as_array().map(|x| x.as_slice()) {
            Some([f, g]) => Ok((matrix_from_json(a, f, n, m)?, matrix_from_json(a, g, n, m)?)),
            _ => Err(parse_err("an arrow pair [F, G]", p)),
        })
        .collect()
}

pub fn da_object_to_json(q: &DoubleArrowObject) -> Value {
    let a = q.algebra().as_ref();
    json!({
        "algebra": algebra_to_json(a),
        "m": q.source_rank(),
        "n": q.target_rank(),
        "arrows": arrows_to_json(a, q.arrows()),
    })
}

pub fn da_object_from_json(v: &Value, dir: Option<&Path>) -> Result<DoubleArrowObject> {
    let alg = algebra_ref_from_json(field(v, "algebra")?, dir)?;
    let m = as_usize(field(v, "m")?, "m")?;
    let n = as_usize(field(v, "n")?, "n")?;
    let arrows = arrows_from_json(&alg, field(v, "arrows")?, m, n)?;
    DoubleArrowObject::new(alg, m, n, arrows)
}

pub fn morphism_to_json(a: &InvolutiveAlgebra, f: &DAMorphism) -> Value {
    json!({"phi": matrix_to_json(a, &f.phi), "psi": matrix_to_json(a, &f.psi)})
}

pub fn da_form_to_json(h: &HermitianDAForm) -> Value {
    let a = h.object().algebra().as_ref();
    let mut v = da_object_to_json(h.object());
    v["xi"] = json!([matrix_to_json(a, &h.xi().phi), matrix_to_json(a, &h.xi().psi)]);
    v["epsilon"] = json!(h.epsilon().value());
    v
}

pub fn da_form_from_json(v: &Value, dir: Option<&Path>) -> Result<HermitianDAForm> {
    let q = da_object_from_json(v, dir)?;
    let a = q.algebra().clone();
    let (m, n) = (q.source_rank(), q.target_rank());
    let xi = match field(v, "xi")?.as_array().map(|x| x.as_slice()) {
        Some([x1, x2]) => DAMorphism { phi: matrix_from_json(&a, x1, n, m)?, psi: matrix_from_json(&a, x2, m, n)? },
        _ => return Err(Error::Parse("`xi` must be [xi1, xi2]".into())),
    };
    let eps = match v.get("epsilon") {
        Some(e) => Sign::from_int(e.as_i64().ok_or_else(|| parse_err("epsilon = 1 or -1", e))?)?,
        None => Sign::Plus,
    };
    HermitianDAForm::new(q, xi, eps)
}

pub fn spec_from_json(v: &Value, dir: Option<&Path>) -> Result<HyperbolicSpec> {
    let alg = algebra_ref_from_json(field(v, "algebra")?, dir)?;
    let m = as_usize(field(v, "m")?, "m")?;
    let n = as_usize(field(v, "n")?, "n")?;
    let arrows = arrows_from_json(&alg, field(v, "arrows")?, m, n)?;
    HyperbolicSpec::new(alg, m, n, arrows)
}

pub fn spec_to_json(s: &HyperbolicSpec) -> Value {
    json!({
        "algebra": algebra_to_json(&s.algebra),
        "m": s.m,
        "n": s.n,
        "arrows": arrows_to_json(&s.algebra, &s.arrows),
    })
}

pub fn extension_to_json(e: &FieldExtension) -> Value {
    json!({
        "base": base_to_json(e.base()),
        "degree": e.degree(),
        "modulus": e.modulus().iter().map(|c| scalar_to_json(e.base(), c)).collect::<Vec<_>>(),
    })
}

pub fn extension_from_json(v: &Value) -> Result<FieldExtension> {
    let base = base_from_json(field(v, "base")?)?;
    let modulus: Vec<Scalar> = as_array(field(v, "modulus")?, "a modulus array")?
        .iter()
        .map(|c| scalar_from_json(&base, c))
        .collect::<Result<_>>()?;
    let ext = FieldExtension::new(base, modulus)?;
    if let Some(d) = v.get("degree") {
        if as_usize(d, "a degree")? != ext.degree() {
            return Err(Error::Parse("degree does not match the modulus".into()));
        }
    }
    Ok(ext)
}

/// Wraps a report body with its kind and the schema version.
pub fn report(kind: &str, body: Value) -> Value {
    let mut map = Map::new();
    map.insert("schema_version".into(), json!(SCHEMA_VERSION));
    map.insert("report".into(), json!(kind));
    if let Value::Object(fields) = body {
        map.extend(fields);
    } else {
        map.insert("value".into(), body);
    }
    Value::Object(map)
}

/// Gram matrices of a system without its algebra, for compact reports.
pub fn grams_to_json(s: &SesquilinearSystem) -> Value {
    let a = s.algebra().as_ref();
    json!(s.grams().iter().map(|g| matrix_to_json(a, g)).collect::<Vec<_>>())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::shipped_algebras;

    #[test]
    fn algebras_round_trip() {
        for (name, a) in shipped_algebras() {
            let v = algebra_to_json(&a);
            let text = serde_json::to_string(&v).unwrap();
            let back = algebra_from_json(&serde_json::from_str(&text).unwrap()).unwrap();
            assert_eq!(back, a, "{name}");
        }
    }

    #[test]
    fn base_examples() {
        let f9 = base_from_json(&json!({"kind":"finite","p":3,"e":2,"modulus":[1,0,1]})).unwrap();
        assert_eq!(f9.order(), Some(9));
        assert_eq!(base_to_json(&f9), json!({"kind":"finite","p":3,"e":2,"modulus":[1,0,1]}));
        assert_eq!(base_to_json(&BaseField::prime(5).unwrap()), json!({"kind":"prime","p":5}));
        let q = base_from_json(&json!({"kind":"quadratic","d":"2/1"})).unwrap();
        assert_eq!(base_to_json(&q), json!({"kind":"quadratic","d":"2/1"}));
        assert!(base_from_json(&json!({"kind":"finite","p":3,"e":2,"modulus":[2,0,1]})).is_err());
    }

    #[test]
    fn form_with_bare_scalars() {
        let v = json!({"algebra": {"base":{"kind":"prime","p":3},"dim":1,"structure_constants":[[[1]]],"unit":[1],"involution":[[1]]},
                       "grams": [[[0, 1], [1, 0]]]});
        let s = form_from_json(&v, None).unwrap();
        assert_eq!(s.rank(), 2);
        let again = form_from_json(&form_to_json(&s), None).unwrap();
        assert_eq!(again, s);
    }

    #[test]
    fn report_has_schema_version() {
        let r = report("x", json!({"ok": true}));
        assert_eq!(r["schema_version"], json!(1));
        assert_eq!(r["ok"], json!(true));
    }
}
