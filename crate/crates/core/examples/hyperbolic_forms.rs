//! Hyperbolic forms from specs, the standard form, and hyperbolicity search.

use std::sync::Arc;

use sesqui::algebra::InvolutiveAlgebra;
use sesqui::budget::Budget;
use sesqui::ring::InvolutiveRing;
use sesqui::forms::{transform, SesquilinearSystem, Sign};
use sesqui::matrix::Matrix;
use sesqui::witt::{
    hermitian_iff_equal_arrows, hyperbolic_hermitian_standard, hyperbolic_sesquilinear, is_hyperbolic_bruteforce,
    standard_hyperbolic_isometry, unimodular_iff_invertible, HyperbolicSpec,
};

fn main() -> sesqui::Result<()> {
    let f3 = Arc::new(InvolutiveAlgebra::prime_field(3)?);
    let budget = Budget::from_env();
    let m = |v: i64| Matrix::from_fn(1, 1, |_, _| f3.from_int(v));

    let spec = HyperbolicSpec::pair(f3.clone(), m(2), m(2))?;
    let h = hyperbolic_sesquilinear(&spec);
    println!("H(2,2) = {}", sesqui::io::matrix_to_json(&f3, h.gram(0)));
    println!("hermitian: {}  unimodular: {}", hermitian_iff_equal_arrows(&spec), unimodular_iff_invertible(&spec));

    let std = hyperbolic_hermitian_standard(f3.clone(), 1, Sign::Plus);
    let p = standard_hyperbolic_isometry(&spec)?;
    println!("standard form carried onto H(2,2): {}", transform(&std, &p)? == h);

    for (label, entries) in [("<1,2>", [1, 2]), ("<1,1>", [1, 1])] {
        let s = SesquilinearSystem::diagonal(f3.clone(), &entries)?;
        let w = is_hyperbolic_bruteforce(&s, 1_000_000, &budget)?;
        println!("{label} hyperbolic: {}", w.is_some());
    }
    Ok(())
}
