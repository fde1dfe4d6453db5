//! Validates the built-in algebras with involution and shows a failing one.

use sesqui::algebra::{shipped_algebras, validate_algebra, InvolutiveAlgebra};
use sesqui::field::{BaseField, Field};
use sesqui::ring::InvolutiveRing;

fn main() -> sesqui::Result<()> {
    for (name, a) in shipped_algebras() {
        let r = validate_algebra(&a);
        println!("{name:<24} dim {:>2}  axioms {}", a.dimension(), if r.passed() { "ok" } else { "FAIL" });
    }

    // Frobenius on F9 = F3[t]/(t^2 + 1) sends t to t^3 = -t.
    let f9 = InvolutiveAlgebra::f9(true);
    let t = f9.basis_element(1);
    println!("sigma(t) = {:?}", f9.conj(&t).coeffs());

    // Transpose on M2(F3) is an anti-automorphism; the identity map is not.
    let m2 = InvolutiveAlgebra::matrix_algebra(BaseField::prime(3)?, 2)?;
    let dim = m2.dimension();
    let identity: Vec<_> = (0..dim * dim).map(|k| m2.base_field().from_int((k % (dim + 1) == 0) as i64)).collect();
    let broken = m2.with_involution(identity);
    match broken {
        Ok(b) => println!("identity on M2(F3): {:?}", validate_algebra(&b).violations.first()),
        Err(e) => println!("identity on M2(F3) rejected: {e}"),
    }
    Ok(())
}
