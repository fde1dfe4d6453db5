//! Isometry classes of forms on powers of `V0` against symmetric units modulo congruence.

use std::sync::Arc;

use sesqui::algebra::InvolutiveAlgebra;
use sesqui::budget::Budget;
use sesqui::forms::SesquilinearSystem;
use sesqui::matrix::Matrix;
use sesqui::transfer::{enumerate_h, verify_class_bijection};

fn main() -> sesqui::Result<()> {
    let budget = Budget::from_env();
    for (name, a) in [
        ("F3", InvolutiveAlgebra::prime_field(3)?),
        ("F5", InvolutiveAlgebra::prime_field(5)?),
        ("F9 with Frobenius", InvolutiveAlgebra::f9(true)),
    ] {
        let a = Arc::new(a);
        let reps = enumerate_h(&a)?;
        let v0 = SesquilinearSystem::single(a.clone(), Matrix::identity(a.as_ref(), 1))?;
        let r = verify_class_bijection(&v0, &budget)?;
        println!(
            "{name}: |H| = {}, {} isometry classes, image {:?}, bijection {}",
            reps.len(),
            r.isometry_classes.len(),
            r.image,
            r.is_bijection()
        );
    }
    Ok(())
}
