//! Endomorphism rings with the involution induced by a form, and transfer of forms to them.

use std::sync::Arc;

use sesqui::algebra::{validate_algebra, InvolutiveAlgebra};
use sesqui::double_arrow::{direct_sum, functor_f, DAMorphism, HermitianDAForm};
use sesqui::forms::{is_epsilon_hermitian, SesquilinearSystem, Sign};
use sesqui::transfer::{endomorphism_ring, induced_involution, transfer_form, Ambient, AmbientForm};

fn main() -> sesqui::Result<()> {
    let f3 = Arc::new(InvolutiveAlgebra::prime_field(3)?);
    let f9 = Arc::new(InvolutiveAlgebra::f9(true));

    for (name, a) in [("F3", &f3), ("F9", &f9)] {
        for rank in 1..=2 {
            let e = endomorphism_ring(&Ambient::Module { algebra: a.clone(), rank })?;
            println!("End({name}^{rank}) has dimension {}", e.dimension());
        }
    }

    // h0 = <1> on M = F3; the transfer of h on M^2 is a form over End(M) = F3.
    let h0 = AmbientForm::Module(SesquilinearSystem::diagonal(f3.clone(), &[1])?);
    let e = induced_involution(&endomorphism_ring(&h0.ambient())?, &h0)?;
    println!("induced involution valid: {}", validate_algebra(e.algebra()).passed());
    let h = AmbientForm::Module(SesquilinearSystem::diagonal(f3.clone(), &[1, 2])?);
    let t = transfer_form(&e, 2, &h)?;
    println!("transfer of <1,2>: {}", sesqui::io::matrix_to_json(e.algebra(), t.gram(0)));

    // The same through double-arrow objects: the transfer is again hermitian.
    let f0 = functor_f(&SesquilinearSystem::diagonal(f3.clone(), &[1])?);
    let q0 = f0.object().clone();
    let d0 = AmbientForm::DoubleArrow(f0);
    let de = induced_involution(&endomorphism_ring(&d0.ambient())?, &d0)?;
    // On Q0^2 the arrows are (I, I), so xi = (xi2^*, xi2) is a form for any symmetric invertible xi2.
    let q2 = direct_sum(&q0, &q0)?;
    let xi2 = SesquilinearSystem::diagonal(f3, &[1, 2])?.gram(0).clone();
    let dh = AmbientForm::DoubleArrow(HermitianDAForm::new(q2, DAMorphism { phi: xi2.clone(), psi: xi2 }, Sign::Plus)?);
    let dt = transfer_form(&de, 2, &dh)?;
    println!(
        "double-arrow transfer: {} hermitian {}",
        sesqui::io::matrix_to_json(de.algebra(), dt.gram(0)),
        is_epsilon_hermitian(&dt, Sign::Plus)
    );
    Ok(())
}
