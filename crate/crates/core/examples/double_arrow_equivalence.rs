//! The functors between sesquilinear systems and hermitian forms on double-arrow objects.

use std::sync::Arc;

use sesqui::algebra::InvolutiveAlgebra;
use sesqui::budget::Budget;
use sesqui::double_arrow::{
    functor_f, functor_f_map, functor_g, hyperbolic_da, is_da_isometric_bruteforce, is_da_isometry, roundtrip_witness,
};
use sesqui::forms::{is_isometric_bruteforce, SesquilinearSystem, Sign};

fn main() -> sesqui::Result<()> {
    let f9 = Arc::new(InvolutiveAlgebra::f9(true));
    let budget = Budget::from_env();

    let s = SesquilinearSystem::new(
        f9.clone(),
        2,
        vec![sesqui::matrix::Matrix::from_fn(2, 2, |i, j| f9.element(&[(i + 2 * j) as i64, (i * j) as i64]))],
    )?;
    let h = functor_f(&s);
    println!("F(S): object {}x{}, defects {:?}", h.object().source_rank(), h.object().target_rank(), h.defects());
    assert_eq!(functor_g(&h)?, s);
    println!("G(F(S)) = S");

    let back = functor_f(&functor_g(&h)?);
    println!("F(G(h)) ~ h via (I, xi2): {}", is_da_isometry(&h, &back, &roundtrip_witness(&h))?);

    // Isometries of systems map to isometries of double-arrow forms.
    let t = SesquilinearSystem::diagonal(f9.clone(), &[1, 1])?;
    let u = SesquilinearSystem::diagonal(f9.clone(), &[1, 2])?;
    let p = is_isometric_bruteforce(&t, &u, &budget)?;
    println!("<1,1> ~ <1,2> over F9: {}", p.is_some());
    if let Some(p) = p {
        let fp = functor_f_map(&u, &p)?;
        println!("F(P) is an isometry: {}", is_da_isometry(&functor_f(&t), &functor_f(&u), &fp)?);
    }

    let hyp = hyperbolic_da(h.object(), Sign::Plus);
    println!("hyperbolic form on the object: defects {:?}", hyp.defects());
    let found = is_da_isometric_bruteforce(&functor_f(&t), &functor_f(&u), &budget)?;
    println!("double-arrow search agrees: {}", found.is_some());
    Ok(())
}
