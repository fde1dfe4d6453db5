//! Sesquilinear systems: adjoints, sums, transforms and exhaustive isometry search.

use std::sync::Arc;

use sesqui::algebra::{AlgebraElement, InvolutiveAlgebra};
use sesqui::io;
use sesqui::matrix::Matrix;
use sesqui::budget::Budget;
use sesqui::ring::InvolutiveRing;
use sesqui::forms::{
    classify_isometry_classes, is_epsilon_hermitian, is_isometric_bruteforce, left_adjoint, orthogonal_sum,
    right_adjoint, transform, FormFilter, ModuleMap, SesquilinearSystem, Sign,
};

fn show(a: &InvolutiveAlgebra, m: &Matrix<AlgebraElement>) -> String {
    io::matrix_to_json(a, m).to_string()
}

fn main() -> sesqui::Result<()> {
    let f3 = Arc::new(InvolutiveAlgebra::prime_field(3)?);
    let budget = Budget::from_env();

    let s = SesquilinearSystem::from_ints(f3.clone(), &[&[0, 1], &[2, 0]])?;
    println!("S = [[0,1],[2,0]]  hermitian: {}  skew: {}", is_epsilon_hermitian(&s, Sign::Plus), is_epsilon_hermitian(&s, Sign::Minus));
    println!("left adjoint  {}", show(&f3, &left_adjoint(&s, 0)?.matrix));
    println!("right adjoint {}", show(&f3, &right_adjoint(&s, 0)?.matrix));

    let one = SesquilinearSystem::diagonal(f3.clone(), &[1])?;
    let two = SesquilinearSystem::diagonal(f3.clone(), &[2])?;
    println!("<1> ~ <2>: {}", is_isometric_bruteforce(&one, &two, &budget)?.is_some());

    // <1,1> and <2,2> have the same determinant, so they are isometric.
    let a = orthogonal_sum(&one, &one)?;
    let b = orthogonal_sum(&two, &two)?;
    let p = is_isometric_bruteforce(&a, &b, &budget)?.expect("same determinant");
    assert_eq!(transform(&b, &p)?, a);
    println!("<1,1> ~ <2,2> via P = {}", show(&f3, &p.matrix));

    let swap = ModuleMap { matrix: Matrix::from_fn(2, 2, |i, j| f3.from_int((i != j) as i64)) };
    println!("swap^* <1,2> swap = {}", show(&f3, transform(&orthogonal_sum(&one, &two)?, &swap)?.gram(0)));

    for rank in 1..=2 {
        let reps = classify_isometry_classes(&f3, rank, 1, FormFilter::UnimodularHermitian(Sign::Plus), &budget)?;
        println!("rank {rank}: {} classes of unimodular symmetric forms over F3", reps.len());
    }
    Ok(())
}
