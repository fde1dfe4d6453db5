//! Rank, determinant class and signature of symmetric forms over `Q`.

use std::sync::Arc;

use sesqui::algebra::InvolutiveAlgebra;
use sesqui::forms::SesquilinearSystem;
use sesqui::invariants::rational_symmetric_invariants;

fn main() -> sesqui::Result<()> {
    let q = Arc::new(InvolutiveAlgebra::rationals());
    let examples: [(&str, &[&[i64]]); 4] = [
        ("hyperbolic plane", &[&[0, 1], &[1, 0]]),
        ("<1,1>", &[&[1, 0], &[0, 1]]),
        ("<2,8>", &[&[2, 0], &[0, 8]]),
        ("A2 root lattice", &[&[2, -1], &[-1, 2]]),
    ];
    for (name, rows) in examples {
        let inv = rational_symmetric_invariants(&SesquilinearSystem::from_ints(q.clone(), rows)?)?;
        println!("{name:<18} rank {} det {} signature {}", inv.rank, inv.determinant_class, inv.signature);
    }
    Ok(())
}
