//! Witt cancellation for hermitian systems, checked on single triples and by sweep.

use std::sync::Arc;

use sesqui::algebra::InvolutiveAlgebra;
use sesqui::budget::Budget;
use sesqui::forms::SesquilinearSystem;
use sesqui::witt::{cancellation_check, cancellation_sweep};

fn main() -> sesqui::Result<()> {
    let budget = Budget::from_env();
    let f3 = Arc::new(InvolutiveAlgebra::prime_field(3)?);
    let d = |e: &[i64]| SesquilinearSystem::diagonal(f3.clone(), e);

    let r = cancellation_check(&d(&[1])?, &d(&[2])?, &d(&[1])?, &budget)?;
    println!("<1> + <1> vs <2> + <1>: premise {} conclusion {}", r.premise, r.conclusion);
    let r = cancellation_check(&d(&[1, 2])?, &d(&[2, 1])?, &d(&[2])?, &budget)?;
    println!("<1,2> + <2> vs <2,1> + <2>: premise {} conclusion {}", r.premise, r.conclusion);

    for (name, a) in [("F3", f3.clone()), ("F9 with Frobenius", Arc::new(InvolutiveAlgebra::f9(true)))] {
        let s = cancellation_sweep(&a, 1, 1, &budget)?;
        println!(
            "{name}: {} triples, {} premises hold, {} counterexamples",
            s.triples_checked,
            s.premises_holding,
            s.counterexamples.len()
        );
    }
    Ok(())
}
