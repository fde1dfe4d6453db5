//! Scalar extension along odd-degree field extensions: descent of isometry and of
//! hyperbolicity, with an even-degree control that shows a collapse.

use std::sync::Arc;

use sesqui::algebra::InvolutiveAlgebra;
use sesqui::budget::Budget;
use sesqui::extension::{descent_sweep, restriction_map_check, springer_descent_check, FieldExtension};
use sesqui::forms::Sign;

fn main() -> sesqui::Result<()> {
    let budget = Budget::from_env();
    let f3 = Arc::new(InvolutiveAlgebra::prime_field(3)?);

    let cubic = FieldExtension::of_degree(3, 3)?;
    let r = springer_descent_check(&f3, &cubic, 2, 1, &budget)?;
    println!(
        "F27/F3: {} classes, {} pairs checked, {} collapses",
        r.classes,
        r.pairs_checked,
        r.collapses.len()
    );

    let quadratic = FieldExtension::of_degree(3, 2)?;
    match springer_descent_check(&f3, &quadratic, 1, 1, &budget) {
        Err(e) => println!("F9/F3 rejected: {e}"),
        Ok(_) => unreachable!(),
    }
    let control = descent_sweep(&f3, &quadratic, 1, 1, &budget)?;
    for c in &control.collapses {
        println!(
            "control collapse over F9: {} ~ {}",
            sesqui::io::grams_to_json(&c.left),
            sesqui::io::grams_to_json(&c.right)
        );
    }

    let rr = restriction_map_check(&f3, &cubic, 2, Sign::Plus, 2, &budget)?;
    println!(
        "restriction to F27: {} forms, {} square instances, passed {}",
        rr.forms_checked,
        rr.square.len(),
        rr.passed()
    );
    Ok(())
}
