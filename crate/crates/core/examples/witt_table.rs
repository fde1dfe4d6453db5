//! Isometry classes, Witt classes and the sum law for small finite algebras.

use std::sync::Arc;

use sesqui::algebra::InvolutiveAlgebra;
use sesqui::budget::Budget;
use sesqui::forms::{FormFilter, Sign};
use sesqui::witt::build_witt_table;

fn main() -> sesqui::Result<()> {
    let budget = Budget::from_env();
    for (name, a, bound) in [
        ("F3", InvolutiveAlgebra::prime_field(3)?, 2),
        ("F9 with Frobenius", InvolutiveAlgebra::f9(true), 2),
    ] {
        let a = Arc::new(a);
        let t = build_witt_table(&a, bound, 1, FormFilter::UnimodularHermitian(Sign::Plus), &budget)?;
        println!("{name}: {} isometry classes up to rank {bound}, {} Witt classes", t.classes.len(), t.witt_class_count);
        for c in &t.classes {
            println!("  rank {} class {} hyperbolic {}", c.rank, c.witt_class_id, c.is_hyperbolic);
        }
        let law: Vec<String> = t.sum_law.iter().map(|e| format!("{}+{}={}", e.left, e.right, e.sum)).collect();
        println!("  sum law: {} (consistent {})", law.join(" "), t.sum_law_consistent);
    }
    Ok(())
}
