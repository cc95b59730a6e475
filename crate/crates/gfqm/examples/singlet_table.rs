//! Two-spin correlations in the singlet state: the four product-observable
//! distributions, identical for every field order.
//!
//! Run with: cargo run --example singlet_table

use gfqm::field::Field;
use gfqm::gqm::Gqm;

fn main() -> gfqm::Result<()> {
    for q in [3u64, 4, 5, 9] {
        let model = Gqm::new(Field::prime_power(q)?)?;
        let singlet = model.singlet();
        println!("=== q = {q}: singlet {} ===\n", singlet.rep());
        println!(
            "  {:14} {:>5} {:>5} {:>5} {:>5} {:>6}",
            "observable", "++", "+-", "-+", "--", "ev"
        );
        for row in model.singlet_product_table() {
            match (row.distribution, row.expectation) {
                (Some(dist), Some(ev)) => {
                    println!(
                        "  {:14} {:>5} {:>5} {:>5} {:>5} {:>6}",
                        row.pattern,
                        dist[0].to_string(),
                        dist[1].to_string(),
                        dist[2].to_string(),
                        dist[3].to_string(),
                        ev.to_string()
                    );
                }
                _ => {
                    println!(
                        "  {:14} (needs {} distinct indices, only {} states)",
                        row.pattern,
                        row.indices_needed,
                        q + 1
                    );
                }
            }
        }
        println!();
    }
    println!("the anticorrelated zero cells of the first row and the forbidden");
    println!("++ cells of the second drive the hidden-variable exclusion argument");
    println!("(see the no_hidden_variables example)");
    Ok(())
}
