//! Counting two-particle states: product vs entangled in both models, plus
//! the physical/unphysical split of the expectation-value model, and the
//! transitive action of one-sided rotations on the entangled states.
//!
//! Run with: cargo run --example entangled_census

use gfqm::bqm::Bqm;
use gfqm::field::Field;
use gfqm::gqm::Gqm;
use gfqm::linalg::Side;

fn main() -> gfqm::Result<()> {
    println!("=== probability model: PG(3, q) split by the 2x2 determinant ===\n");
    for q in [2u64, 3, 4, 5, 9] {
        let model = Gqm::new(Field::prime_power(q)?)?;
        let census = model.classify_two_particle()?;
        println!(
            "  q = {q}: {:4} states = {:3} product + {:3} entangled (= q(q^2-1) = {})",
            census.total,
            census.product,
            census.entangled,
            q * (q * q - 1)
        );
    }

    println!("\none-sided projective rotations act transitively on the entangled set:");
    for q in [2u64, 3] {
        let model = Gqm::new(Field::prime_power(q)?)?;
        let orbit = model.local_orbit(&model.singlet(), Side::First)?;
        let census = model.classify_two_particle()?;
        println!(
            "  q = {q}: orbit of the singlet has {} states, entangled set has {}",
            orbit.len(),
            census.entangled
        );
    }

    println!("\n=== expectation-value model over GF(9): the physicality split ===\n");
    let model = Bqm::new(3)?;
    let census = model.classify_states(4)?;
    println!("  total inequivalent states: {}", census.total);
    println!("  product states:            {}", census.product.unwrap());
    println!("  entangled states:          {}", census.entangled.unwrap());
    println!(
        "  of the entangled: {} physical, {} unphysical",
        census.entangled_physical.unwrap(),
        census.entangled_unphysical.unwrap()
    );

    Ok(())
}
