//! Allowed basis changes in the expectation-value model: the projective
//! unitary group PU(2, 9), the analog of SU(2).
//!
//! Run with: cargo run --example projective_unitary

use std::collections::HashSet;

use gfqm::bqm::Bqm;
use gfqm::linalg::{canonicalize, enumerate_pgl, Matrix};

fn main() -> gfqm::Result<()> {
    let model = Bqm::new(3)?;
    let pu = model.enumerate_pu()?;
    let pgl = enumerate_pgl(model.field(), 2)?;

    println!("PGL(2, 9) has {} elements; the unitary condition", pgl.len());
    println!("(U^dagger U proportional to the identity) keeps {} of them:\n", pu.len());
    for (k, m) in pu.iter().enumerate() {
        println!(
            "  {k:2}: [[{}, {}], [{}, {}]]",
            m.at(0, 0),
            m.at(0, 1),
            m.at(1, 0),
            m.at(1, 1)
        );
    }

    let set: HashSet<Matrix> = pu.iter().cloned().collect();
    let closed = pu
        .iter()
        .all(|a| pu.iter().all(|b| set.contains(&a.mul(b).canonicalize_projective())));
    println!("\nclosed under multiplication: {closed}");

    println!("\neach element permutes the biorthogonal systems:");
    let systems = model.biorthogonal_systems()?;
    let sample = &pu[5];
    for (k, system) in systems.iter().enumerate() {
        let images: Vec<String> = system
            .kets()
            .iter()
            .map(|ket| {
                canonicalize(&sample.apply(ket.rep()))
                    .map(|p| p.rep().to_string())
                    .unwrap_or_default()
            })
            .collect();
        println!(
            "  system {k} {{{}, {}}} -> {{{}}}",
            system.kets()[0].rep(),
            system.kets()[1].rep(),
            images.join(", ")
        );
    }

    Ok(())
}
