//! The expectation-value model over GF(9): physical and unphysical states,
//! the three biorthogonal systems, and their Pauli-analog observables.
//!
//! Run with: cargo run --example biorthogonal_spins

use gfqm::bqm::Bqm;

fn main() -> gfqm::Result<()> {
    let model = Bqm::new(3)?;

    println!("=== the ten states of PG(1, 9) under the dot product a.b = sum frob(a_k) b_k ===\n");
    let census = model.classify_states(2)?;
    for state in &census.states {
        let rep = state.point().rep();
        match model.conjugate_dual(rep) {
            Ok(dual) => println!("  {:10} physical,   conjugate dual {}", rep.to_string(), dual),
            Err(_) => println!("  {:10} unphysical (self-orthogonal, no dual)", rep.to_string()),
        }
    }
    println!(
        "\n  {} states: {} physical, {} unphysical",
        census.total, census.physical, census.unphysical
    );

    println!("\n=== biorthogonal systems: orthogonal pairs of physical states ===\n");
    for (k, system) in model.biorthogonal_systems()?.iter().enumerate() {
        println!(
            "  system {k}: kets {} , {}   bras {} , {}",
            system.kets()[0].rep(),
            system.kets()[1].rep(),
            system.bras()[0],
            system.bras()[1]
        );
    }

    println!("\n=== spin observables (eigenvalues +1, -1) are the Pauli matrices ===\n");
    for op in model.standard_paulis() {
        let m = op.matrix();
        println!(
            "  {}: [[{}, {}], [{}, {}]]   (+1 eigenket {}, -1 eigenket {})",
            op.label(),
            m.at(0, 0),
            m.at(0, 1),
            m.at(1, 0),
            m.at(1, 1),
            op.system().kets()[0].rep(),
            op.system().kets()[1].rep()
        );
    }

    println!("\n=== sigma1 expectation values across the six physical states ===\n");
    let [sigma1, _, _] = model.standard_paulis();
    for state in census.states.iter().filter(|s| s.is_physical()) {
        let record = model.expectation(sigma1.matrix(), state.point().rep())?;
        println!(
            "  phi(<psi|sigma1|psi>) on {:10} raw {}  ->  {:+}",
            state.point().rep().to_string(),
            record.raw,
            record.value
        );
    }

    Ok(())
}
