//! The expectation-value model reaches CHSH = 4 — past the classical bound 2
//! and past the quantum bound 2*sqrt(2) — and pays for it with indeterminate
//! outcome probabilities.
//!
//! Run with: cargo run --example superquantum_bound

use gfqm::bqm::Bqm;

fn main() -> gfqm::Result<()> {
    let model = Bqm::new(3)?;
    let u = model.u_state();
    let [sigma1, _, sigma3] = model.standard_paulis();

    println!("=== the state |U> = {} ===\n", u);
    println!("conjugate dual <U| = {}", model.conjugate_dual(&u)?);

    println!("\ncorrelators:");
    for (a, b) in [
        (&sigma1, &sigma1),
        (&sigma1, &sigma3),
        (&sigma3, &sigma3),
        (&sigma3, &sigma1),
    ] {
        let ev = model.expectation(&a.matrix().kronecker(b.matrix()), &u)?;
        println!("  phi(<U| {} (x) {} |U>) = {:+}", a.label(), b.label(), ev.value);
    }

    let chsh = model.chsh(
        &u,
        sigma1.matrix(),
        sigma3.matrix(),
        sigma3.matrix(),
        sigma1.matrix(),
    )?;
    println!("\nCHSH with (a, a', b, b') = (sigma1, sigma3, sigma3, sigma1): {chsh}");

    println!("\n=== exhaustive search over all physical two-particle states ===\n");
    let search = model.chsh_max()?;
    println!("  physical states searched: {}", search.physical_states_searched);
    println!("  maximum: {}", search.max);
    println!(
        "  attained by {} states over {} (state, quadruple) combinations",
        search.witness_states, search.witness_quadruples
    );

    println!("\n=== but the outcome probabilities stay indeterminate ===\n");
    let constraints = model.probability_constraints(&u, &sigma3, &sigma3)?;
    println!(
        "  measuring sigma3 on both spins of |U>: expectation {:+}",
        constraints.expectation
    );
    for ((s, t), value) in &constraints.forced {
        println!("  forced: P({s:+},{t:+}) = {value}");
    }
    for (outcomes, total) in &constraints.relations {
        let terms: Vec<String> = outcomes
            .iter()
            .map(|(s, t)| format!("P({s:+},{t:+})"))
            .collect();
        println!("  free:   {} = {total}", terms.join(" + "));
    }
    println!(
        "  {} degree(s) of freedom: the split is not predicted, only the sum",
        constraints.degrees_of_freedom
    );

    Ok(())
}
