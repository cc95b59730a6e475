//! Single spins in the probability model: the q+1 standard states, their
//! dual vectors, and the equal-weight Born rule.
//!
//! Run with: cargo run --example spin_measurements

use gfqm::field::Field;
use gfqm::gqm::Gqm;
use gfqm::linalg::bracket;

fn main() -> gfqm::Result<()> {
    let model = Gqm::new(Field::prime_power(3)?)?;
    let q = model.q();

    println!("=== the q+1 = {} standard states and duals over GF({q}) ===\n", q + 1);
    for (k, (state, dual)) in model.states().iter().zip(model.duals()).enumerate() {
        println!("  |{k}> = {:10}  <{k}| = {}", state.rep().to_string(), dual);
    }

    println!("\npairing |<r|s>| = 1 - delta(r,s):");
    for (r, dual) in model.duals().iter().enumerate() {
        let row: Vec<u64> = model
            .states()
            .iter()
            .map(|s| bracket(dual, s.rep()).abs_map())
            .collect();
        println!("  r={r}: {row:?}");
    }

    println!("\n=== measuring the observable A(0,1) = {{<0|, <1|}} ===\n");
    let obs = model.observable(0, 1)?;
    for (k, state) in model.states().iter().enumerate() {
        let dist = model.measure(&obs, state.rep());
        let ev = model.expectation(&obs, state.rep());
        let probs: Vec<String> = dist
            .outcomes()
            .iter()
            .map(|(label, p)| format!("P({label:+}) = {p}"))
            .collect();
        println!("  on |{k}>: {}  =>  <A(0,1)> = {ev}", probs.join(", "));
    }
    println!("\neach observable has one +1 eigenstate, one -1 eigenstate, and");
    println!("every other state splits 1/2 : 1/2 (all nonzero brackets weigh the same)");

    Ok(())
}
