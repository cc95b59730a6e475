//! Exact Galois-field arithmetic and the three maps the models rely on.
//!
//! Run with: cargo run --example field_arithmetic

use gfqm::field::Field;

fn main() -> gfqm::Result<()> {
    println!("=== GF(9) = GF(3)[i], modulus x^2 + 1 ===\n");
    let f9 = Field::new(3, 2)?;
    println!("order: {}", f9.order());
    println!(
        "modulus coefficients (constant first): {:?}",
        f9.modulus()
    );
    println!("multiplicative generator: {}", f9.generator());

    let a = f9.element(&[1, 1]); // 1+i
    let b = f9.element(&[1, -1]); // 1-i
    println!("\n(1+i) * (1-i) = {}", &a * &b);
    println!("(1+i)^2      = {}", a.pow(2));
    println!("inv(1+i)     = {}", a.inv()?);
    println!("check: (1+i) * inv(1+i) = {}", &a * &a.inv()?);

    println!("\nFrobenius map x -> x^p acts as conjugation:");
    for coeffs in [[1i64, 1], [0, 1], [2, 1]] {
        let x = f9.element(&coeffs);
        println!("  frob({}) = {}", x, x.frobenius());
    }
    println!("and frob(x) * x always lands in the prime subfield:");
    let norm = a.frobenius() * &a;
    println!("  frob(1+i) * (1+i) = {norm}");

    println!("\n=== the absolute value map GF(q) -> {{0, 1}} ===\n");
    for x in f9.elements().take(5) {
        println!("  |{x}| = {}", x.abs_map());
    }
    println!("product preserving: |ab| = |a||b| for all pairs (checked in tests)");

    println!("\n=== the sign map GF(p) -> {{-1, 0, +1}}, p = 3 mod 4 ===\n");
    let f7 = Field::new(7, 1)?;
    println!("GF(7), generator {}:", f7.generator());
    for k in 0..7 {
        let x = f7.from_u64(k);
        println!("  phi({k}) = {:+}", x.sign_map()?);
    }
    println!("even generator powers (quadratic residues) map to +1, odd to -1");

    Ok(())
}
