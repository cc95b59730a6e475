//! State spaces are projective: vectors that differ by a nonzero scalar are
//! the same physical state. This example walks the point enumeration and the
//! projective linear group.
//!
//! Run with: cargo run --example projective_geometry

use gfqm::field::Field;
use gfqm::linalg::{canonicalize, enumerate_pgl, enumerate_projective, Vector};

fn main() -> gfqm::Result<()> {
    println!("=== points of PG(1, 3): lines through the origin of GF(3)^2 ===\n");
    let f3 = Field::new(3, 1)?;
    for point in enumerate_projective(&f3, 2)? {
        println!("  point {}: {}", point.index(), point.rep());
    }

    println!("\ncanonicalization picks the leading-1 representative:");
    let v = Vector::from_coeffs(&f3, &[&[2], &[1]]);
    println!("  {} ~ {}", v, canonicalize(&v)?.rep());

    println!("\n=== point counts (q^N - 1)/(q - 1) ===\n");
    for q in [2u64, 3, 4, 5, 7, 8, 9] {
        let f = Field::prime_power(q)?;
        let single = enumerate_projective(&f, 2)?.len();
        let double = enumerate_projective(&f, 4)?.len();
        println!("  q = {q}: PG(1,q) has {single:3} points, PG(3,q) has {double:4}");
    }

    println!("\n=== PGL(2, q) = GL(2, q) / scalars, order q(q^2 - 1) ===\n");
    for q in [2u64, 3, 4, 5, 7, 8, 9] {
        let f = Field::prime_power(q)?;
        let pgl = enumerate_pgl(&f, 2)?;
        println!(
            "  q = {q}: {} canonical representatives (formula gives {})",
            pgl.len(),
            q * (q * q - 1)
        );
    }

    let f2 = Field::new(2, 1)?;
    println!("\nall six elements of PGL(2, 2):");
    for m in enumerate_pgl(&f2, 2)? {
        println!("  {m:?}");
    }

    Ok(())
}
