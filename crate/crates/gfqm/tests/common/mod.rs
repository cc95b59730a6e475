//! Shared helpers for the integration suites.
#![allow(dead_code)] // each test binary uses a different subset

use gfqm::lhv::BipartiteTable;
use gfqm::{rat, Rational};
use num_traits::Zero;
use rand::Rng;

/// A random 2x2-setting table with planted zero cells. Half the draws use a
/// singlet-like zero pattern (anticorrelated diagonals plus forbidden `++`
/// off-diagonals), the other half scatter zeros at random. Cell weights are
/// small integers, so probabilities are small exact rationals.
pub fn random_planted_zero_table<R: Rng>(rng: &mut R) -> BipartiteTable {
    let singlet_like = rng.gen_bool(0.5);
    let mut weights = [[0u32; 4]; 4];
    for cell in weights.iter_mut() {
        for w in cell.iter_mut() {
            *w = rng.gen_range(0..=5);
        }
    }
    if singlet_like {
        // zeros: (0,0) and (1,1) lose ++ and --; (0,1) and (1,0) lose ++
        weights[0][0] = 0;
        weights[0][3] = 0;
        weights[3][0] = 0;
        weights[3][3] = 0;
        weights[1][0] = 0;
        weights[2][0] = 0;
    } else {
        for _ in 0..rng.gen_range(2..=6) {
            let cell = rng.gen_range(0..4);
            let outcome = rng.gen_range(0..4);
            weights[cell][outcome] = 0;
        }
    }
    let cells = weights
        .into_iter()
        .map(|cell| {
            let mut cell = cell;
            if cell.iter().all(|&w| w == 0) {
                cell[rng.gen_range(0..4)] = 1;
            }
            let total: u32 = cell.iter().sum();
            [
                rat(cell[0] as i64, total as i64),
                rat(cell[1] as i64, total as i64),
                rat(cell[2] as i64, total as i64),
                rat(cell[3] as i64, total as i64),
            ]
        })
        .collect();
    BipartiteTable::new(
        vec!["a0".into(), "a1".into()],
        vec!["b0".into(), "b1".into()],
        cells,
    )
    .expect("normalized cells form a valid table")
}

/// Flattens a 2x2-setting table into the 16-dimensional probability vector
/// (cells row major, outcomes `++, +-, -+, --`).
pub fn flatten(table: &BipartiteTable) -> Vec<Rational> {
    let mut out = Vec::with_capacity(16);
    for a in 0..2 {
        for b in 0..2 {
            out.extend(table.cell(a, b).iter().cloned());
        }
    }
    out
}

/// True when every entry is zero.
pub fn all_zero(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}
