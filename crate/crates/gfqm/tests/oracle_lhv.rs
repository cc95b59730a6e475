//! Independent membership oracle for the hidden-variable polytope.
//!
//! The simplex in `gfqm::lhv` decides whether a table is a convex mixture of
//! deterministic strategies. This suite re-decides the same question by a
//! completely different route: enumerate the 16 strategy tables as points in
//! Q^16, derive the facets of their convex hull by brute force (every
//! 8-subset of vertices that spans a hyperplane of the affine hull, kept if
//! all vertices sit on one side), and test membership as "inside the affine
//! hull and below every facet". The two deciders must agree on every table
//! in the corpus.

mod common;

use common::{all_zero, flatten, random_planted_zero_table};
use gfqm::lhv::{
    chsh_table_max, hardy_chain_check, lhv_feasible, BipartiteTable, OUTCOMES,
};
use gfqm::{rat, Rational};
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The 16 deterministic-strategy tables, built from scratch (independent of
/// the library's strategy enumeration).
fn vertices() -> Vec<Vec<Rational>> {
    let mut out = Vec::new();
    for a0 in [1i8, -1] {
        for a1 in [1i8, -1] {
            for b0 in [1i8, -1] {
                for b1 in [1i8, -1] {
                    let mut v = Vec::with_capacity(16);
                    for ai in [a0, a1] {
                        for bj in [b0, b1] {
                            for (s, t) in OUTCOMES {
                                v.push(if ai == s && bj == t {
                                    Rational::one()
                                } else {
                                    Rational::zero()
                                });
                            }
                        }
                    }
                    out.push(v);
                }
            }
        }
    }
    out
}

fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Reduced row echelon form; returns the reduced rows and their pivot
/// columns.
fn rref(rows: Vec<Vec<Rational>>) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut rows = rows;
    let width = rows[0].len();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..width {
        let Some(pivot_row) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot_row);
        let inv = rows[rank][col].clone().recip();
        for x in rows[rank].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && !row[col].is_zero() {
                let factor = row[col].clone();
                for (slot, p) in row.iter_mut().zip(&pivot_row) {
                    *slot -= &factor * p;
                }
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    (rows, pivots)
}

/// Affine chart of the vertex set: an origin, an RREF basis of the
/// difference space, and the pivot columns that read off coordinates.
struct Chart {
    origin: Vec<Rational>,
    basis: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl Chart {
    fn build(vertices: &[Vec<Rational>]) -> Chart {
        let origin = vertices[0].clone();
        let diffs: Vec<Vec<Rational>> = vertices[1..].iter().map(|v| sub(v, &origin)).collect();
        let (basis, pivots) = rref(diffs);
        Chart {
            origin,
            basis,
            pivots,
        }
    }

    fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of a point in the chart, or None when it falls outside
    /// the affine hull.
    fn coords(&self, point: &[Rational]) -> Option<Vec<Rational>> {
        let w = sub(point, &self.origin);
        // with an RREF basis the candidate coordinates sit at the pivots
        let x: Vec<Rational> = self.pivots.iter().map(|&c| w[c].clone()).collect();
        let mut recombined = vec![Rational::zero(); w.len()];
        for (coef, row) in x.iter().zip(&self.basis) {
            for (slot, entry) in recombined.iter_mut().zip(row) {
                *slot += coef * entry;
            }
        }
        (recombined == w).then_some(x)
    }
}

/// A facet inequality `normal . x <= offset` in chart coordinates.
#[derive(PartialEq)]
struct Facet {
    normal: Vec<Rational>,
    offset: Rational,
}

impl Facet {
    fn canonical(mut normal: Vec<Rational>, mut offset: Rational) -> Facet {
        let lead = normal
            .iter()
            .find(|x| !x.is_zero())
            .cloned()
            .unwrap_or_else(|| offset.clone());
        // positive scaling only, to preserve the inequality direction
        let scale = lead.abs().recip();
        for x in normal.iter_mut() {
            *x *= &scale;
        }
        offset *= &scale;
        Facet { normal, offset }
    }
}

/// Nullspace vector of an n x (n+1) homogeneous system with rank n, if any.
fn hyperplane_through(points: &[&Vec<Rational>]) -> Option<(Vec<Rational>, Rational)> {
    let d = points[0].len();
    let rows: Vec<Vec<Rational>> = points
        .iter()
        .map(|p| {
            let mut row = (*p).clone();
            row.push(-Rational::one());
            row
        })
        .collect();
    let (reduced, pivots) = rref(rows);
    if reduced.len() != d {
        return None; // affinely dependent sample, some other subset finds the facet
    }
    // one free column: express the solution with the free variable at 1
    let free = (0..=d).find(|c| !pivots.contains(c)).expect("rank d leaves one free column");
    let mut solution = vec![Rational::zero(); d + 1];
    solution[free] = Rational::one();
    for (row, &pivot) in reduced.iter().zip(&pivots) {
        solution[pivot] = -row[free].clone();
    }
    let offset = solution.pop().expect("width d+1");
    Some((solution, offset))
}

/// Brute-force facet derivation: every 8-subset of vertices that spans a
/// hyperplane with all vertices on one side.
fn derive_facets(coords: &[Vec<Rational>], dim: usize) -> Vec<Facet> {
    let n = coords.len();
    let mut facets: Vec<Facet> = Vec::new();
    let mut subset: Vec<usize> = (0..dim).collect();
    loop {
        let points: Vec<&Vec<Rational>> = subset.iter().map(|&i| &coords[i]).collect();
        if let Some((normal, offset)) = hyperplane_through(&points) {
            let mut below = false;
            let mut above = false;
            for v in coords {
                let score: Rational = v.iter().zip(&normal).map(|(x, n)| x * n).sum();
                if score < offset {
                    below = true;
                } else if score > offset {
                    above = true;
                }
            }
            if !(below && above) {
                // orient as normal . x <= offset
                let facet = if above {
                    Facet::canonical(normal.iter().map(|x| -x).collect(), -offset)
                } else {
                    Facet::canonical(normal, offset)
                };
                if !facets.contains(&facet) {
                    facets.push(facet);
                }
            }
        }
        // next lexicographic subset of size dim
        let mut k = dim;
        loop {
            if k == 0 {
                return facets;
            }
            k -= 1;
            if subset[k] != k + n - dim {
                subset[k] += 1;
                for j in k + 1..dim {
                    subset[j] = subset[j - 1] + 1;
                }
                break;
            }
        }
    }
}

struct FacetOracle {
    chart: Chart,
    facets: Vec<Facet>,
}

impl FacetOracle {
    fn build() -> FacetOracle {
        let verts = vertices();
        let chart = Chart::build(&verts);
        assert_eq!(chart.dim(), 8, "the local polytope has affine dimension 8");
        let coords: Vec<Vec<Rational>> = verts
            .iter()
            .map(|v| chart.coords(v).expect("vertices span the chart"))
            .collect();
        let facets = derive_facets(&coords, chart.dim());
        // 16 positivity facets plus 8 CHSH facets
        assert_eq!(facets.len(), 24, "facet count of the 2x2x2 local polytope");
        FacetOracle { chart, facets }
    }

    fn contains(&self, table: &BipartiteTable) -> bool {
        let Some(x) = self.chart.coords(&flatten(table)) else {
            return false;
        };
        self.facets.iter().all(|f| {
            let score: Rational = x.iter().zip(&f.normal).map(|(a, b)| a * b).sum();
            score <= f.offset
        })
    }
}

fn corpus() -> Vec<(String, BipartiteTable)> {
    let field = gfqm::field::Field::prime_power(3).unwrap();
    let gqm = gfqm::gqm::Gqm::new(field).unwrap();
    let mut tables = vec![
        ("pr-box".to_string(), BipartiteTable::pr_box()),
        ("independent".to_string(), BipartiteTable::independent_coins()),
        (
            "deterministic".to_string(),
            BipartiteTable::deterministic_anticorrelated(),
        ),
        ("gqm-singlet-xy".to_string(), gqm.singlet_xy_table().unwrap()),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for k in 0..100 {
        tables.push((format!("random-{k}"), random_planted_zero_table(&mut rng)));
    }
    tables
}

#[test]
fn simplex_agrees_with_facet_oracle_on_the_corpus() {
    let oracle = FacetOracle::build();
    for (name, table) in corpus() {
        let by_simplex = lhv_feasible(&table).unwrap().feasible;
        let by_facets = oracle.contains(&table);
        assert_eq!(by_simplex, by_facets, "disagreement on {name}");
    }
}

#[test]
fn feasible_tables_respect_the_classical_chsh_bound() {
    let mut feasible_seen = 0;
    for (name, table) in corpus() {
        let result = lhv_feasible(&table).unwrap();
        if result.feasible {
            feasible_seen += 1;
            assert!(
                chsh_table_max(&table) <= rat(2, 1),
                "feasible table {name} beats the classical bound"
            );
        }
    }
    assert!(feasible_seen > 0, "corpus should contain feasible tables");
}

#[test]
fn closed_chains_imply_infeasibility() {
    let mut closed_seen = 0;
    for (name, table) in corpus() {
        let chain = hardy_chain_check(&table).unwrap();
        if chain.closes {
            closed_seen += 1;
            let result = lhv_feasible(&table).unwrap();
            assert!(
                !result.feasible,
                "chain closed but simplex found a mixture for {name}"
            );
        }
    }
    assert!(closed_seen > 0, "corpus should contain closing chains");
}

#[test]
fn feasible_weights_recompose_tables_exactly() {
    for (name, table) in corpus() {
        let result = lhv_feasible(&table).unwrap();
        if !result.feasible {
            continue;
        }
        let total: Rational = result.weights.iter().map(|(_, w)| w.clone()).sum();
        assert!(total.is_one(), "weights of {name} sum to {total}");
        assert!(
            result.weights.iter().all(|(_, w)| !w.is_negative()),
            "negative weight in {name}"
        );
        for a in 0..2 {
            for b in 0..2 {
                for (k, &outcome) in OUTCOMES.iter().enumerate() {
                    let mixed: Rational = result
                        .weights
                        .iter()
                        .filter(|(s, _)| s.produces(a, b, outcome))
                        .map(|(_, w)| w.clone())
                        .sum();
                    assert_eq!(mixed, table.cell(a, b)[k], "cell mismatch in {name}");
                }
            }
        }
    }
}

#[test]
fn infeasibility_certificates_verify_independently() {
    for (name, table) in corpus() {
        let result = lhv_feasible(&table).unwrap();
        if result.feasible {
            continue;
        }
        let cert = result.certificate.expect("infeasible verdicts carry certificates");
        assert!(!all_zero(&cert.row_multipliers), "trivial certificate for {name}");
        assert!(!cert.strategy_ceiling.is_positive());
        assert!(cert.table_value.is_positive());
        // re-evaluate the functional against every strategy table
        let t = flatten(&table);
        for v in vertices() {
            let score: Rational = cert
                .row_multipliers
                .iter()
                .zip(&v)
                .map(|(y, x)| y * x)
                .sum();
            assert!(
                !score.is_positive(),
                "certificate of {name} fails on a strategy"
            );
        }
        let table_score: Rational = cert
            .row_multipliers
            .iter()
            .zip(&t)
            .map(|(y, x)| y * x)
            .sum();
        assert_eq!(table_score, cert.table_value);
    }
}
