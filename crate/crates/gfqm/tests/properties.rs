//! Property-based and exhaustive invariant checks that cut across modules.

use gfqm::bqm::Bqm;
use gfqm::field::Field;
use gfqm::gqm::{Gqm, ProductObservable};
use gfqm::lhv::BipartiteTable;
use gfqm::linalg::{bracket, canonicalize, enumerate_projective, Vector};
use gfqm::rat;
use proptest::prelude::*;

fn vector_strategy() -> impl Strategy<Value = (u64, usize, Vec<u64>)> {
    (
        prop::sample::select(vec![2u64, 3, 4, 5, 9]),
        prop::sample::select(vec![2usize, 4]),
    )
        .prop_flat_map(|(q, dim)| {
            (
                Just(q),
                Just(dim),
                prop::collection::vec(0..q, dim).prop_filter("nonzero vector", |idx| {
                    idx.iter().any(|&k| k != 0)
                }),
            )
        })
}

proptest! {
    #[test]
    fn canonicalize_is_a_scalar_invariant_retraction((q, dim, indices) in vector_strategy()) {
        let field = Field::prime_power(q).unwrap();
        let v = Vector::new(indices.iter().map(|&k| field.from_index(k)).collect());
        let point = canonicalize(&v).unwrap();
        prop_assert_eq!(canonicalize(point.rep()).unwrap(), point.clone());
        prop_assert!(point.rep().entries()[(0..dim).find(|&k| !point.rep().entries()[k].is_zero()).unwrap()].is_one());
        for c in field.elements().filter(|c| !c.is_zero()) {
            prop_assert_eq!(canonicalize(&v.scale(&c)).unwrap(), point.clone());
        }
    }

    #[test]
    fn table_documents_round_trip(weights in prop::collection::vec(
        prop::collection::vec(0u32..10, 4).prop_filter("cell has mass", |c| c.iter().any(|&w| w > 0)),
        4,
    )) {
        let cells = weights
            .iter()
            .map(|cell| {
                let total: u32 = cell.iter().sum();
                [
                    rat(cell[0] as i64, total as i64),
                    rat(cell[1] as i64, total as i64),
                    rat(cell[2] as i64, total as i64),
                    rat(cell[3] as i64, total as i64),
                ]
            })
            .collect();
        let table = BipartiteTable::new(
            vec!["a0".into(), "a1".into()],
            vec!["b0".into(), "b1".into()],
            cells,
        )
        .unwrap();
        let text = table.to_document();
        prop_assert_eq!(BipartiteTable::from_document(&text).unwrap(), table);
    }
}

#[test]
fn singlet_table_is_independent_of_index_assignment() {
    // every assignment of distinct indices yields the same distributions
    let model = Gqm::new(Field::prime_power(5).unwrap()).unwrap();
    let singlet = model.singlet();
    let reference = model.singlet_product_table();
    let n = model.states().len();
    let patterns: [(usize, [usize; 4]); 4] = [
        (0, [0, 1, 0, 1]),
        (1, [0, 1, 0, 2]),
        (2, [0, 1, 1, 2]),
        (3, [0, 1, 2, 3]),
    ];
    let mut assignments = 0;
    for r in 0..n {
        for s in 0..n {
            for t in 0..n {
                for u in 0..n {
                    if [r, s, t, u].iter().collect::<std::collections::HashSet<_>>().len() != 4 {
                        continue;
                    }
                    assignments += 1;
                    let map = [r, s, t, u];
                    for (row_index, pattern) in patterns {
                        let [a, b, c, d] = pattern.map(|k| map[k]);
                        let obs = ProductObservable::new(
                            model.observable(a, b).unwrap(),
                            model.observable(c, d).unwrap(),
                        );
                        let dist = model.measure_joint(&obs, singlet.rep());
                        let expect = reference[row_index].distribution.as_ref().unwrap();
                        assert_eq!(dist.probability((1, 1)), expect[0]);
                        assert_eq!(dist.probability((1, -1)), expect[1]);
                        assert_eq!(dist.probability((-1, 1)), expect[2]);
                        assert_eq!(dist.probability((-1, -1)), expect[3]);
                    }
                }
            }
        }
    }
    assert_eq!(assignments, 6 * 5 * 4 * 3);
}

#[test]
fn conjugate_dual_pairs_to_one_on_two_particle_states() {
    let b = Bqm::new(3).unwrap();
    for point in enumerate_projective(b.field(), 4).unwrap() {
        match b.conjugate_dual(point.rep()) {
            Ok(dual) => assert!(bracket(&dual, point.rep()).is_one()),
            Err(gfqm::Error::Unphysical) => assert!(!b.is_physical(point.rep())),
            Err(e) => panic!("unexpected error {e}"),
        }
    }
}
