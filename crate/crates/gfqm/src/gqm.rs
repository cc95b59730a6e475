//! The probability-based model on `PG(1, q)` and its two-spin correlations.
//!
//! A measurement is a basis of the dual space; the probability of the
//! outcome `<x|` on the state `|psi>` is
//!
//! ```text
//! P(x|psi) = |<x|psi>| / sum_y |<y|psi>|
//! ```
//!
//! with `|.|` the product-preserving absolute value on `GF(q)`. Every
//! nonzero bracket gets equal weight, so all probabilities are exact small
//! rationals. Spin-like observables `A(r,s)` pair two of the `q+1` standard
//! dual vectors and carry outcomes +1/-1.
//!
//! On the two-particle space `GF(q)^2 (x) GF(q)^2` the singlet state's
//! product-observable distributions are independent of `q` and of the index
//! choice, no local-hidden-variable model reproduces them (see
//! [`crate::lhv`]), and yet the exhaustive CHSH maximum is exactly the
//! classical bound 2.

use std::collections::HashSet;

use num_traits::{One, Signed, Zero};

use crate::field::Field;
use crate::linalg::{
    apply_local, bracket, canonicalize, enumerate_pgl, enumerate_projective, DualVector, Matrix,
    ProjectivePoint, Side, Vector,
};
use crate::{rat, Error, Rational, Result};

/// Outcome label that carries a +-1 weight.
pub trait OutcomeLabel: Copy {
    fn weight(&self) -> i64;
}

impl OutcomeLabel for i8 {
    fn weight(&self) -> i64 {
        *self as i64
    }
}

impl OutcomeLabel for (i8, i8) {
    fn weight(&self) -> i64 {
        (self.0 * self.1) as i64
    }
}

/// An exact probability distribution over measurement outcomes.
#[derive(Clone, Debug, PartialEq)]
pub struct OutcomeDistribution<L: OutcomeLabel> {
    outcomes: Vec<(L, Rational)>,
}

impl<L: OutcomeLabel> OutcomeDistribution<L> {
    fn new(outcomes: Vec<(L, Rational)>) -> Self {
        let total: Rational = outcomes.iter().map(|(_, p)| p.clone()).sum();
        assert!(total.is_one(), "outcome probabilities must sum to 1");
        assert!(
            outcomes.iter().all(|(_, p)| !p.is_negative()),
            "negative probability"
        );
        OutcomeDistribution { outcomes }
    }

    pub fn outcomes(&self) -> &[(L, Rational)] {
        &self.outcomes
    }

    pub fn probability(&self, label: L) -> Rational
    where
        L: PartialEq,
    {
        self.outcomes
            .iter()
            .find(|(l, _)| *l == label)
            .map(|(_, p)| p.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// Expectation of the +-1 outcome weights.
    pub fn expectation(&self) -> Rational {
        self.outcomes
            .iter()
            .map(|(l, p)| p * rat(l.weight(), 1))
            .sum()
    }
}

/// A spin-like observable: an ordered pair of standard dual vectors, the
/// first carrying outcome +1 and the second -1. Swapping the pair negates
/// the observable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpinObservable {
    plus_index: usize,
    minus_index: usize,
    plus: DualVector,
    minus: DualVector,
}

impl SpinObservable {
    pub fn plus_index(&self) -> usize {
        self.plus_index
    }

    pub fn minus_index(&self) -> usize {
        self.minus_index
    }

    pub fn plus(&self) -> &DualVector {
        &self.plus
    }

    pub fn minus(&self) -> &DualVector {
        &self.minus
    }

    pub fn label(&self) -> String {
        format!("A({},{})", self.plus_index, self.minus_index)
    }
}

/// A product observable on the two-particle space; its four outcomes
/// `++, +-, -+, --` are tensor products of the factors' dual vectors.
#[derive(Clone, Debug)]
pub struct ProductObservable {
    left: SpinObservable,
    right: SpinObservable,
}

impl ProductObservable {
    pub fn new(left: SpinObservable, right: SpinObservable) -> Self {
        ProductObservable { left, right }
    }

    pub fn label(&self) -> String {
        format!("{}*{}", self.left.label(), self.right.label())
    }

    fn outcome_duals(&self) -> [((i8, i8), DualVector); 4] {
        let l = &self.left;
        let r = &self.right;
        [
            ((1, 1), l.plus.tensor(&r.plus)),
            ((1, -1), l.plus.tensor(&r.minus)),
            ((-1, 1), l.minus.tensor(&r.plus)),
            ((-1, -1), l.minus.tensor(&r.minus)),
        ]
    }
}

/// Census of the two-particle projective space.
#[derive(Clone, Debug)]
pub struct TwoParticleCensus {
    pub total: u64,
    pub product: u64,
    pub entangled: u64,
    pub entangled_states: Vec<ProjectivePoint>,
}

/// One row of the singlet product-observable table.
#[derive(Clone, Debug)]
pub struct SingletTableRow {
    /// Index pattern of the two factors, e.g. `A(r,s)*A(r,t)`.
    pub pattern: &'static str,
    /// Number of distinct indices the pattern needs.
    pub indices_needed: usize,
    /// `++, +-, -+, --` probabilities; `None` when the field has too few
    /// standard states for the pattern.
    pub distribution: Option<[Rational; 4]>,
    pub expectation: Option<Rational>,
}

/// Scope of the CHSH search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchScope {
    /// Every entangled two-particle state.
    AllEntangled,
    /// The singlet only; sufficient because one-sided projective rotations
    /// act transitively on the entangled states (itself a tested fact).
    SingletOnly,
}

/// A CHSH maximizer: the state and the four observable settings.
#[derive(Clone, Debug)]
pub struct GqmChshWitness {
    pub state: ProjectivePoint,
    pub a: (usize, usize),
    pub a_prime: (usize, usize),
    pub b: (usize, usize),
    pub b_prime: (usize, usize),
}

#[derive(Clone, Debug)]
pub struct GqmChshResult {
    pub max: Rational,
    pub scope: SearchScope,
    pub states_searched: usize,
    pub settings_per_side: usize,
    /// Number of (state, setting-quadruple) combinations attaining the max.
    pub witness_count: u64,
    pub witness: Option<GqmChshWitness>,
}

/// The model over one field: the `q+1` standard states and dual vectors,
/// and everything built from them.
pub struct Gqm {
    field: Field,
    states: Vec<ProjectivePoint>,
    duals: Vec<DualVector>,
}

impl Gqm {
    pub fn new(field: Field) -> Result<Gqm> {
        let q = field.order();
        let g = field.generator();
        let one = field.one();
        let zero = field.zero();

        let mut raw_states = Vec::with_capacity(q as usize + 1);
        raw_states.push(Vector::new(vec![one.clone(), zero.clone()]));
        raw_states.push(Vector::new(vec![zero.clone(), one.clone()]));
        for r in 2..=q {
            raw_states.push(Vector::new(vec![g.pow(r - 1), one.clone()]));
        }
        let states = raw_states
            .iter()
            .map(canonicalize)
            .collect::<Result<Vec<_>>>()?;

        // minus signs evaporate on their own in characteristic two
        let mut duals = Vec::with_capacity(q as usize + 1);
        duals.push(DualVector::new(vec![zero.clone(), -&one]));
        duals.push(DualVector::new(vec![one.clone(), zero.clone()]));
        for r in 2..=q {
            duals.push(DualVector::new(vec![one.clone(), -&g.pow(r - 1)]));
        }

        Ok(Gqm {
            field,
            states,
            duals,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn q(&self) -> u64 {
        self.field.order()
    }

    /// The `q+1` standard states (canonical projective representatives).
    pub fn states(&self) -> &[ProjectivePoint] {
        &self.states
    }

    /// The `q+1` standard dual vectors, satisfying `|<r|s>| = 1 - delta_rs`.
    pub fn duals(&self) -> &[DualVector] {
        &self.duals
    }

    /// The observable pairing dual `plus` (outcome +1) with dual `minus`
    /// (outcome -1).
    pub fn observable(&self, plus: usize, minus: usize) -> Result<SpinObservable> {
        if plus == minus {
            return Err(Error::IndicesNotDistinct(plus, minus));
        }
        let count = self.duals.len();
        for index in [plus, minus] {
            if index >= count {
                return Err(Error::UnknownSetting { index, count });
            }
        }
        Ok(SpinObservable {
            plus_index: plus,
            minus_index: minus,
            plus: self.duals[plus].clone(),
            minus: self.duals[minus].clone(),
        })
    }

    /// All `(q+1) q` ordered-pair observables in deterministic order.
    pub fn observables(&self) -> Vec<SpinObservable> {
        let n = self.duals.len();
        let mut out = Vec::with_capacity(n * (n - 1));
        for plus in 0..n {
            for minus in 0..n {
                if plus != minus {
                    out.push(self.observable(plus, minus).expect("indices valid"));
                }
            }
        }
        out
    }

    /// Single-particle measurement; scalar invariant in `psi`.
    pub fn measure(&self, obs: &SpinObservable, psi: &Vector) -> OutcomeDistribution<i8> {
        assert_eq!(psi.dim(), 2, "single-particle states have dimension 2");
        let weights = [
            bracket(&obs.plus, psi).abs_map(),
            bracket(&obs.minus, psi).abs_map(),
        ];
        Self::distribution([(1i8, weights[0]), (-1i8, weights[1])])
    }

    /// Two-particle measurement of a product observable.
    pub fn measure_joint(
        &self,
        obs: &ProductObservable,
        psi: &Vector,
    ) -> OutcomeDistribution<(i8, i8)> {
        assert_eq!(psi.dim(), 4, "two-particle states have dimension 4");
        let weighted = obs
            .outcome_duals()
            .map(|(label, dual)| (label, bracket(&dual, psi).abs_map()));
        Self::distribution(weighted)
    }

    fn distribution<L: OutcomeLabel, const K: usize>(
        weights: [(L, u64); K],
    ) -> OutcomeDistribution<L> {
        let total: u64 = weights.iter().map(|(_, w)| w).sum();
        assert!(total > 0, "measurement duals span the dual space");
        OutcomeDistribution::new(
            weights
                .into_iter()
                .map(|(l, w)| (l, rat(w as i64, total as i64)))
                .collect(),
        )
    }

    pub fn expectation(&self, obs: &SpinObservable, psi: &Vector) -> Rational {
        self.measure(obs, psi).expectation()
    }

    pub fn expectation_joint(&self, obs: &ProductObservable, psi: &Vector) -> Rational {
        self.measure_joint(obs, psi).expectation()
    }

    /// The singlet state, built from standard states 0 and 1. In
    /// characteristic two the relative minus sign is itself a plus.
    pub fn singlet(&self) -> ProjectivePoint {
        self.singlet_from(0, 1).expect("indices 0 and 1 are valid")
    }

    /// The same projective point for every choice of distinct indices.
    pub fn singlet_from(&self, r: usize, s: usize) -> Result<ProjectivePoint> {
        if r == s {
            return Err(Error::IndicesNotDistinct(r, s));
        }
        let count = self.states.len();
        for index in [r, s] {
            if index >= count {
                return Err(Error::UnknownSetting { index, count });
            }
        }
        let vr = self.states[r].rep();
        let vs = self.states[s].rep();
        let v = vr.tensor(vs).sub(&vs.tensor(vr));
        canonicalize(&v)
    }

    /// Counts and lists the two-particle states; a state is a product state
    /// exactly when its 2x2 entry arrangement is singular.
    pub fn classify_two_particle(&self) -> Result<TwoParticleCensus> {
        let points = enumerate_projective(&self.field, 4)?;
        let mut product = 0u64;
        let mut entangled_states = Vec::new();
        for point in &points {
            let m = Matrix::new(2, point.rep().entries().to_vec());
            if m.is_singular() {
                product += 1;
            } else {
                entangled_states.push(point.clone());
            }
        }
        Ok(TwoParticleCensus {
            total: points.len() as u64,
            product,
            entangled: entangled_states.len() as u64,
            entangled_states,
        })
    }

    /// The four singlet table rows, evaluated with the smallest distinct
    /// indices; the values are independent of that choice.
    pub fn singlet_product_table(&self) -> Vec<SingletTableRow> {
        let patterns: [(&'static str, usize, [usize; 4]); 4] = [
            ("A(r,s)*A(r,s)", 2, [0, 1, 0, 1]),
            ("A(r,s)*A(r,t)", 3, [0, 1, 0, 2]),
            ("A(r,s)*A(s,t)", 3, [0, 1, 1, 2]),
            ("A(r,s)*A(t,u)", 4, [0, 1, 2, 3]),
        ];
        let available = self.states.len();
        let singlet = self.singlet();
        patterns
            .into_iter()
            .map(|(pattern, needed, [a, b, c, d])| {
                if needed > available {
                    return SingletTableRow {
                        pattern,
                        indices_needed: needed,
                        distribution: None,
                        expectation: None,
                    };
                }
                let obs = ProductObservable::new(
                    self.observable(a, b).expect("valid"),
                    self.observable(c, d).expect("valid"),
                );
                let dist = self.measure_joint(&obs, singlet.rep());
                let expectation = dist.expectation();
                let probs = [
                    dist.probability((1, 1)),
                    dist.probability((1, -1)),
                    dist.probability((-1, 1)),
                    dist.probability((-1, -1)),
                ];
                SingletTableRow {
                    pattern,
                    indices_needed: needed,
                    distribution: Some(probs),
                    expectation: Some(expectation),
                }
            })
            .collect()
    }

    /// Absolute values of all dual-pair brackets against a two-particle
    /// state: `table[r][t] = |(<r| (x) <t|) |psi>|`.
    fn abs_bracket_table(&self, psi: &Vector) -> Vec<Vec<u64>> {
        let n = self.duals.len();
        let entries = psi.entries();
        let mut table = vec![vec![0u64; n]; n];
        for (r, xr) in self.duals.iter().enumerate() {
            // row vector x_r times the 2x2 arrangement of psi
            let row = [
                &(&xr.entries()[0] * &entries[0]) + &(&xr.entries()[1] * &entries[2]),
                &(&xr.entries()[0] * &entries[1]) + &(&xr.entries()[1] * &entries[3]),
            ];
            for (t, yt) in self.duals.iter().enumerate() {
                let val = &(&row[0] * &yt.entries()[0]) + &(&row[1] * &yt.entries()[1]);
                table[r][t] = val.abs_map();
            }
        }
        table
    }

    /// Correlators of all observable pairs on a state, scaled by 12 so they
    /// are exact machine integers (denominators divide 4, and 12 covers the
    /// lcm of 1..4 after the sign combination).
    fn correlator_grid(&self, abs: &[Vec<u64>], pairs: &[(usize, usize)]) -> Vec<i64> {
        let m = pairs.len();
        let mut grid = vec![0i64; m * m];
        for (ia, &(r, s)) in pairs.iter().enumerate() {
            for (ib, &(t, u)) in pairs.iter().enumerate() {
                let pp = abs[r][t] as i64;
                let pm = abs[r][u] as i64;
                let mp = abs[s][t] as i64;
                let mm = abs[s][u] as i64;
                let den = pp + pm + mp + mm;
                let num = pp - pm - mp + mm;
                debug_assert!(den >= 1 && 12 % den == 0);
                grid[ia * m + ib] = 12 * num / den;
            }
        }
        grid
    }

    /// Exhaustive CHSH maximum over spin-observable quadruples, either on
    /// every entangled state or on the singlet alone.
    pub fn chsh_max(&self, scope: SearchScope) -> Result<GqmChshResult> {
        let states: Vec<ProjectivePoint> = match scope {
            SearchScope::AllEntangled => self.classify_two_particle()?.entangled_states,
            SearchScope::SingletOnly => vec![self.singlet()],
        };
        let n = self.duals.len();
        let mut pairs = Vec::with_capacity(n * (n - 1));
        for r in 0..n {
            for s in 0..n {
                if r != s {
                    pairs.push((r, s));
                }
            }
        }
        let m = pairs.len();

        let mut best: i64 = -1;
        let mut witness_count = 0u64;
        let mut witness = None;
        for state in &states {
            let abs = self.abs_bracket_table(state.rep());
            let grid = self.correlator_grid(&abs, &pairs);
            for ia in 0..m {
                for iap in 0..m {
                    for ib in 0..m {
                        let base = grid[ia * m + ib] + grid[iap * m + ib];
                        for ibp in 0..m {
                            let v = (base + grid[ia * m + ibp] - grid[iap * m + ibp]).abs();
                            if v > best {
                                best = v;
                                witness_count = 1;
                                witness = Some(GqmChshWitness {
                                    state: state.clone(),
                                    a: pairs[ia],
                                    a_prime: pairs[iap],
                                    b: pairs[ib],
                                    b_prime: pairs[ibp],
                                });
                            } else if v == best {
                                witness_count += 1;
                            }
                        }
                    }
                }
            }
        }
        Ok(GqmChshResult {
            max: rat(best, 12),
            scope,
            states_searched: states.len(),
            settings_per_side: m,
            witness_count,
            witness,
        })
    }

    /// One-sided local orbit of a two-particle state under `PGL(2, q)`.
    pub fn local_orbit(&self, state: &ProjectivePoint, side: Side) -> Result<HashSet<ProjectivePoint>> {
        let pgl = enumerate_pgl(&self.field, 2)?;
        let mut orbit = HashSet::new();
        for m in &pgl {
            let moved = apply_local(m, side, state.rep());
            orbit.insert(canonicalize(&moved)?);
        }
        Ok(orbit)
    }

    /// Builds the joint setting-by-setting probability table fed to the
    /// hidden-variable oracle.
    pub fn bipartite_table(
        &self,
        psi: &Vector,
        side_a: &[SpinObservable],
        side_b: &[SpinObservable],
    ) -> Result<crate::lhv::BipartiteTable> {
        let labels_a: Vec<String> = side_a.iter().map(SpinObservable::label).collect();
        let labels_b: Vec<String> = side_b.iter().map(SpinObservable::label).collect();
        let mut cells = Vec::with_capacity(side_a.len() * side_b.len());
        for a in side_a {
            for b in side_b {
                let dist =
                    self.measure_joint(&ProductObservable::new(a.clone(), b.clone()), psi);
                cells.push([
                    dist.probability((1, 1)),
                    dist.probability((1, -1)),
                    dist.probability((-1, 1)),
                    dist.probability((-1, -1)),
                ]);
            }
        }
        crate::lhv::BipartiteTable::new(labels_a, labels_b, cells)
    }

    /// The singlet table for the settings `X = A(0,1)`, `Y = A(0,2)` on both
    /// sides, the configuration whose correlations admit no hidden-variable
    /// decomposition.
    pub fn singlet_xy_table(&self) -> Result<crate::lhv::BipartiteTable> {
        let x = self.observable(0, 1)?;
        let y = self.observable(0, 2)?;
        let singlet = self.singlet();
        self.bipartite_table(
            singlet.rep(),
            &[x.clone(), y.clone()],
            &[x, y],
        )
    }
}
