//! The biorthogonal expectation-value model on `GF(p^2)^N`, `p = 3 mod 4`.
//!
//! `GF(p^2) = GF(p)[i]` (modulus `x^2 + 1`) plays the role of the complex
//! numbers, with the Frobenius map as conjugation. The dot product
//! `a . b = sum a_k^p b_k` is sesquilinear; a state is *physical* when its
//! self dot product is nonzero, and only then does a conjugate dual exist.
//! Biorthogonal systems (mutually orthogonal, non-self-orthogonal bases
//! paired with their conjugate duals) replace orthonormal bases, and
//! hermitian-analog operators `sum alpha_k |k><k|` with `alpha_k` in the
//! prime subfield replace hermitian operators.
//!
//! Expectation values `<psi|A|psi>` land in the prime subfield and reach the
//! reals through the product-preserving sign map, so every prediction is one
//! of -1, 0, +1. Predicting expectation values instead of probabilities is
//! what lifts the CHSH maximum to the absolute bound 4 — beyond the quantum
//! `2*sqrt(2)` — while individual outcome probabilities stay indeterminate
//! up to the affine constraints reported by
//! [`Bqm::probability_constraints`].

use crate::field::{Field, Fq};
use crate::linalg::{
    bracket, canonicalize, enumerate_pgl, enumerate_projective, DualVector, Matrix,
    ProjectivePoint, Vector,
};
use crate::{rat, Error, Rational, Result};

/// A projective state together with its (always freshly computed)
/// physicality flag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BqmState {
    point: ProjectivePoint,
    physical: bool,
}

impl BqmState {
    pub fn point(&self) -> &ProjectivePoint {
        &self.point
    }

    pub fn is_physical(&self) -> bool {
        self.physical
    }
}

/// Paired bases of the space and its dual with `<r|s> = delta_rs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiorthogonalSystem {
    kets: Vec<ProjectivePoint>,
    bras: Vec<DualVector>,
}

impl BiorthogonalSystem {
    pub fn kets(&self) -> &[ProjectivePoint] {
        &self.kets
    }

    pub fn bras(&self) -> &[DualVector] {
        &self.bras
    }

    pub fn dim(&self) -> usize {
        self.kets.len()
    }
}

/// A hermitian-analog operator `sum alpha_k |k><k|` over a biorthogonal
/// system, with eigenvalues in the prime subfield.
#[derive(Clone, Debug)]
pub struct HermitianAnalog {
    label: String,
    matrix: Matrix,
    system: BiorthogonalSystem,
    eigenvalues: Vec<Fq>,
}

impl HermitianAnalog {
    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn system(&self) -> &BiorthogonalSystem {
        &self.system
    }

    pub fn eigenvalues(&self) -> &[Fq] {
        &self.eigenvalues
    }
}

/// An expectation value: the raw prime-subfield bracket and its image under
/// the sign map.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpectationRecord {
    /// `<psi|A|psi>` as an element of `GF(p)`.
    pub raw: Fq,
    /// `phi(raw)` in `{-1, 0, +1}`.
    pub value: i64,
}

/// Census of a projective state space under the physicality split.
#[derive(Clone, Debug)]
pub struct StateCensus {
    pub dim: usize,
    pub total: u64,
    pub physical: u64,
    pub unphysical: u64,
    /// Populated for the two-particle space (dim 4).
    pub product: Option<u64>,
    pub entangled: Option<u64>,
    pub entangled_physical: Option<u64>,
    pub entangled_unphysical: Option<u64>,
    pub states: Vec<BqmState>,
}

/// Affine constraints the predicted expectation value places on the four
/// joint outcome probabilities.
#[derive(Clone, Debug)]
pub struct ProbabilityConstraints {
    pub expectation: i64,
    /// Outcomes whose probability is pinned (to zero).
    pub forced: Vec<((i8, i8), Rational)>,
    /// Remaining sum constraints, each a set of outcomes with its total.
    pub relations: Vec<(Vec<(i8, i8)>, Rational)>,
    pub degrees_of_freedom: usize,
}

/// A CHSH maximizer in the expectation-value model.
#[derive(Clone, Debug)]
pub struct BqmChshWitness {
    pub state: ProjectivePoint,
    pub a: String,
    pub a_prime: String,
    pub b: String,
    pub b_prime: String,
}

#[derive(Clone, Debug)]
pub struct BqmChshResult {
    pub max: i64,
    pub physical_states_searched: usize,
    /// States attaining the maximum.
    pub witness_states: u64,
    /// (state, setting quadruple) combinations attaining the maximum.
    pub witness_quadruples: u64,
    pub witness: Option<BqmChshWitness>,
}

/// The model over `GF(p^2)` together with its prime subfield.
pub struct Bqm {
    field: Field,
    prime: Field,
}

impl Bqm {
    pub fn new(p: u64) -> Result<Bqm> {
        if p % 4 != 3 {
            return Err(Error::NotQuadratic { p, n: 2 });
        }
        let field = Field::new(p, 2)?;
        let prime = Field::new(p, 1)?;
        debug_assert!(field.is_quadratic_over_prime());
        Ok(Bqm { field, prime })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn prime_field(&self) -> &Field {
        &self.prime
    }

    pub fn p(&self) -> u64 {
        self.prime.p()
    }

    /// The sesquilinear dot product `sum a_k^p b_k`.
    pub fn dot(&self, a: &Vector, b: &Vector) -> Fq {
        assert_eq!(a.dim(), b.dim(), "dot product dimension mismatch");
        let mut acc = self.field.zero();
        for (x, y) in a.entries().iter().zip(b.entries()) {
            acc = acc + x.frobenius() * y;
        }
        acc
    }

    /// A state is physical exactly when it is not self-orthogonal.
    pub fn is_physical(&self, v: &Vector) -> bool {
        !self.dot(v, v).is_zero()
    }

    pub fn state(&self, point: ProjectivePoint) -> BqmState {
        let physical = self.is_physical(point.rep());
        BqmState { point, physical }
    }

    /// The conjugate dual `<psi| = (|psi> .) / (psi . psi)`, the row vector
    /// with `<psi|psi> = 1`. Errors on self-orthogonal (unphysical) states.
    pub fn conjugate_dual(&self, v: &Vector) -> Result<DualVector> {
        if v.is_zero() {
            return Err(Error::ZeroVector);
        }
        let norm = self.dot(v, v);
        if norm.is_zero() {
            return Err(Error::Unphysical);
        }
        let inv = norm.inv().expect("norm is nonzero");
        Ok(DualVector::new(
            v.entries()
                .iter()
                .map(|x| x.frobenius() * &inv)
                .collect(),
        ))
    }

    /// Exhaustive physicality census of `PG(dim-1, p^2)`; for the
    /// two-particle space the product/entangled split is included.
    pub fn classify_states(&self, dim: usize) -> Result<StateCensus> {
        let points = enumerate_projective(&self.field, dim)?;
        let states: Vec<BqmState> = points.into_iter().map(|pt| self.state(pt)).collect();
        let total = states.len() as u64;
        let physical = states.iter().filter(|s| s.physical).count() as u64;
        let mut census = StateCensus {
            dim,
            total,
            physical,
            unphysical: total - physical,
            product: None,
            entangled: None,
            entangled_physical: None,
            entangled_unphysical: None,
            states,
        };
        if dim == 4 {
            let mut product = 0u64;
            let mut entangled = 0u64;
            let mut entangled_physical = 0u64;
            for s in &census.states {
                let m = Matrix::new(2, s.point.rep().entries().to_vec());
                if m.is_singular() {
                    product += 1;
                } else {
                    entangled += 1;
                    if s.physical {
                        entangled_physical += 1;
                    }
                }
            }
            census.product = Some(product);
            census.entangled = Some(entangled);
            census.entangled_physical = Some(entangled_physical);
            census.entangled_unphysical = Some(entangled - entangled_physical);
        }
        Ok(census)
    }

    /// All biorthogonal systems of the single-particle space: unordered
    /// pairs of mutually orthogonal physical points, listed by their
    /// enumeration indices.
    pub fn biorthogonal_systems(&self) -> Result<Vec<BiorthogonalSystem>> {
        let physical: Vec<ProjectivePoint> = enumerate_projective(&self.field, 2)?
            .into_iter()
            .filter(|pt| self.is_physical(pt.rep()))
            .collect();
        let mut out = Vec::new();
        for (i, u) in physical.iter().enumerate() {
            for v in physical.iter().skip(i + 1) {
                if self.dot(u.rep(), v.rep()).is_zero() {
                    out.push(self.system_from_kets(vec![u.clone(), v.clone()])?);
                }
            }
        }
        Ok(out)
    }

    fn system_from_kets(&self, kets: Vec<ProjectivePoint>) -> Result<BiorthogonalSystem> {
        let bras = kets
            .iter()
            .map(|k| self.conjugate_dual(k.rep()))
            .collect::<Result<Vec<_>>>()?;
        // the pairing must come out as the identity matrix
        for (r, bra) in bras.iter().enumerate() {
            for (s, ket) in kets.iter().enumerate() {
                let pairing = bracket(bra, ket.rep());
                let expect = if r == s {
                    self.field.one()
                } else {
                    self.field.zero()
                };
                if pairing != expect {
                    return Err(Error::Internal(
                        "biorthogonal pairing is not the identity".into(),
                    ));
                }
            }
        }
        Ok(BiorthogonalSystem { kets, bras })
    }

    /// `sum alpha_k |k><k|` with the given eigenvalues, which must lie in
    /// the prime subfield.
    pub fn hermitian_analog(
        &self,
        system: &BiorthogonalSystem,
        eigenvalues: &[Fq],
        label: impl Into<String>,
    ) -> Result<HermitianAnalog> {
        assert_eq!(
            eigenvalues.len(),
            system.dim(),
            "one eigenvalue per basis vector"
        );
        for alpha in eigenvalues {
            if !alpha.in_prime_subfield() {
                return Err(Error::EigenvalueOutsidePrimeSubfield(alpha.to_string()));
            }
        }
        let n = system.dim();
        let mut entries = vec![self.field.zero(); n * n];
        for ((ket, bra), alpha) in system.kets.iter().zip(&system.bras).zip(eigenvalues) {
            for i in 0..n {
                for j in 0..n {
                    let term = alpha * &(&ket.rep().entries()[i] * &bra.entries()[j]);
                    entries[i * n + j] = &entries[i * n + j] + &term;
                }
            }
        }
        Ok(HermitianAnalog {
            label: label.into(),
            matrix: Matrix::new(n, entries),
            system: system.clone(),
            eigenvalues: eigenvalues.to_vec(),
        })
    }

    /// The spin-like observable of a system: eigenvalues +1 and -1.
    pub fn spin_analog(
        &self,
        system: &BiorthogonalSystem,
        label: impl Into<String>,
    ) -> HermitianAnalog {
        let plus = self.field.one();
        let minus = -&self.field.one();
        self.hermitian_analog(system, &[plus, minus], label)
            .expect("unit eigenvalues lie in the prime subfield")
    }

    /// The three Pauli matrices with entries in `GF(p^2)`, each together
    /// with the biorthogonal system that generates it.
    pub fn standard_paulis(&self) -> [HermitianAnalog; 3] {
        let f = &self.field;
        let point = |coeffs: &[&[i64]]| {
            canonicalize(&Vector::from_coeffs(f, coeffs)).expect("nonzero basis vectors")
        };
        let sys1 = self
            .system_from_kets(vec![point(&[&[1], &[1]]), point(&[&[1], &[-1]])])
            .expect("pauli bases are biorthogonal");
        let sys2 = self
            .system_from_kets(vec![point(&[&[1], &[0, 1]]), point(&[&[1], &[0, -1]])])
            .expect("pauli bases are biorthogonal");
        let sys3 = self
            .system_from_kets(vec![point(&[&[1], &[0]]), point(&[&[0], &[1]])])
            .expect("pauli bases are biorthogonal");
        [
            self.spin_analog(&sys1, "sigma1"),
            self.spin_analog(&sys2, "sigma2"),
            self.spin_analog(&sys3, "sigma3"),
        ]
    }

    /// `phi(<psi|A|psi>)`: the raw bracket (always in the prime subfield)
    /// and its sign-map image. Scalar invariant, since the conjugate dual
    /// rescales by the inverse of the state's scalar.
    pub fn expectation(&self, op: &Matrix, psi: &Vector) -> Result<ExpectationRecord> {
        let dual = self.conjugate_dual(psi)?;
        let raw = bracket(&dual, &op.apply(psi));
        if !raw.in_prime_subfield() {
            return Err(Error::Internal(format!(
                "expectation {raw} escaped the prime subfield"
            )));
        }
        let raw = self.prime.from_u64(raw.constant_coeff());
        let value = raw.sign_map()?;
        Ok(ExpectationRecord { raw, value })
    }

    /// The two-particle state saturating the CHSH bound.
    pub fn u_state(&self) -> Vector {
        Vector::from_coeffs(&self.field, &[&[1], &[0], &[1], &[1, 1]])
    }

    /// The CHSH combination for four 2x2 settings on a physical
    /// two-particle state; always an integer in `[0, 4]`.
    pub fn chsh(
        &self,
        psi: &Vector,
        a: &Matrix,
        a_prime: &Matrix,
        b: &Matrix,
        b_prime: &Matrix,
    ) -> Result<i64> {
        let ev = |x: &Matrix, y: &Matrix| -> Result<i64> {
            Ok(self.expectation(&x.kronecker(y), psi)?.value)
        };
        let value =
            (ev(a, b)? + ev(a, b_prime)? + ev(a_prime, b)? - ev(a_prime, b_prime)?).abs();
        debug_assert!((0..=4).contains(&value));
        Ok(value)
    }

    /// Exhaustive CHSH search over every physical two-particle state and
    /// all quadruples of Pauli-analog settings.
    pub fn chsh_max(&self) -> Result<BqmChshResult> {
        let paulis = self.standard_paulis();
        let labels: Vec<String> = paulis.iter().map(|p| p.label().to_string()).collect();
        // all nine Kronecker products, indexed [a][b]
        let mut kron = Vec::with_capacity(9);
        for a in &paulis {
            for b in &paulis {
                kron.push(a.matrix().kronecker(b.matrix()));
            }
        }
        let census = self.classify_states(4)?;
        let mut best = -1i64;
        let mut witness_states = 0u64;
        let mut witness_quadruples = 0u64;
        let mut witness = None;
        let mut searched = 0usize;
        for state in census.states.iter().filter(|s| s.physical) {
            searched += 1;
            let dual = self.conjugate_dual(state.point.rep())?;
            let mut values = [0i64; 9];
            for (k, op) in kron.iter().enumerate() {
                let raw = bracket(&dual, &op.apply(state.point.rep()));
                if !raw.in_prime_subfield() {
                    return Err(Error::Internal(format!(
                        "expectation {raw} escaped the prime subfield"
                    )));
                }
                values[k] = self.prime.from_u64(raw.constant_coeff()).sign_map()?;
            }
            let mut state_hit = false;
            for ia in 0..3 {
                for iap in 0..3 {
                    for ib in 0..3 {
                        for ibp in 0..3 {
                            let v = (values[ia * 3 + ib]
                                + values[ia * 3 + ibp]
                                + values[iap * 3 + ib]
                                - values[iap * 3 + ibp])
                                .abs();
                            if v > best {
                                best = v;
                                witness_states = 0;
                                witness_quadruples = 0;
                                state_hit = false;
                                witness = Some(BqmChshWitness {
                                    state: state.point.clone(),
                                    a: labels[ia].clone(),
                                    a_prime: labels[iap].clone(),
                                    b: labels[ib].clone(),
                                    b_prime: labels[ibp].clone(),
                                });
                            }
                            if v == best {
                                witness_quadruples += 1;
                                if !state_hit {
                                    state_hit = true;
                                    witness_states += 1;
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(BqmChshResult {
            max: best,
            physical_states_searched: searched,
            witness_states,
            witness_quadruples,
            witness,
        })
    }

    /// What the predicted expectation value of `a (x) b` says about the four
    /// joint outcome probabilities: the normalization and correlation
    /// equations pin the same-sign and opposite-sign pair totals; forced
    /// zeros are reported, the rest stays free.
    pub fn probability_constraints(
        &self,
        psi: &Vector,
        a: &HermitianAnalog,
        b: &HermitianAnalog,
    ) -> Result<ProbabilityConstraints> {
        let e = self
            .expectation(&a.matrix().kronecker(b.matrix()), psi)?
            .value;
        let same_total = rat(1 + e, 2); // P(++) + P(--)
        let diff_total = rat(1 - e, 2); // P(+-) + P(-+)
        let mut forced = Vec::new();
        let mut relations = Vec::new();
        let mut degrees_of_freedom = 0;
        use num_traits::Zero;
        if same_total.is_zero() {
            forced.push(((1, 1), Rational::zero()));
            forced.push(((-1, -1), Rational::zero()));
        } else {
            relations.push((vec![(1, 1), (-1, -1)], same_total));
            degrees_of_freedom += 1;
        }
        if diff_total.is_zero() {
            forced.push(((1, -1), Rational::zero()));
            forced.push(((-1, 1), Rational::zero()));
        } else {
            relations.push((vec![(1, -1), (-1, 1)], diff_total));
            degrees_of_freedom += 1;
        }
        Ok(ProbabilityConstraints {
            expectation: e,
            forced,
            relations,
            degrees_of_freedom,
        })
    }

    /// What stands in for the joint table bridge of the probability model.
    ///
    /// This model predicts no joint outcome distributions, so there is no
    /// table to hand to the hidden-variable oracle; a predicted expectation
    /// value only pins the two outcome-pair sums. The bridge therefore
    /// returns the constraint set for every setting pair instead.
    pub fn bipartite_constraints(
        &self,
        psi: &Vector,
        side_a: &[HermitianAnalog],
        side_b: &[HermitianAnalog],
    ) -> Result<Vec<(String, String, ProbabilityConstraints)>> {
        let mut out = Vec::with_capacity(side_a.len() * side_b.len());
        for a in side_a {
            for b in side_b {
                out.push((
                    a.label().to_string(),
                    b.label().to_string(),
                    self.probability_constraints(psi, a, b)?,
                ));
            }
        }
        Ok(out)
    }

    /// Canonical representatives of the projective unitary group: classes of
    /// matrices with `U^dagger U` a nonzero scalar, which the norm map's
    /// surjectivity lets one rescale to +-identity. A subgroup of the
    /// projective linear group.
    pub fn enumerate_pu(&self) -> Result<Vec<Matrix>> {
        let pgl = enumerate_pgl(&self.field, 2)?;
        let mut out = Vec::new();
        for u in pgl {
            let h = u.transpose().frobenius_entrywise().mul(&u);
            let lambda = h.at(0, 0);
            if lambda.is_zero() {
                continue;
            }
            if h.at(0, 1).is_zero() && h.at(1, 0).is_zero() && h.at(1, 1) == lambda {
                debug_assert!(lambda.in_prime_subfield());
                out.push(u);
            }
        }
        Ok(out)
    }
}
