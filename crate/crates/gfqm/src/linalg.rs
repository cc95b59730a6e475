//! Vectors, dual vectors, matrices and projective geometry over a [`Field`].
//!
//! States live in `GF(q)^N` and are identified up to nonzero scalars, giving
//! the projective geometry `PG(N-1, q)`. The canonical representative of a
//! point scales the first nonzero entry to 1, and the deterministic
//! enumeration orders points by the position of that leading 1 (earlier
//! first) and then lexicographically by the remaining entries, so indices
//! are stable across runs.
//!
//! The bracket `<x|psi>` is the plain bilinear pairing with no conjugation;
//! the conjugated dot product of the biorthogonal model lives in [`crate::bqm`].

use std::fmt;

use crate::field::{Field, Fq};
use crate::{Error, Result};

/// A column vector with entries in a single field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Vector {
    entries: Vec<Fq>,
}

/// A row vector representing a measurement outcome.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DualVector {
    entries: Vec<Fq>,
}

/// Which tensor factor a local operation acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    First,
    Second,
}

fn check_entries(entries: &[Fq]) {
    assert!(!entries.is_empty(), "vectors need at least one entry");
    let field = entries[0].field();
    assert!(
        entries.iter().all(|e| e.field() == field),
        "vector entries from different fields"
    );
}

fn tensor_entries(a: &[Fq], b: &[Fq]) -> Vec<Fq> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(x * y);
        }
    }
    out
}

fn fmt_entries(f: &mut fmt::Formatter<'_>, entries: &[Fq], open: char, close: char) -> fmt::Result {
    write!(f, "{open}")?;
    for (k, e) in entries.iter().enumerate() {
        if k > 0 {
            write!(f, ", ")?;
        }
        write!(f, "{e}")?;
    }
    write!(f, "{close}")
}

impl Vector {
    pub fn new(entries: Vec<Fq>) -> Vector {
        check_entries(&entries);
        Vector { entries }
    }

    /// Builds a vector from signed coefficient lists, one per entry.
    pub fn from_coeffs(field: &Field, rows: &[&[i64]]) -> Vector {
        Vector::new(rows.iter().map(|c| field.element(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn field(&self) -> &Field {
        self.entries[0].field()
    }

    pub fn entries(&self) -> &[Fq] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Fq::is_zero)
    }

    pub fn scale(&self, c: &Fq) -> Vector {
        Vector::new(self.entries.iter().map(|e| e * c).collect())
    }

    pub fn add(&self, other: &Vector) -> Vector {
        assert_eq!(self.dim(), other.dim(), "vector dimension mismatch");
        Vector::new(
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        assert_eq!(self.dim(), other.dim(), "vector dimension mismatch");
        Vector::new(
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    /// Tensor product; with row-major layout the left factor varies slowest:
    /// `(v (x) w)[k*M + l] = v[k] * w[l]`.
    pub fn tensor(&self, other: &Vector) -> Vector {
        assert!(
            self.field() == other.field(),
            "tensor factors from different fields"
        );
        Vector::new(tensor_entries(&self.entries, &other.entries))
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_entries(f, &self.entries, '(', ')')
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_entries(f, &self.entries, '(', ')')
    }
}

impl DualVector {
    pub fn new(entries: Vec<Fq>) -> DualVector {
        check_entries(&entries);
        DualVector { entries }
    }

    pub fn from_coeffs(field: &Field, rows: &[&[i64]]) -> DualVector {
        DualVector::new(rows.iter().map(|c| field.element(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn field(&self) -> &Field {
        self.entries[0].field()
    }

    pub fn entries(&self) -> &[Fq] {
        &self.entries
    }

    pub fn tensor(&self, other: &DualVector) -> DualVector {
        assert!(
            self.field() == other.field(),
            "tensor factors from different fields"
        );
        DualVector::new(tensor_entries(&self.entries, &other.entries))
    }
}

impl fmt::Debug for DualVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_entries(f, &self.entries, '[', ']')
    }
}

impl fmt::Display for DualVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_entries(f, &self.entries, '[', ']')
    }
}

/// The bilinear pairing `<x|psi> = sum_k x_k psi_k`, no conjugation.
pub fn bracket(x: &DualVector, psi: &Vector) -> Fq {
    assert!(x.field() == psi.field(), "bracket across different fields");
    if x.dim() != psi.dim() {
        panic!(
            "bracket dimension mismatch: {} vs {}",
            x.dim(),
            psi.dim()
        );
    }
    let mut acc = psi.field().zero();
    for (a, b) in x.entries.iter().zip(&psi.entries) {
        acc = acc + a * b;
    }
    acc
}

/// A point of `PG(N-1, q)`: the canonical representative of a projective
/// line together with its position in the deterministic enumeration.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProjectivePoint {
    rep: Vector,
    index: u64,
}

impl ProjectivePoint {
    pub fn rep(&self) -> &Vector {
        &self.rep
    }

    /// Position in the order produced by [`enumerate_projective`].
    pub fn index(&self) -> u64 {
        self.index
    }
}

impl fmt::Debug for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P{}{:?}", self.index, self.rep)
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rep)
    }
}

/// Scales a nonzero vector so its first nonzero entry is 1 and attaches the
/// enumeration index. Constant on scalar orbits and idempotent on canonical
/// representatives.
pub fn canonicalize(v: &Vector) -> Result<ProjectivePoint> {
    let lead = v
        .entries
        .iter()
        .position(|e| !e.is_zero())
        .ok_or(Error::ZeroVector)?;
    let scale = v.entries[lead].inv().expect("leading entry is nonzero");
    let rep = v.scale(&scale);
    let index = projective_index(&rep, lead);
    Ok(ProjectivePoint { rep, index })
}

/// Index of a canonical representative: points sort by leading-1 position
/// (ascending), then by the trailing entries read as base-q digits, leftmost
/// most significant.
fn projective_index(rep: &Vector, lead: usize) -> u64 {
    let q = rep.field().order();
    let n = rep.dim();
    let mut index = 0u64;
    for j in 0..lead {
        index += q.pow((n - 1 - j) as u32);
    }
    for m in lead + 1..n {
        index += rep.entries[m].index_value() * q.pow((n - 1 - m) as u32);
    }
    index
}

/// All `(q^N - 1)/(q - 1)` points of `PG(N-1, q)` in index order.
pub fn enumerate_projective(field: &Field, dim: usize) -> Result<Vec<ProjectivePoint>> {
    assert!(dim >= 1, "projective space needs dimension >= 1");
    crate::guarded_pow(field.order(), dim as u32)?;
    let q = field.order();
    let mut out = Vec::new();
    for lead in 0..dim {
        let tail = dim - 1 - lead;
        let count = q.pow(tail as u32);
        for t in 0..count {
            let mut entries = vec![field.zero(); dim];
            entries[lead] = field.one();
            let mut rest = t;
            for m in (lead + 1..dim).rev() {
                entries[m] = field.from_index(rest % q);
                rest /= q;
            }
            let rep = Vector::new(entries);
            let index = out.len() as u64;
            debug_assert_eq!(projective_index(&rep, lead), index);
            out.push(ProjectivePoint { rep, index });
        }
    }
    Ok(out)
}

/// A square matrix over a single field, row major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    n: usize,
    entries: Vec<Fq>,
}

impl Matrix {
    pub fn new(n: usize, entries: Vec<Fq>) -> Matrix {
        assert_eq!(entries.len(), n * n, "matrix shape mismatch");
        check_entries(&entries);
        Matrix { n, entries }
    }

    /// Builds a matrix from signed coefficient lists, one per entry, row major.
    pub fn from_coeffs(field: &Field, n: usize, rows: &[&[i64]]) -> Matrix {
        Matrix::new(n, rows.iter().map(|c| field.element(c)).collect())
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut entries = vec![field.zero(); n * n];
        for k in 0..n {
            entries[k * n + k] = field.one();
        }
        Matrix { n, entries }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &Field {
        self.entries[0].field()
    }

    pub fn at(&self, row: usize, col: usize) -> &Fq {
        &self.entries[row * self.n + col]
    }

    pub fn entries(&self) -> &[Fq] {
        &self.entries
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.n, other.n, "matrix dimension mismatch");
        let n = self.n;
        let field = self.field().clone();
        let mut entries = vec![field.zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let slot = &mut entries[i * n + j];
                    *slot = &*slot + &(a * other.at(k, j));
                }
            }
        }
        Matrix { n, entries }
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &Vector) -> Vector {
        assert_eq!(self.n, v.dim(), "matrix/vector dimension mismatch");
        let field = self.field().clone();
        let mut out = Vec::with_capacity(self.n);
        for i in 0..self.n {
            let mut acc = field.zero();
            for j in 0..self.n {
                acc = acc + self.at(i, j) * &v.entries()[j];
            }
            out.push(acc);
        }
        Vector::new(out)
    }

    pub fn transpose(&self) -> Matrix {
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(self.at(j, i).clone());
            }
        }
        Matrix { n, entries }
    }

    /// Applies the Frobenius map to every entry.
    pub fn frobenius_entrywise(&self) -> Matrix {
        Matrix {
            n: self.n,
            entries: self.entries.iter().map(Fq::frobenius).collect(),
        }
    }

    pub fn scale(&self, c: &Fq) -> Matrix {
        Matrix {
            n: self.n,
            entries: self.entries.iter().map(|e| e * c).collect(),
        }
    }

    /// Determinant by Gaussian elimination.
    pub fn det(&self) -> Fq {
        let n = self.n;
        let field = self.field().clone();
        if n == 2 {
            return self.at(0, 0) * self.at(1, 1) - self.at(0, 1) * self.at(1, 0);
        }
        let mut m: Vec<Fq> = self.entries.clone();
        let mut det = field.one();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !m[r * n + col].is_zero());
            let Some(pivot) = pivot else {
                return field.zero();
            };
            if pivot != col {
                for j in 0..n {
                    m.swap(pivot * n + j, col * n + j);
                }
                det = -det;
            }
            let inv = m[col * n + col].inv().expect("pivot nonzero");
            det = det * &m[col * n + col];
            for r in col + 1..n {
                let factor = &m[r * n + col] * &inv;
                if factor.is_zero() {
                    continue;
                }
                for j in col..n {
                    m[r * n + j] = &m[r * n + j] - &(&factor * &m[col * n + j]);
                }
            }
        }
        det
    }

    pub fn is_singular(&self) -> bool {
        self.det().is_zero()
    }

    /// Scales so the first nonzero entry in row-major order is 1, the
    /// canonical representative of the projective class of the matrix.
    pub fn canonicalize_projective(&self) -> Matrix {
        let lead = self
            .entries
            .iter()
            .find(|e| !e.is_zero())
            .expect("zero matrix has no projective class");
        self.scale(&lead.inv().expect("leading entry nonzero"))
    }

    /// Kronecker product with row-major, left-factor-slowest layout:
    /// `(A (x) B)[(i,k),(j,l)] = A[i,j] * B[k,l]`.
    pub fn kronecker(&self, other: &Matrix) -> Matrix {
        assert!(
            self.field() == other.field(),
            "kronecker factors from different fields"
        );
        let (na, nb) = (self.n, other.n);
        let n = na * nb;
        let field = self.field().clone();
        let mut entries = vec![field.zero(); n * n];
        for i in 0..na {
            for j in 0..na {
                for k in 0..nb {
                    for l in 0..nb {
                        entries[(i * nb + k) * n + (j * nb + l)] = self.at(i, j) * other.at(k, l);
                    }
                }
            }
        }
        Matrix { n, entries }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.n {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.at(i, j))?;
            }
        }
        write!(f, "]")
    }
}

/// Acts with `m` on one tensor factor of a two-particle vector:
/// `m (x) I` on [`Side::First`], `I (x) m` on [`Side::Second`].
pub fn apply_local(m: &Matrix, side: Side, psi: &Vector) -> Vector {
    let d = m.size();
    assert_eq!(psi.dim(), d * d, "two-particle vector dimension mismatch");
    let field = psi.field().clone();
    let mut out = vec![field.zero(); d * d];
    match side {
        Side::First => {
            for k in 0..d {
                for l in 0..d {
                    let mut acc = field.zero();
                    for kp in 0..d {
                        acc = acc + m.at(k, kp) * &psi.entries()[kp * d + l];
                    }
                    out[k * d + l] = acc;
                }
            }
        }
        Side::Second => {
            for k in 0..d {
                for l in 0..d {
                    let mut acc = field.zero();
                    for lp in 0..d {
                        acc = acc + m.at(l, lp) * &psi.entries()[k * d + lp];
                    }
                    out[k * d + l] = acc;
                }
            }
        }
    }
    Vector::new(out)
}

/// Canonical coset representatives of `PGL(n, q) = GL(n, q) / Z(n, q)`,
/// one leading-1 matrix per projective class, in the order inherited from
/// [`enumerate_projective`] on the flattened entries.
///
/// The group order is `q (q^2 - 1)` for `n = 2`.
pub fn enumerate_pgl(field: &Field, n: usize) -> Result<Vec<Matrix>> {
    let points = enumerate_projective(field, n * n)?;
    let mut out = Vec::new();
    for point in points {
        let m = Matrix::new(n, point.rep().entries().to_vec());
        if !m.is_singular() {
            out.push(m);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn gf(p: u64, n: usize) -> Field {
        Field::new(p, n).unwrap()
    }

    #[test]
    fn bracket_is_bilinear_and_unconjugated() {
        let f = gf(3, 1);
        let x = DualVector::from_coeffs(&f, &[&[1], &[2]]);
        let zero = Vector::from_coeffs(&f, &[&[0], &[0]]);
        assert!(bracket(&x, &zero).is_zero());
        let v = Vector::from_coeffs(&f, &[&[1], &[1]]);
        assert_eq!(bracket(&x, &v), f.zero()); // 1 + 2 = 0 mod 3
    }

    #[test]
    fn canonicalize_leading_one() {
        let f = gf(2, 2);
        let g = f.generator();
        let v = Vector::new(vec![g.clone(), f.one()]);
        let p = canonicalize(&v).unwrap();
        assert!(p.rep().entries()[0].is_one());
        assert_eq!(p.rep().entries()[1], g.inv().unwrap());

        for c in f.elements().filter(|c| !c.is_zero()) {
            let w = Vector::new(vec![f.zero(), c.clone()]);
            let pt = canonicalize(&w).unwrap();
            assert_eq!(pt.rep().entries()[1], f.one());
        }
    }

    #[test]
    fn canonicalize_rejects_zero() {
        let f = gf(3, 1);
        let zero = Vector::from_coeffs(&f, &[&[0], &[0]]);
        assert!(matches!(canonicalize(&zero), Err(Error::ZeroVector)));
    }

    #[test]
    fn gf9_plane_has_ten_points() {
        let f = gf(3, 2);
        let mut seen = std::collections::HashSet::new();
        for a in f.elements() {
            for b in f.elements() {
                if a.is_zero() && b.is_zero() {
                    continue;
                }
                let v = Vector::new(vec![a.clone(), b.clone()]);
                seen.insert(canonicalize(&v).unwrap());
            }
        }
        assert_eq!(seen.len(), 10);
    }

    #[test]
    fn projective_counts() {
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            let f = Field::prime_power(q).unwrap();
            for dim in [2usize, 4] {
                let count = enumerate_projective(&f, dim).unwrap().len() as u64;
                let expect = (q.pow(dim as u32) - 1) / (q - 1);
                assert_eq!(count, expect, "q={q} dim={dim}");
            }
        }
        let f2 = gf(2, 1);
        assert_eq!(enumerate_projective(&f2, 1).unwrap().len(), 1);
    }

    #[test]
    fn enumeration_indices_and_canonicalize_agree() {
        let f = gf(3, 1);
        for (k, point) in enumerate_projective(&f, 4).unwrap().iter().enumerate() {
            assert_eq!(point.index(), k as u64);
            let again = canonicalize(point.rep()).unwrap();
            assert_eq!(&again, point);
        }
    }

    #[test]
    fn canonicalize_constant_on_scalar_orbits() {
        let f = gf(3, 2);
        let v = Vector::from_coeffs(&f, &[&[1, 1], &[0, 2]]);
        let p = canonicalize(&v).unwrap();
        for c in f.elements().filter(|c| !c.is_zero()) {
            assert_eq!(canonicalize(&v.scale(&c)).unwrap(), p);
        }
    }

    #[test]
    fn tensor_basis_and_bilinearity() {
        let f = gf(3, 1);
        let e0 = Vector::from_coeffs(&f, &[&[1], &[0]]);
        let e1 = Vector::from_coeffs(&f, &[&[0], &[1]]);
        let t = e0.tensor(&e1);
        assert_eq!(
            t,
            Vector::from_coeffs(&f, &[&[0], &[1], &[0], &[0]])
        );
        let c = f.from_u64(2);
        let v = Vector::from_coeffs(&f, &[&[1], &[2]]);
        let w = Vector::from_coeffs(&f, &[&[2], &[1]]);
        assert_eq!(v.scale(&c).tensor(&w), v.tensor(&w).scale(&c));
    }

    #[test]
    fn tensor_bracket_factorizes() {
        // (<a| (x) <b|)(|v> (x) |w>) = <a|v> <b|w>, all nonzero pairs over GF(3)
        let f = gf(3, 1);
        let vecs: Vec<Vector> = {
            let mut out = Vec::new();
            for a in f.elements() {
                for b in f.elements() {
                    if !(a.is_zero() && b.is_zero()) {
                        out.push(Vector::new(vec![a.clone(), b.clone()]));
                    }
                }
            }
            out
        };
        for a in &vecs {
            for b in &vecs {
                let da = DualVector::new(a.entries().to_vec());
                let db = DualVector::new(b.entries().to_vec());
                for v in &vecs {
                    for w in &vecs {
                        let lhs = bracket(&da.tensor(&db), &v.tensor(w));
                        let rhs = bracket(&da, v) * bracket(&db, w);
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn pgl_orders() {
        for (q, expect) in [(2u64, 6usize), (3, 24)] {
            let f = Field::prime_power(q).unwrap();
            let pgl = enumerate_pgl(&f, 2).unwrap();
            assert_eq!(pgl.len(), expect, "q={q}");
            assert!(pgl.contains(&Matrix::identity(&f, 2)));
        }
    }

    #[test]
    fn pgl_closure_q3() {
        let f = gf(3, 1);
        let pgl = enumerate_pgl(&f, 2).unwrap();
        let set: std::collections::HashSet<Matrix> = pgl.iter().cloned().collect();
        for a in &pgl {
            for b in &pgl {
                assert!(set.contains(&a.mul(b).canonicalize_projective()));
            }
        }
    }

    #[test]
    fn apply_identity_and_locality() {
        let f = gf(3, 1);
        let id = Matrix::identity(&f, 2);
        let v = Vector::from_coeffs(&f, &[&[1], &[2]]);
        assert_eq!(id.apply(&v), v);

        let m = Matrix::from_coeffs(&f, 2, &[&[1], &[1], &[0], &[2]]);
        let w = Vector::from_coeffs(&f, &[&[2], &[1]]);
        let lhs = apply_local(&m, Side::First, &v.tensor(&w));
        assert_eq!(lhs, m.apply(&v).tensor(&w));
        let rhs = apply_local(&m, Side::Second, &v.tensor(&w));
        assert_eq!(rhs, v.tensor(&m.apply(&w)));
    }

    #[test]
    fn determinant_matches_product_rule() {
        let f = gf(5, 1);
        let a = Matrix::from_coeffs(&f, 2, &[&[1], &[2], &[3], &[4]]);
        let b = Matrix::from_coeffs(&f, 2, &[&[0], &[1], &[2], &[3]]);
        assert_eq!(a.mul(&b).det(), a.det() * b.det());
    }

    #[test]
    fn kronecker_identity() {
        let f = gf(3, 2);
        let id = Matrix::identity(&f, 2);
        assert_eq!(id.kronecker(&id), Matrix::identity(&f, 4));
    }

    #[test]
    #[should_panic(expected = "dimension mismatch")]
    fn bracket_dimension_mismatch_panics() {
        let f = gf(3, 1);
        let x = DualVector::from_coeffs(&f, &[&[1], &[2]]);
        let v = Vector::from_coeffs(&f, &[&[1], &[2], &[0], &[1]]);
        let _ = bracket(&x, &v);
    }
}
