//! Exact arithmetic in Galois fields `GF(p^n)`.
//!
//! Elements are stored as fully reduced coefficient vectors in the
//! polynomial basis `1, x, .., x^(n-1)` modulo a fixed monic irreducible
//! polynomial, so equality is structural and every value has exactly one
//! representation. The modulus and the multiplicative generator are chosen
//! deterministically (smallest in the base-p digit order), which keeps every
//! enumeration in the crate reproducible across runs.
//!
//! Besides the ring operations the module exposes the three maps the models
//! are built on: the Frobenius automorphism `a -> a^p` (the stand-in for
//! complex conjugation on `GF(p^2)`), the absolute-value map `GF(q) -> {0,1}`,
//! and the quadratic-residue sign map `GF(p) -> {-1,0,+1}`. All three are
//! product preserving, which is what makes multi-particle probabilities and
//! expectation values factorize on product states.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::{guarded_pow, Error, Result};

#[derive(Debug)]
struct FieldCore {
    p: u64,
    n: usize,
    /// Monic modulus, coefficient list of length n+1, constant term first.
    modulus: Vec<u64>,
    /// Coefficients of the smallest multiplicative generator.
    generator: Vec<u64>,
    order: u64,
}

/// A Galois field `GF(p^n)`, cheaply clonable; equality is structural.
#[derive(Clone)]
pub struct Field(Arc<FieldCore>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.n == other.0.n && self.0.modulus == other.0.modulus)
    }
}
impl Eq for Field {}

impl Hash for Field {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.p.hash(state);
        self.0.n.hash(state);
        self.0.modulus.hash(state);
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.0.p, self.0.n)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.n == 1 {
            write!(f, "GF({})", self.0.p)
        } else {
            write!(f, "GF({})", self.0.order)
        }
    }
}

impl Field {
    /// Constructs `GF(p^n)` with the deterministic modulus and generator.
    ///
    /// For `n = 2` and `p = 3 mod 4` the modulus is forced to `x^2 + 1`, so
    /// the extension is the adjoint of a square root of -1. Otherwise the
    /// lexicographically smallest monic irreducible of degree `n` is used.
    pub fn new(p: u64, n: usize) -> Result<Field> {
        if n == 0 {
            return Err(Error::ZeroDegree);
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let order = guarded_pow(p, n as u32)?;
        let modulus = if n == 2 && p % 4 == 3 {
            let m = vec![1, 0, 1];
            // x^2+1 is irreducible over GF(p) exactly when p = 3 mod 4
            assert!(
                poly_is_irreducible(&m, p),
                "x^2+1 must be irreducible for p = 3 mod 4"
            );
            m
        } else {
            smallest_irreducible(p, n)
        };
        let mut core = FieldCore {
            p,
            n,
            modulus,
            generator: vec![0; n],
            order,
        };
        core.generator = smallest_generator(&core);
        Ok(Field(Arc::new(core)))
    }

    /// Constructs `GF(q)` from a prime-power order.
    pub fn prime_power(q: u64) -> Result<Field> {
        let (p, n) = split_prime_power(q).ok_or(Error::NotPrimePower(q))?;
        Field::new(p, n)
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn n(&self) -> usize {
        self.0.n
    }

    /// Number of elements `q = p^n`.
    pub fn order(&self) -> u64 {
        self.0.order
    }

    /// Monic modulus polynomial, constant coefficient first.
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    pub fn zero(&self) -> Fq {
        Fq {
            coeffs: vec![0; self.0.n],
            field: self.clone(),
        }
    }

    pub fn one(&self) -> Fq {
        self.from_u64(1)
    }

    /// Embeds an integer residue (constant polynomial).
    pub fn from_u64(&self, c: u64) -> Fq {
        let mut coeffs = vec![0; self.0.n];
        coeffs[0] = c % self.0.p;
        Fq {
            coeffs,
            field: self.clone(),
        }
    }

    /// Builds an element from signed basis coefficients, reduced mod p.
    pub fn element(&self, coeffs: &[i64]) -> Fq {
        assert!(
            coeffs.len() <= self.0.n,
            "too many coefficients for GF({}^{})",
            self.0.p,
            self.0.n
        );
        let p = self.0.p as i64;
        let mut out = vec![0; self.0.n];
        for (k, &c) in coeffs.iter().enumerate() {
            out[k] = c.rem_euclid(p) as u64;
        }
        Fq {
            coeffs: out,
            field: self.clone(),
        }
    }

    /// The element whose base-p digit expansion is `index` (inverse of
    /// [`Fq::index_value`]).
    pub fn from_index(&self, index: u64) -> Fq {
        debug_assert!(index < self.0.order);
        let mut coeffs = vec![0; self.0.n];
        let mut rest = index;
        for c in coeffs.iter_mut() {
            *c = rest % self.0.p;
            rest /= self.0.p;
        }
        Fq {
            coeffs,
            field: self.clone(),
        }
    }

    /// The root of the modulus adjoined by the extension (the class of `x`).
    ///
    /// For the `x^2 + 1` modulus this is the square root of -1.
    pub fn adjoined_root(&self) -> Fq {
        assert!(self.0.n >= 2, "prime fields adjoin no root");
        self.element(&[0, 1])
    }

    /// The smallest multiplicative generator of `GF(q) \ {0}`.
    pub fn generator(&self) -> Fq {
        Fq {
            coeffs: self.0.generator.clone(),
            field: self.clone(),
        }
    }

    /// All `q` elements in deterministic (base-p digit) order.
    pub fn elements(&self) -> impl Iterator<Item = Fq> + '_ {
        (0..self.0.order).map(move |k| self.from_index(k))
    }

    /// True when this field is `GF(p^2)` with `p = 3 mod 4` and modulus
    /// `x^2 + 1`, the setting of the biorthogonal model.
    pub fn is_quadratic_over_prime(&self) -> bool {
        self.0.n == 2 && self.0.p % 4 == 3 && self.0.modulus == [1, 0, 1]
    }
}

/// An element of a [`Field`], stored as a fully reduced coefficient vector.
#[derive(Clone)]
pub struct Fq {
    coeffs: Vec<u64>,
    field: Field,
}

impl PartialEq for Fq {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.coeffs == other.coeffs
    }
}
impl Eq for Fq {}

impl Hash for Fq {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Fq {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    /// Base-p digit value of the coefficient vector; a total order on the
    /// field used by every deterministic enumeration in the crate.
    pub fn index_value(&self) -> u64 {
        let p = self.field.0.p;
        self.coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
    }

    /// True when all extension coefficients vanish, i.e. the element lies in
    /// the prime subfield `GF(p)`.
    pub fn in_prime_subfield(&self) -> bool {
        self.coeffs[1..].iter().all(|&c| c == 0)
    }

    /// The constant coefficient as a residue in `[0, p)`.
    pub fn constant_coeff(&self) -> u64 {
        self.coeffs[0]
    }

    pub fn pow(&self, mut e: u64) -> Fq {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; errors on zero.
    pub fn inv(&self) -> Result<Fq> {
        if self.is_zero() {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow(self.field.0.order - 2))
    }

    /// The Frobenius automorphism `a -> a^p`.
    ///
    /// Identity on prime fields; on `GF(p^2) = GF(p)[i]` it sends
    /// `a + ib -> a - ib`, the finite-field analogue of complex conjugation.
    pub fn frobenius(&self) -> Fq {
        if self.field.0.n == 1 {
            return self.clone();
        }
        self.pow(self.field.0.p)
    }

    /// Product-preserving absolute value: 0 for zero, 1 otherwise.
    pub fn abs_map(&self) -> u64 {
        u64::from(!self.is_zero())
    }

    /// Product-preserving sign: 0 for zero, +1 for quadratic residues,
    /// -1 for non-residues. Defined on prime fields with `p = 3 mod 4`,
    /// where it is the unique such map besides the absolute value.
    ///
    /// Evaluated by Euler's criterion `a^((p-1)/2)`, which agrees with the
    /// parity of the generator exponent.
    pub fn sign_map(&self) -> Result<i64> {
        let p = self.field.0.p;
        if self.field.0.n != 1 || p % 4 != 3 {
            return Err(Error::SignMapDomain {
                p,
                n: self.field.0.n,
            });
        }
        let a = self.coeffs[0];
        if a == 0 {
            return Ok(0);
        }
        let e = pow_mod(a, (p - 1) / 2, p);
        Ok(if e == 1 { 1 } else { -1 })
    }
}

fn assert_same_field(a: &Fq, b: &Fq) {
    assert!(
        a.field == b.field,
        "elements of different fields: {:?} vs {:?}",
        a.field,
        b.field
    );
}

impl<'b> Add<&'b Fq> for &Fq {
    type Output = Fq;
    fn add(self, rhs: &'b Fq) -> Fq {
        assert_same_field(self, rhs);
        let p = self.field.0.p;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(&a, &b)| (a + b) % p)
            .collect();
        Fq {
            coeffs,
            field: self.field.clone(),
        }
    }
}

impl<'b> Sub<&'b Fq> for &Fq {
    type Output = Fq;
    fn sub(self, rhs: &'b Fq) -> Fq {
        assert_same_field(self, rhs);
        let p = self.field.0.p;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(&a, &b)| (a + p - b) % p)
            .collect();
        Fq {
            coeffs,
            field: self.field.clone(),
        }
    }
}

impl<'b> Mul<&'b Fq> for &Fq {
    type Output = Fq;
    fn mul(self, rhs: &'b Fq) -> Fq {
        assert_same_field(self, rhs);
        let core = &self.field.0;
        let n = core.n;
        let p = core.p;
        // schoolbook product, then reduction by the monic modulus
        let mut tmp = vec![0u64; 2 * n - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                tmp[i + j] = (tmp[i + j] + a * b) % p;
            }
        }
        for d in (n..2 * n - 1).rev() {
            let c = tmp[d];
            if c == 0 {
                continue;
            }
            tmp[d] = 0;
            for j in 0..n {
                let sub = (c * core.modulus[j]) % p;
                tmp[d - n + j] = (tmp[d - n + j] + p - sub) % p;
            }
        }
        tmp.truncate(n);
        Fq {
            coeffs: tmp,
            field: self.field.clone(),
        }
    }
}

impl Neg for &Fq {
    type Output = Fq;
    fn neg(self) -> Fq {
        let p = self.field.0.p;
        let coeffs = self.coeffs.iter().map(|&a| (p - a) % p).collect();
        Fq {
            coeffs,
            field: self.field.clone(),
        }
    }
}

macro_rules! owned_binop {
    ($trait:ident, $fn:ident) => {
        impl $trait for Fq {
            type Output = Fq;
            fn $fn(self, rhs: Fq) -> Fq {
                (&self).$fn(&rhs)
            }
        }
        impl $trait<&Fq> for Fq {
            type Output = Fq;
            fn $fn(self, rhs: &Fq) -> Fq {
                (&self).$fn(rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for Fq {
    type Output = Fq;
    fn neg(self) -> Fq {
        -&self
    }
}

impl fmt::Display for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let sym = if self.field.is_quadratic_over_prime() {
            "i"
        } else {
            "t"
        };
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => {
                    if c == 1 {
                        write!(f, "{sym}")?;
                    } else {
                        write!(f, "{c}{sym}")?;
                    }
                }
                _ => {
                    if c == 1 {
                        write!(f, "{sym}^{k}")?;
                    } else {
                        write!(f, "{c}{sym}^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits q into (p, n) with p prime, or None if q is not a prime power.
fn split_prime_power(q: u64) -> Option<(u64, usize)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q {
        if q.is_multiple_of(p) {
            let mut n = 0;
            let mut rest = q;
            while rest.is_multiple_of(p) {
                rest /= p;
                n += 1;
            }
            return (rest == 1).then_some((p, n));
        }
        p += 1;
    }
    Some((q, 1))
}

fn pow_mod(mut base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    acc
}

fn prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            out.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

// ---------------------------------------------------------------------------
// dense polynomial helpers over Z_p (constant coefficient first, no implicit
// leading terms; used only during field construction)
// ---------------------------------------------------------------------------

fn poly_trim(v: &mut Vec<u64>) {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
}

/// Remainder of `a` modulo the monic polynomial `m`, coefficients mod p.
fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap() % p;
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for j in 0..=dm {
                let sub = lead * m[j] % p;
                r[shift + j] = (r[shift + j] + p - sub) % p;
            }
        }
        r.pop();
        poly_trim(&mut r);
        if r.len() == 1 && r[0] == 0 {
            break;
        }
    }
    r
}

fn poly_is_zero(v: &[u64]) -> bool {
    v.iter().all(|&c| c == 0)
}

/// Trial division by every lower-degree monic polynomial. Exhaustive but
/// ample under the enumeration guard.
fn poly_is_irreducible(m: &[u64], p: u64) -> bool {
    let deg = m.len() - 1;
    if deg == 1 {
        return true;
    }
    for d in 1..=deg / 2 {
        // all monic divisor candidates of degree d
        let count = p.pow(d as u32);
        for k in 0..count {
            let mut cand = vec![0u64; d + 1];
            let mut rest = k;
            for c in cand.iter_mut().take(d) {
                *c = rest % p;
                rest /= p;
            }
            cand[d] = 1;
            if poly_is_zero(&poly_rem(m, &cand, p)) {
                return false;
            }
        }
    }
    true
}

/// The monic irreducible of degree n over Z_p whose lower-coefficient vector
/// is smallest in base-p digit order.
fn smallest_irreducible(p: u64, n: usize) -> Vec<u64> {
    if n == 1 {
        // the polynomial x
        return vec![0, 1];
    }
    let count = p.pow(n as u32);
    for k in 0..count {
        let mut m = vec![0u64; n + 1];
        let mut rest = k;
        for c in m.iter_mut().take(n) {
            *c = rest % p;
            rest /= p;
        }
        m[n] = 1;
        if poly_is_irreducible(&m, p) {
            return m;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists over Z_p")
}

/// The element with smallest index value whose multiplicative order is
/// exactly q - 1.
fn smallest_generator(core: &FieldCore) -> Vec<u64> {
    let field = Field(Arc::new(FieldCore {
        p: core.p,
        n: core.n,
        modulus: core.modulus.clone(),
        generator: vec![0; core.n],
        order: core.order,
    }));
    let group = core.order - 1;
    let factors = prime_factors(group);
    'candidates: for k in 1..core.order {
        let g = field.from_index(k);
        for &f in &factors {
            if g.pow(group / f).is_one() {
                continue 'candidates;
            }
        }
        debug_assert!(g.pow(group).is_one());
        return g.coeffs;
    }
    unreachable!("every finite field has a multiplicative generator")
}
