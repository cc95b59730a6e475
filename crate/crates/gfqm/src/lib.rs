//! Exact quantum-like models over finite Galois fields.
//!
//! Two toy theories are built on the projective geometry `PG(N-1, q)` of a
//! finite vector space `GF(q)^N`:
//!
//! * [`gqm`] — a probability-based model: measurement outcomes are dual
//!   vectors, and the Born-rule numerator/denominator are pushed through the
//!   product-preserving absolute-value map `GF(q) -> {0, 1}`. Its two-spin
//!   correlations admit no local-hidden-variable mimic, yet its CHSH bound is
//!   the classical 2.
//! * [`bqm`] — an expectation-value model over `GF(p^2) = GF(p)[i]`,
//!   `p = 3 mod 4`: biorthogonal systems play the role of orthonormal bases,
//!   hermitian-analog operators are built from them, and expectation values
//!   reach the real numbers through the quadratic-residue sign map. Its CHSH
//!   bound is the super-quantum 4 (beyond the Tsirelson bound `2*sqrt(2)` of
//!   ordinary quantum mechanics), while individual outcome probabilities stay
//!   indeterminate.
//!
//! Everything is exact: field elements are canonical polynomial-basis
//! residues, probabilities are rationals, and the hidden-variable oracle in
//! [`lhv`] is a rational phase-1 simplex whose verdicts carry explicit
//! certificates (a convex decomposition when feasible, a separating
//! functional when not).
//!
//! See the crate `examples/` directory for a runnable tour of each
//! capability; the `gfqm` binary exposes the same machinery as subcommands.

pub mod bqm;
pub mod field;
pub mod gqm;
pub mod lhv;
pub mod linalg;
pub mod report;

use std::sync::OnceLock;

use num_traits::{Signed, Zero};
use thiserror::Error;

/// Exact rational scalar used for every probability and correlator.
pub type Rational = num_rational::BigRational;

/// Builds a reduced rational from machine integers.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(numer.into(), denom.into())
}

/// Canonical `num/den` rendering (always includes the denominator, so
/// golden output never depends on reducedness heuristics).
pub fn rational_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `num/den` or a bare integer.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::TableFormat(format!("invalid rational {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let numer: num_bigint::BigInt = n.trim().parse().map_err(|_| bad())?;
    let denom: num_bigint::BigInt = d.trim().parse().map_err(|_| bad())?;
    if denom.is_zero() {
        return Err(Error::TableFormat(format!("zero denominator in {s:?}")));
    }
    if denom.is_negative() {
        return Err(Error::TableFormat(format!(
            "denominator must be positive in {s:?}"
        )));
    }
    Ok(Rational::new(numer, denom))
}

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("search guard: {0}")]
    SearchGuard(String),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {order} exceeds the enumeration guard {limit} (set {GUARD_ENV} to raise it)")]
    SizeGuard { order: u128, limit: u64 },
    #[error("inverse of zero")]
    ZeroInverse,
    #[error("sign map needs a prime field with p = 3 mod 4, got GF({p}^{n})")]
    SignMapDomain { p: u64, n: usize },
    #[error("zero vector has no projective representative")]
    ZeroVector,
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("state is unphysical: it is self-orthogonal and has no conjugate dual")]
    Unphysical,
    #[error("expected a field GF(p^2) with p = 3 mod 4, got GF({p}^{n})")]
    NotQuadratic { p: u64, n: usize },
    #[error("eigenvalue {0} lies outside the prime subfield")]
    EigenvalueOutsidePrimeSubfield(String),
    #[error("indices must be distinct, got ({0}, {1})")]
    IndicesNotDistinct(usize, usize),
    #[error("setting index {index} out of range ({count} settings)")]
    UnknownSetting { index: usize, count: usize },
    #[error("table has {total} settings; the strategy enumeration is capped at {limit}")]
    TooManySettings { total: usize, limit: usize },
    #[error("hardy chain analysis needs exactly 2 settings per side, got {a}x{b}")]
    NotTwoByTwo { a: usize, b: usize },
    #[error("invalid table document: {0}")]
    TableFormat(String),
    #[error("invalid probability table: {0}")]
    BadTable(String),
    #[error("{0}")]
    Usage(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Environment variable that overrides the enumeration size guard.
pub const GUARD_ENV: &str = "GFQM_GUARD_LIMIT";

const DEFAULT_GUARD: u64 = 1 << 20;

/// Maximum number of vectors any exhaustive enumeration may touch.
///
/// Defaults to 2^20; override with the [`GUARD_ENV`] environment variable
/// (read once per process).
pub fn guard_limit() -> u64 {
    static LIMIT: OnceLock<u64> = OnceLock::new();
    *LIMIT.get_or_init(|| {
        std::env::var(GUARD_ENV)
            .ok()
            .and_then(|v| v.parse().ok())
            .unwrap_or(DEFAULT_GUARD)
    })
}

/// Checks `base^exp` against the guard and returns it as u64.
pub(crate) fn guarded_pow(base: u64, exp: u32) -> Result<u64> {
    let order = (base as u128).pow(exp);
    let limit = guard_limit();
    if order > limit as u128 {
        return Err(Error::SizeGuard { order, limit });
    }
    Ok(order as u64)
}
