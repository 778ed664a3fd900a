//! Exact rational scalars and dense vectors.
//!
//! Every quantity in the crate is a [`Rational`]; nothing is ever rounded.
//! Text forms are `"p/q"`, bare integers, or decimal literals such as
//! `0.05` (converted exactly to `1/20`).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer, Visitor};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Arbitrary-precision rational number, always in lowest terms.
pub type Rational = num_rational::BigRational;

/// Dense vector of rationals.
pub type RVector = Vec<Rational>;

/// Dense row-major matrix of rationals.
pub type RMatrix = Vec<RVector>;

/// Builds the rational `n/1`.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Builds the rational `p/q`. Panics when `q == 0`.
pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Builds a vector from integers.
pub fn ivec(v: &[i64]) -> RVector {
    v.iter().map(|&x| int(x)).collect()
}

/// The zero vector of length `d`.
pub fn zeros(d: usize) -> RVector {
    vec![Rational::zero(); d]
}

/// The `i`-th standard basis vector of length `d`.
pub fn unit(d: usize, i: usize) -> RVector {
    let mut v = zeros(d);
    v[i] = Rational::one();
    v
}

/// Inner product. Panics on length mismatch.
pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    assert_eq!(a.len(), b.len(), "dot: length mismatch");
    let mut s = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            s += x * y;
        }
    }
    s
}

/// Squared Euclidean norm.
pub fn norm_sq(a: &[Rational]) -> Rational {
    dot(a, a)
}

/// `a + b`.
pub fn add(a: &[Rational], b: &[Rational]) -> RVector {
    assert_eq!(a.len(), b.len(), "add: length mismatch");
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// `a - b`.
pub fn sub(a: &[Rational], b: &[Rational]) -> RVector {
    assert_eq!(a.len(), b.len(), "sub: length mismatch");
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// `c * a`.
pub fn scale(c: &Rational, a: &[Rational]) -> RVector {
    a.iter().map(|x| c * x).collect()
}

/// `-a`.
pub fn neg(a: &[Rational]) -> RVector {
    a.iter().map(|x| -x).collect()
}

/// `a + c * b`.
pub fn axpy(a: &[Rational], c: &Rational, b: &[Rational]) -> RVector {
    assert_eq!(a.len(), b.len(), "axpy: length mismatch");
    a.iter().zip(b).map(|(x, y)| x + c * y).collect()
}

/// True when every entry is zero.
pub fn is_zero_vec(a: &[Rational]) -> bool {
    a.iter().all(Zero::is_zero)
}

/// `2^k` for any integer `k`.
pub fn pow2(k: i64) -> Rational {
    let p = BigInt::one() << (k.unsigned_abs() as usize);
    if k >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(BigInt::one(), p)
    }
}

/// Smallest `n >= 0` with `2^n >= q` for `q > 0`.
fn ceil_log2_ge1(q: &Rational) -> u64 {
    let mut n = 0u64;
    let mut p = Rational::one();
    while &p < q {
        p *= int(2);
        n += 1;
    }
    n
}

/// `ceil(|log2 q|)` for `q > 0`, computed exactly.
pub fn ceil_abs_log2(q: &Rational) -> u64 {
    assert!(q.is_positive(), "ceil_abs_log2 needs a positive argument");
    if q >= &Rational::one() {
        ceil_log2_ge1(q)
    } else {
        ceil_log2_ge1(&q.recip())
    }
}

/// Ceiling of the integer square root.
fn ceil_isqrt(n: &BigInt) -> BigInt {
    let s = n.sqrt();
    if &(&s * &s) == n {
        s
    } else {
        s + 1
    }
}

/// Exact square root when `q` is the square of a rational.
pub fn exact_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

/// Rational upper bound on `sqrt(q)`.
///
/// Returns the exact root when one exists, otherwise the smallest multiple
/// of `2^-32` whose square is at least `q` (so the excess is below `2^-32`).
pub fn sqrt_upper(q: &Rational) -> Rational {
    assert!(!q.is_negative(), "sqrt_upper needs a nonnegative argument");
    if let Some(r) = exact_sqrt(q) {
        return r;
    }
    let shift = BigInt::one() << 64usize;
    let scaled = q.numer() * &shift;
    let (quot, rem) = scaled.div_rem(q.denom());
    let target = if rem.is_zero() { quot } else { quot + 1 };
    Rational::new(ceil_isqrt(&target), BigInt::one() << 32usize)
}

/// Parses `"p/q"`, an integer, or a decimal literal (with optional exponent).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if t.is_empty() {
        return Err(bad());
    }
    if let Some((p, q)) = t.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
        let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
        if q.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Rational::new(p, q));
    }
    let (mantissa, exp) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i64>().map_err(|_| bad())?),
        None => (t, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (ip, fp) = digits.split_once('.').unwrap_or((digits, ""));
    if ip.is_empty() && fp.is_empty() {
        return Err(bad());
    }
    if !ip.chars().chain(fp.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all = format!("{ip}{fp}");
    let n = BigInt::from_str(if all.is_empty() { "0" } else { &all }).map_err(|_| bad())?;
    let mut r = Rational::from_integer(n);
    let ten_pow = |k: u64| Rational::from_integer(num_traits::pow(BigInt::from(10), k as usize));
    let e = exp - fp.len() as i64;
    if e >= 0 {
        r *= ten_pow(e as u64);
    } else {
        r /= ten_pow(e.unsigned_abs());
    }
    Ok(if neg { -r } else { r })
}

/// Canonical text form: `"p"` or `"p/q"`.
pub fn fmt_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Formats a vector as `[a, b, ...]` using canonical entries.
pub fn fmt_vec(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(fmt_rational).collect();
    format!("[{}]", parts.join(", "))
}

/// Parses a comma-separated list of rationals, e.g. `"0.05,1/2"`.
pub fn parse_vec(s: &str) -> Result<RVector> {
    let t = s.trim().trim_start_matches('[').trim_end_matches(']');
    if t.trim().is_empty() {
        return Ok(Vec::new());
    }
    t.split(',').map(parse_rational).collect()
}

/// Serde wrapper that reads rationals from JSON strings or numbers and
/// writes canonical strings.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Q(pub Rational);

impl Serialize for Q {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rational(&self.0))
    }
}

struct QVisitor;

impl Visitor<'_> for QVisitor {
    type Value = Q;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a rational as \"p/q\", an integer, or a decimal")
    }

    fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Q, E> {
        parse_rational(v).map(Q).map_err(E::custom)
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Q, E> {
        Ok(Q(int(v)))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Q, E> {
        Ok(Q(Rational::from_integer(BigInt::from(v))))
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<Q, E> {
        if !v.is_finite() {
            return Err(E::custom("non-finite number"));
        }
        parse_rational(&format!("{v:?}")).map(Q).map_err(E::custom)
    }
}

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Q, D::Error> {
        d.deserialize_any(QVisitor)
    }
}

/// Wraps a vector for serialization.
pub fn to_q(v: &[Rational]) -> Vec<Q> {
    v.iter().cloned().map(Q).collect()
}

/// Unwraps a serialized vector.
pub fn from_q(v: Vec<Q>) -> RVector {
    v.into_iter().map(|q| q.0).collect()
}
