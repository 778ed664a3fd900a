//! Field abstraction for the min-norm solver: arbitrary-precision rationals
//! and a checked machine-word rational used as a fast path.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::rational::Rational;

/// Exact field arithmetic where every operation may report overflow.
pub(crate) trait Scalar: Clone + Ord {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_positive(&self) -> bool;
    fn add(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
    /// `None` on overflow; division by zero is a caller bug.
    fn div(&self, o: &Self) -> Option<Self>;
    fn from_i64(v: i64) -> Self;
    /// Nearest double, used only by floating-point filters.
    fn to_f64(&self) -> f64;
}

impl Scalar for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_positive(&self) -> bool {
        Signed::is_positive(self)
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn div(&self, o: &Self) -> Option<Self> {
        Some(self / o)
    }
    fn from_i64(v: i64) -> Self {
        Rational::from_integer(v.into())
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

/// Bound on numerator and denominator magnitudes, so that every product of
/// two components fits in `i128`.
const LIMIT: i128 = 1 << 62;

/// Reduced rational `n/d` with `d > 0` and `|n|, d < 2^62`, so sums and
/// products of two values are exact in `i128`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct SmallQ {
    n: i64,
    d: i64,
}

impl SmallQ {
    fn make(n: i128, d: i128) -> Option<Self> {
        if d == 1 {
            return (n.abs() < LIMIT).then_some(SmallQ { n: n as i64, d: 1 });
        }
        let (n, d) = if d < 0 { (-n, -d) } else { (n, d) };
        if let (Ok(n), Ok(d)) = (i64::try_from(n), i64::try_from(d)) {
            let g = (n.unsigned_abs()).gcd(&(d as u64)) as i64;
            let (n, d) = if g > 1 { (n / g, d / g) } else { (n, d) };
            return ((n.unsigned_abs() as i128) < LIMIT && (d as i128) < LIMIT).then_some(SmallQ { n, d });
        }
        let g = n.gcd(&d);
        let (n, d) = (n / g, d / g);
        (n.abs() < LIMIT && d < LIMIT).then_some(SmallQ { n: n as i64, d: d as i64 })
    }

    /// Converts when both parts are within the bound.
    pub(crate) fn from_big(q: &Rational) -> Option<Self> {
        let n = q.numer().to_i64()?;
        let d = q.denom().to_i64()?;
        ((n.unsigned_abs() as i128) < LIMIT && (d as i128) < LIMIT).then_some(SmallQ { n, d })
    }

    /// An integer within the bound.
    pub(crate) fn from_int(v: i64) -> Option<Self> {
        ((v.unsigned_abs() as i128) < LIMIT).then_some(SmallQ { n: v, d: 1 })
    }

    pub(crate) fn to_big(self) -> Rational {
        Rational::new_raw(BigInt::from(self.n), BigInt::from(self.d))
    }
}

impl Ord for SmallQ {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        if self.d == o.d {
            return self.n.cmp(&o.n);
        }
        (self.n as i128 * o.d as i128).cmp(&(o.n as i128 * self.d as i128))
    }
}

impl PartialOrd for SmallQ {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}

impl Scalar for SmallQ {
    fn zero() -> Self {
        SmallQ { n: 0, d: 1 }
    }
    fn one() -> Self {
        SmallQ { n: 1, d: 1 }
    }
    fn is_zero(&self) -> bool {
        self.n == 0
    }
    fn is_positive(&self) -> bool {
        self.n > 0
    }
    fn add(&self, o: &Self) -> Option<Self> {
        let (a, b, c, d) = (self.n as i128, self.d as i128, o.n as i128, o.d as i128);
        if b == d {
            return SmallQ::make(a + c, b);
        }
        SmallQ::make(a * d + c * b, b * d)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.add(&SmallQ { n: -o.n, d: o.d })
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        SmallQ::make(self.n as i128 * o.n as i128, self.d as i128 * o.d as i128)
    }
    fn div(&self, o: &Self) -> Option<Self> {
        SmallQ::make(self.n as i128 * o.d as i128, self.d as i128 * o.n as i128)
    }
    fn from_i64(v: i64) -> Self {
        SmallQ { n: v, d: 1 }
    }
    fn to_f64(&self) -> f64 {
        self.n as f64 / self.d as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    #[test]
    fn small_arithmetic_matches_big() {
        let a = SmallQ::from_big(&frac(3, 4)).unwrap();
        let b = SmallQ::from_big(&frac(-5, 6)).unwrap();
        assert_eq!(a.add(&b).unwrap().to_big(), frac(-1, 12));
        assert_eq!(a.mul(&b).unwrap().to_big(), frac(-5, 8));
        assert_eq!(a.div(&b).unwrap().to_big(), frac(-9, 10));
        assert!(b < a);
        let big = SmallQ { n: (LIMIT - 1) as i64, d: 1 };
        assert!(big.mul(&big).is_none());
    }
}
