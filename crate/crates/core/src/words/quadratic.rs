//! Exact arithmetic in Q(√d) for the slopes of mechanical words.
//!
//! Every comparison reduces to the sign of `p + q·√d`, which is decided by
//! comparing `p²` with `q²·d`. No floating point is involved except to seed
//! the integer search inside [`QuadraticNumber::floor`].

use std::cmp::Ordering;
use std::fmt;

use num_integer::{Integer, Roots};
use num_rational::Rational64;

use crate::error::{Error, Result};

/// Sign of `p + q·√d` for `d > 0`.
fn sign_of(p: i128, q: i128, d: u64) -> Ordering {
    let sp = p.cmp(&0);
    let sq = q.cmp(&0);
    if sq == Ordering::Equal {
        return sp;
    }
    if sp == Ordering::Equal || sp == sq {
        return sq;
    }
    let lhs = p * p;
    let rhs = q * q * d as i128;
    match lhs.cmp(&rhs) {
        Ordering::Greater => sp,
        Ordering::Less => sq,
        Ordering::Equal => Ordering::Equal,
    }
}

pub(crate) fn is_perfect_square(d: u64) -> bool {
    let s = d.sqrt();
    s * s == d
}

/// The exact number `(p + q·√d) / r` with `r > 0`.
///
/// `q == 0` encodes a rational; such values combine with any radicand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticNumber {
    p: i128,
    q: i128,
    d: u64,
    r: i128,
}

impl QuadraticNumber {
    pub fn new(p: i128, q: i128, d: u64, r: i128) -> Self {
        assert!(r != 0, "zero denominator");
        assert!(d > 0 || q == 0, "radicand must be positive");
        let (p, q, r) = if r < 0 { (-p, -q, -r) } else { (p, q, r) };
        let g = p.gcd(&q).gcd(&r);
        let g = if g == 0 { 1 } else { g };
        let d = if q == 0 { 0 } else { d };
        QuadraticNumber {
            p: p / g,
            q: q / g,
            d,
            r: r / g,
        }
    }

    pub fn from_integer(n: i128) -> Self {
        QuadraticNumber::new(n, 0, 0, 1)
    }

    pub fn from_ratio(num: i128, den: i128) -> Self {
        QuadraticNumber::new(num, 0, 0, den)
    }

    pub fn parts(&self) -> (i128, i128, u64, i128) {
        (self.p, self.q, self.d, self.r)
    }

    pub fn is_rational(&self) -> bool {
        self.q == 0
    }

    fn radicand_with(&self, other: &Self) -> u64 {
        match (self.q, other.q) {
            (0, _) => other.d,
            (_, 0) => self.d,
            _ => {
                assert_eq!(self.d, other.d, "mixing different radicands");
                self.d
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let d = self.radicand_with(other);
        QuadraticNumber::new(
            self.p * other.r + other.p * self.r,
            self.q * other.r + other.q * self.r,
            d,
            self.r * other.r,
        )
    }

    pub fn neg(&self) -> Self {
        QuadraticNumber::new(-self.p, -self.q, self.d, self.r)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let d = self.radicand_with(other) as i128;
        QuadraticNumber::new(
            self.p * other.p + self.q * other.q * d,
            self.p * other.q + self.q * other.p,
            d as u64,
            self.r * other.r,
        )
    }

    pub fn mul_int(&self, n: i128) -> Self {
        QuadraticNumber::new(self.p * n, self.q * n, self.d, self.r)
    }

    /// `1 / self`, rationalizing the denominator. Panics on zero.
    pub fn recip(&self) -> Self {
        let norm = self.p * self.p - self.q * self.q * self.d as i128;
        assert!(norm != 0, "reciprocal of zero");
        QuadraticNumber::new(self.r * self.p, -self.r * self.q, self.d, norm)
    }

    pub fn signum(&self) -> Ordering {
        sign_of(self.p, self.q, self.d)
    }

    pub fn abs(&self) -> Self {
        if self.signum() == Ordering::Less {
            self.neg()
        } else {
            *self
        }
    }

    /// Largest integer not exceeding the value.
    pub fn floor(&self) -> i128 {
        let mut n = self.to_f64().floor() as i128;
        // n <= value  <=>  sign(p - n·r + q√d) >= 0
        while sign_of(self.p - n * self.r, self.q, self.d) == Ordering::Less {
            n -= 1;
        }
        while sign_of(self.p - (n + 1) * self.r, self.q, self.d) != Ordering::Less {
            n += 1;
        }
        n
    }

    pub fn to_f64(&self) -> f64 {
        (self.p as f64 + self.q as f64 * (self.d as f64).sqrt()) / self.r as f64
    }
}

impl PartialOrd for QuadraticNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadraticNumber {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sub(other).signum()
    }
}

impl fmt::Display for QuadraticNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q == 0 {
            if self.r == 1 {
                write!(f, "{}", self.p)
            } else {
                write!(f, "{}/{}", self.p, self.r)
            }
        } else {
            write!(f, "({}{:+}*sqrt({}))/{}", self.p, self.q, self.d, self.r)
        }
    }
}

impl From<Rational64> for QuadraticNumber {
    fn from(r: Rational64) -> Self {
        QuadraticNumber::from_ratio(*r.numer() as i128, *r.denom() as i128)
    }
}

/// An irrational number `(p + q·√d) / r`: `d` is not a perfect square and `q ≠ 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticIrrational(QuadraticNumber);

impl QuadraticIrrational {
    pub fn new(p: i64, q: i64, d: u64, r: i64) -> Result<Self> {
        if r == 0 {
            return Err(Error::invalid("quadratic irrational with zero denominator"));
        }
        if q == 0 {
            return Err(Error::invalid(
                "q = 0 gives a rational value; use a rational slope instead",
            ));
        }
        if d == 0 || is_perfect_square(d) {
            return Err(Error::invalid(format!(
                "radicand {d} is a perfect square; the value would be rational"
            )));
        }
        Ok(QuadraticIrrational(QuadraticNumber::new(
            p as i128, q as i128, d, r as i128,
        )))
    }

    /// (3 − √5)/2, the slope of the Fibonacci word.
    pub fn fibonacci_slope() -> Self {
        QuadraticIrrational::new(3, -1, 5, 2).expect("valid constant")
    }

    pub fn number(&self) -> QuadraticNumber {
        self.0
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }

    pub fn cmp_rational(&self, x: Rational64) -> Ordering {
        self.0.cmp(&QuadraticNumber::from(x))
    }
}

impl fmt::Display for QuadraticIrrational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Slope of a word: a rational or a quadratic irrational.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Slope {
    Rational(Rational64),
    Quadratic(QuadraticIrrational),
}

impl Slope {
    pub fn number(&self) -> QuadraticNumber {
        match self {
            Slope::Rational(r) => QuadraticNumber::from(*r),
            Slope::Quadratic(q) => q.number(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.number().to_f64()
    }

    pub fn cmp_rational(&self, x: Rational64) -> Ordering {
        self.number().cmp(&QuadraticNumber::from(x))
    }

    pub fn is_irrational(&self) -> bool {
        matches!(self, Slope::Quadratic(_))
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slope::Rational(r) => write!(f, "{r}"),
            Slope::Quadratic(q) => q.fmt(f),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floor_of_golden_multiples() {
        let alpha = QuadraticIrrational::fibonacci_slope().number();
        // alpha ≈ 0.381966
        let expected = [0, 0, 0, 1, 1, 1, 2, 2];
        for (i, e) in expected.iter().enumerate() {
            assert_eq!(alpha.mul_int(i as i128).floor(), *e, "i = {i}");
        }
    }

    #[test]
    fn floor_near_integers_is_exact() {
        // 408·√2 = 576.99913…, 985·√2 = 1393.00036…
        assert_eq!(QuadraticNumber::new(0, 408, 2, 1).floor(), 576);
        assert_eq!(QuadraticNumber::new(0, 985, 2, 1).floor(), 1393);
        let y = QuadraticNumber::new(-1, 1, 2, 1).mul_int(1000);
        assert_eq!(y.floor(), 414);
    }

    #[test]
    fn reciprocal_and_ordering() {
        let alpha = QuadraticIrrational::fibonacci_slope().number();
        let beta = alpha.add(&QuadraticNumber::from_integer(2)).recip();
        assert!((beta.to_f64() - 0.419_821_8).abs() < 1e-6);
        assert!(beta < QuadraticNumber::from_ratio(1, 2));
        assert!(beta > QuadraticNumber::from_ratio(2, 5));
        let one = beta.mul(&alpha.add(&QuadraticNumber::from_integer(2)));
        assert_eq!(one, QuadraticNumber::from_integer(1));
    }

    #[test]
    fn rejects_rational_inputs() {
        assert!(QuadraticIrrational::new(1, 1, 4, 2).is_err());
        assert!(QuadraticIrrational::new(1, 0, 5, 2).is_err());
        assert!(QuadraticIrrational::new(1, 1, 5, 0).is_err());
    }
}
