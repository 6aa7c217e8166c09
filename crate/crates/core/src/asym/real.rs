//! High-precision reals for transcendental evaluation.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;

use astro_float::{BigFloat, Consts, RoundingMode};

use crate::words::QuadraticNumber;

/// Working precision in bits: far beyond the 53 of a double.
pub const PRECISION: usize = 320;

/// Two values closer than this relative gap are treated as equal by
/// [`Real::approx_cmp`]; rounding errors of the evaluations used here stay
/// many orders of magnitude below it.
pub const RELATIVE_SLACK_BITS: usize = 250;

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constant cache"));
}

fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

/// A real number carried at [`PRECISION`] bits.
#[derive(Clone, Debug)]
pub struct Real(BigFloat);

impl Real {
    pub fn zero() -> Self {
        Real::from_u128(0)
    }

    pub fn one() -> Self {
        Real::from_u128(1)
    }

    pub fn from_u128(v: u128) -> Self {
        Real(BigFloat::from_u128(v, PRECISION))
    }

    pub fn from_i128(v: i128) -> Self {
        Real(BigFloat::from_i128(v, PRECISION))
    }

    /// The exact value of a double.
    pub fn from_f64(v: f64) -> Self {
        Real(BigFloat::from_f64(v, PRECISION))
    }

    pub fn from_ratio(num: i128, den: i128) -> Self {
        Real::from_i128(num).div(&Real::from_i128(den))
    }

    /// `(p + q√d)/r`.
    pub fn from_quadratic(x: &QuadraticNumber) -> Self {
        let (p, q, d, r) = x.parts();
        let root = Real::from_u128(d as u128).sqrt();
        Real::from_i128(p)
            .add(&Real::from_i128(q).mul(&root))
            .div(&Real::from_i128(r))
    }

    pub fn add(&self, o: &Self) -> Self {
        Real(self.0.add(&o.0, PRECISION, RM))
    }

    pub fn sub(&self, o: &Self) -> Self {
        Real(self.0.sub(&o.0, PRECISION, RM))
    }

    pub fn mul(&self, o: &Self) -> Self {
        Real(self.0.mul(&o.0, PRECISION, RM))
    }

    pub fn div(&self, o: &Self) -> Self {
        Real(self.0.div(&o.0, PRECISION, RM))
    }

    pub fn neg(&self) -> Self {
        Real(self.0.neg())
    }

    pub fn abs(&self) -> Self {
        Real(self.0.abs())
    }

    pub fn sqrt(&self) -> Self {
        Real(self.0.sqrt(PRECISION, RM))
    }

    pub fn ln(&self) -> Self {
        with_consts(|cc| Real(self.0.ln(PRECISION, RM, cc)))
    }

    pub fn exp(&self) -> Self {
        with_consts(|cc| Real(self.0.exp(PRECISION, RM, cc)))
    }

    pub fn powi(&self, n: usize) -> Self {
        Real(self.0.powi(n, PRECISION, RM))
    }

    /// `self^e` for `self > 0`.
    pub fn powf(&self, e: &Self) -> Self {
        self.ln().mul(e).exp()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        !self.0.is_zero() && self.0.is_negative()
    }

    pub fn max(&self, o: &Self) -> Self {
        if self.cmp_raw(o) == Ordering::Less {
            o.clone()
        } else {
            self.clone()
        }
    }

    fn cmp_raw(&self, o: &Self) -> Ordering {
        match self.0.cmp(&o.0) {
            Some(c) if c < 0 => Ordering::Less,
            Some(0) => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }

    /// Comparison in which values within a relative `2^-RELATIVE_SLACK_BITS`
    /// of each other are equal.
    pub fn approx_cmp(&self, o: &Self) -> Ordering {
        let diff = self.sub(o);
        if diff.is_zero() {
            return Ordering::Equal;
        }
        let scale = self.abs().max(&o.abs()).max(&Real::one());
        let slack = scale.div(&Real::from_u128(2).powi(RELATIVE_SLACK_BITS));
        if diff.abs().cmp_raw(&slack) != Ordering::Greater {
            return Ordering::Equal;
        }
        if diff.is_negative() {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }

    /// Whether `self ≤ o` up to the slack.
    pub fn le(&self, o: &Self) -> bool {
        self.approx_cmp(o) != Ordering::Greater
    }

    /// Whether `self < o` by more than the slack.
    pub fn lt(&self, o: &Self) -> bool {
        self.approx_cmp(o) == Ordering::Less
    }

    pub fn to_f64(&self) -> f64 {
        self.to_string().parse().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<u128> for Real {
    fn from(v: u128) -> Self {
        Real::from_u128(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn elementary_values() {
        let two = Real::from_u128(2);
        assert!((two.sqrt().to_f64() - 2f64.sqrt()).abs() < 1e-15);
        assert!((Real::one().exp().to_f64() - std::f64::consts::E).abs() < 1e-15);
        assert_eq!(Real::one().ln().to_f64(), 0.0);
        assert_eq!(Real::zero().exp().to_f64(), 1.0);
        let third = Real::from_ratio(1, 3);
        assert_eq!(third.mul(&Real::from_u128(3)).approx_cmp(&Real::one()), Ordering::Equal);
        assert!(third.lt(&Real::from_ratio(1, 2)));
    }

    #[test]
    fn quadratic_conversion() {
        let x = QuadraticNumber::new(3, -1, 5, 2);
        assert!((Real::from_quadratic(&x).to_f64() - (3.0 - 5f64.sqrt()) / 2.0).abs() < 1e-15);
    }
}
