//! Exact arithmetic in Q(sqrt(t)): values a + b sqrt(t) with rational
//! a, b and a fixed nonnegative integer radicand t.
//!
//! The random-subset success probabilities mix rational weights with a
//! single square root (keep-probabilities like 1 - sqrt(rk)/(2rk)), so
//! their polynomial evaluation stays exact in this field. Comparisons
//! against rationals are decided by sign analysis and squaring.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::interval::{rational_to_f64, sqrt_interval};

/// a + b sqrt(t), exact.
#[derive(Clone, Debug, PartialEq)]
pub struct Quad {
    pub a: BigRational,
    pub b: BigRational,
    pub t: u64,
}

impl Quad {
    pub fn rational(a: BigRational, t: u64) -> Quad {
        Quad {
            a,
            b: BigRational::zero(),
            t,
        }
    }

    pub fn new(a: BigRational, b: BigRational, t: u64) -> Quad {
        Quad { a, b, t }
    }

    pub fn zero(t: u64) -> Quad {
        Quad::rational(BigRational::zero(), t)
    }

    pub fn one(t: u64) -> Quad {
        Quad::rational(BigRational::one(), t)
    }

    pub fn add(&self, other: &Quad) -> Quad {
        debug_assert_eq!(self.t, other.t);
        Quad {
            a: &self.a + &other.a,
            b: &self.b + &other.b,
            t: self.t,
        }
    }

    pub fn mul(&self, other: &Quad) -> Quad {
        debug_assert_eq!(self.t, other.t);
        let t = BigRational::from_integer(BigInt::from(self.t));
        Quad {
            a: &self.a * &other.a + &self.b * &other.b * &t,
            b: &self.a * &other.b + &self.b * &other.a,
            t: self.t,
        }
    }

    pub fn scale(&self, c: &BigRational) -> Quad {
        Quad {
            a: &self.a * c,
            b: &self.b * c,
            t: self.t,
        }
    }

    pub fn pow(&self, mut e: u32) -> Quad {
        let mut base = self.clone();
        let mut acc = Quad::one(self.t);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Sign of a + b sqrt(t): squaring-based, exact.
    pub fn sign(&self) -> std::cmp::Ordering {
        use std::cmp::Ordering::*;
        let t = BigRational::from_integer(BigInt::from(self.t));
        if self.b.is_zero() || self.t == 0 {
            return self.a.cmp(&BigRational::zero());
        }
        match (self.a.is_negative() || self.a.is_zero(), self.b.is_negative()) {
            (false, false) => {
                if self.a.is_zero() && self.b.is_zero() {
                    Equal
                } else {
                    Greater
                }
            }
            (true, true) => {
                if self.a.is_zero() && self.b.is_zero() {
                    Equal
                } else {
                    Less
                }
            }
            (false, true) => {
                // a > 0, b < 0: sign of a^2 - b^2 t
                (&self.a * &self.a).cmp(&(&self.b * &self.b * &t))
            }
            (true, false) => {
                // a <= 0, b > 0: sign of b^2 t - a^2
                (&self.b * &self.b * &t).cmp(&(&self.a * &self.a))
            }
        }
    }

    /// Exact comparison with a rational.
    pub fn cmp_rational(&self, q: &BigRational) -> std::cmp::Ordering {
        Quad {
            a: &self.a - q,
            b: self.b.clone(),
            t: self.t,
        }
        .sign()
    }

    /// Exact rational value when b = 0.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.b.is_zero() || self.t == 0 {
            Some(self.a.clone())
        } else {
            None
        }
    }

    pub fn to_f64(&self) -> f64 {
        let root = sqrt_interval(&BigRational::from_integer(BigInt::from(self.t)), 96);
        rational_to_f64(&self.a) + rational_to_f64(&self.b) * root.to_f64()
    }

    /// Decimal-friendly rendering: "a + b*sqrt(t)".
    pub fn render(&self) -> String {
        if self.b.is_zero() {
            format!("{}", self.a)
        } else {
            format!("{} + {}*sqrt({})", self.a, self.b, self.t)
        }
    }
}
