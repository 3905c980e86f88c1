//! Outward-rounded interval arithmetic over exact rationals.
//!
//! Bound expressions mix rational data (counts, n^k/k!) with irrational
//! factors (1/e, square roots, base-2 logarithms). Each irrational factor
//! is enclosed in a rational interval at a requested precision; interval
//! products/sums stay outward-rounded, so `observed <= interval.lo` is a
//! certificate that the true bound is respected. Comparisons that land
//! inside an interval escalate precision until they resolve.

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// A closed interval with exact rational endpoints, `lo <= hi`.
#[derive(Clone, Debug, PartialEq)]
pub struct RatInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RatInterval {
    pub fn exact(x: BigRational) -> Self {
        RatInterval { lo: x.clone(), hi: x }
    }

    pub fn from_int(x: i64) -> Self {
        Self::exact(BigRational::from_integer(BigInt::from(x)))
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn add(&self, other: &Self) -> Self {
        RatInterval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let cands = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = cands.iter().min().unwrap().clone();
        let hi = cands.iter().max().unwrap().clone();
        RatInterval { lo, hi }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_negative() {
            RatInterval {
                lo: &self.hi * c,
                hi: &self.lo * c,
            }
        } else {
            RatInterval {
                lo: &self.lo * c,
                hi: &self.hi * c,
            }
        }
    }

    /// Reciprocal; requires the interval not to contain zero.
    pub fn recip(&self) -> Self {
        assert!(
            self.lo.is_positive() || self.hi.is_negative(),
            "reciprocal of an interval containing zero"
        );
        RatInterval {
            lo: self.hi.recip(),
            hi: self.lo.recip(),
        }
    }

    /// Midpoint as f64, for display only.
    pub fn to_f64(&self) -> f64 {
        let mid = (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2));
        rational_to_f64(&mid)
    }
}

/// Lossy rational-to-f64 conversion for rendering.
pub fn rational_to_f64(x: &BigRational) -> f64 {
    let num = x.numer();
    let den = x.denom();
    // scale down so both fit in f64 range
    let nb = num.bits() as i64;
    let db = den.bits() as i64;
    let shift = (nb.max(db) - 900).max(0) as u64;
    let n2 = num >> shift;
    let d2 = den >> shift;
    let nf = bigint_to_f64(&n2);
    let df = bigint_to_f64(&d2);
    if df == 0.0 {
        0.0
    } else {
        nf / df
    }
}

fn bigint_to_f64(x: &BigInt) -> f64 {
    let (sign, digits) = x.to_radix_be(10);
    let s: String = digits.iter().map(|d| (b'0' + d) as char).collect();
    let v = s.parse::<f64>().unwrap_or(f64::INFINITY);
    if sign == Sign::Minus {
        -v
    } else {
        v
    }
}

fn pow2(bits: u32) -> BigInt {
    BigInt::one() << bits
}

/// Floor of the integer square root.
fn big_isqrt(x: &BigUint) -> BigUint {
    if x.is_zero() {
        return BigUint::zero();
    }
    let mut guess = BigUint::one() << ((x.bits() + 1) / 2);
    loop {
        let next = (&guess + x / &guess) >> 1;
        if next >= guess {
            return guess;
        }
        guess = next;
    }
}

/// Floor of the integer m-th root.
fn big_root(x: &BigUint, m: u32) -> BigUint {
    if x.is_zero() || m == 1 {
        return x.clone();
    }
    let mut lo = BigUint::zero();
    let mut hi = BigUint::one() << (x.bits() / m as u64 + 1);
    // invariant: lo^m <= x < hi^m
    while &lo + 1u32 < hi {
        let mid: BigUint = (&lo + &hi) >> 1;
        if mid.pow(m) <= *x {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Enclosure of sqrt(x) for x >= 0, exact when x is a perfect rational square.
pub fn sqrt_interval(x: &BigRational, bits: u32) -> RatInterval {
    assert!(!x.is_negative(), "sqrt of a negative rational");
    if x.is_zero() {
        return RatInterval::exact(BigRational::zero());
    }
    // sqrt(p/q) = sqrt(p q) / q
    let p = x.numer().magnitude();
    let q = x.denom().magnitude();
    let pq = p * q;
    let root = big_isqrt(&pq);
    if &root * &root == pq {
        return RatInterval::exact(BigRational::new(root.into(), x.denom().clone()));
    }
    // scale by 4^bits for the dyadic approximation
    let scaled = &pq << (2 * bits as u64);
    let s = big_isqrt(&scaled);
    let den = BigInt::from(q.clone()) * pow2(bits);
    RatInterval {
        lo: BigRational::new(s.clone().into(), den.clone()),
        hi: BigRational::new((s + 1u32).into(), den),
    }
}

/// Enclosure of x^(1/m) for x >= 0, exact when x is a perfect m-th power.
pub fn root_interval(x: &BigRational, m: u32, bits: u32) -> RatInterval {
    assert!(m >= 1);
    assert!(!x.is_negative(), "root of a negative rational");
    if x.is_zero() {
        return RatInterval::exact(BigRational::zero());
    }
    // x^(1/m) = (p q^(m-1))^(1/m) / q
    let p = x.numer().magnitude();
    let q = x.denom().magnitude();
    let body = p * q.pow(m - 1);
    let root = big_root(&body, m);
    if root.pow(m) == body {
        return RatInterval::exact(BigRational::new(root.into(), x.denom().clone()));
    }
    let scaled = &body << (m as u64 * bits as u64);
    let s = big_root(&scaled, m);
    let den = BigInt::from(q.clone()) * pow2(bits);
    RatInterval {
        lo: BigRational::new(s.clone().into(), den.clone()),
        hi: BigRational::new((s + 1u32).into(), den),
    }
}

/// Enclosure of Euler's number e from its series; width < 2/(N+1)!.
pub fn e_interval(bits: u32) -> RatInterval {
    // choose N with (N+1)! > 2^(bits+1); N = bits works far beyond need,
    // but grow adaptively to keep terms minimal.
    let mut n = 4usize;
    let mut fact = BigUint::from(24u32);
    let target = BigUint::one() << (bits as u64 + 1);
    while fact < target {
        n += 1;
        fact *= BigUint::from(n);
    }
    let mut sum = BigRational::zero();
    let mut term = BigRational::one();
    for i in 1..=(n + 1) {
        sum += &term;
        term /= BigRational::from_integer(BigInt::from(i));
    }
    // sum covers 1/0! .. 1/n!; the tail sum_{j > n} 1/j! is below 2/(n+1)!
    let rem = BigRational::new(BigInt::from(2), BigInt::from(factorial_big(n + 1)));
    RatInterval {
        lo: sum.clone(),
        hi: sum + rem,
    }
}

fn factorial_big(n: usize) -> BigUint {
    let mut acc = BigUint::one();
    for i in 2..=n {
        acc *= BigUint::from(i);
    }
    acc
}

/// Enclosure of 1/e.
pub fn inv_e_interval(bits: u32) -> RatInterval {
    e_interval(bits).recip()
}

/// Enclosure of log2(x) for x > 0, exact when x is a power of two.
///
/// Standard digit recurrence on the mantissa: with m in [1, 2), the next
/// binary digit of log2(m) is 1 iff m^2 >= 2. A digit is emitted only when
/// a dyadic enclosure of m certifies it for both endpoints, so the result
/// always brackets the true value.
pub fn log2_interval(x: &BigRational, bits: u32) -> RatInterval {
    assert!(x.is_positive(), "log2 of a non-positive rational");
    // normalize x = 2^e * m with m in [1, 2)
    let mut e: i64 = 0;
    let two = BigRational::from_integer(BigInt::from(2));
    let one = BigRational::one();
    let mut m = x.clone();
    while m >= two {
        m /= &two;
        e += 1;
    }
    while m < one {
        m *= &two;
        e -= 1;
    }
    if m == one {
        return RatInterval::exact(BigRational::from_integer(BigInt::from(e)));
    }
    // dyadic enclosure [lo, hi] / 2^p of m, with headroom so that the
    // per-step slack doubling never reaches a digit boundary early
    let p = 2 * bits + 16;
    let scale = pow2(p);
    let floor = (m.numer() * &scale) / m.denom();
    let exact_rep = &BigRational::new(floor.clone(), scale.clone().into()) == &m;
    let mut lo = floor.clone();
    let mut hi = if exact_rep { floor } else { &lo + 1 };
    let two_scale: BigInt = &scale << 1;
    let mut frac = BigInt::zero();
    let mut extracted = 0u32;
    for _ in 0..bits {
        lo = (&lo * &lo) >> p; // floor
        hi = ((&hi * &hi) + (&scale - 1)) / &scale; // ceil
        if lo >= two_scale {
            frac = (frac << 1) + 1;
            lo >>= 1;
            hi = (&hi + 1) >> 1;
        } else if hi < two_scale {
            frac <<= 1;
        } else {
            // enclosure straddles 2: digit not certified, stop here
            break;
        }
        extracted += 1;
    }
    // log2(m) lies in [frac, frac + 1] / 2^extracted
    let denom = pow2(extracted);
    let base = BigRational::from_integer(BigInt::from(e));
    RatInterval {
        lo: &base + BigRational::new(frac.clone(), denom.clone()),
        hi: base + BigRational::new(frac + 1, denom),
    }
}

/// Three-way certified comparison of an exact rational against a
/// monotone family of enclosures of a real number.
///
/// `make` receives a precision in bits and must return an enclosure of
/// the same real value, tighter as precision grows.
pub fn certified_cmp<F>(x: &BigRational, make: F) -> Result<std::cmp::Ordering>
where
    F: Fn(u32) -> RatInterval,
{
    let mut bits = 64u32;
    loop {
        let iv = make(bits);
        if *x < iv.lo {
            return Ok(std::cmp::Ordering::Less);
        }
        if *x > iv.hi {
            return Ok(std::cmp::Ordering::Greater);
        }
        if iv.is_exact() {
            return Ok(x.cmp(&iv.lo));
        }
        if bits >= 8192 {
            return Err(Error::PrecisionExhausted { bits });
        }
        bits *= 2;
    }
}

/// Certified test `x <= value`, where `value` is given by enclosures.
pub fn certified_le<F>(x: &BigRational, make: F) -> Result<bool>
where
    F: Fn(u32) -> RatInterval,
{
    Ok(certified_cmp(x, make)? != std::cmp::Ordering::Greater)
}

/// Certified test `x >= value`.
pub fn certified_ge<F>(x: &BigRational, make: F) -> Result<bool>
where
    F: Fn(u32) -> RatInterval,
{
    Ok(certified_cmp(x, make)? != std::cmp::Ordering::Less)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::str::FromStr;

    fn rat(s: &str) -> BigRational {
        BigRational::from_str(s).unwrap()
    }

    #[test]
    fn e_encloses_reference() {
        let iv = e_interval(128);
        // 50 digits of e
        let lo = rat("271828182845904523536028747135266249775724709369995/100000000000000000000000000000000000000000000000000");
        let hi = rat("271828182845904523536028747135266249775724709369996/100000000000000000000000000000000000000000000000000");
        assert!(iv.lo <= hi && iv.hi >= lo);
        assert!(iv.lo < iv.hi);
        assert!(iv.hi - iv.lo < rat("1/1000000000000000000000000000000"));
    }

    #[test]
    fn sqrt_exact_and_enclosing() {
        let iv = sqrt_interval(&rat("9/4"), 64);
        assert!(iv.is_exact());
        assert_eq!(iv.lo, rat("3/2"));

        let iv = sqrt_interval(&rat("2"), 64);
        assert!(!iv.is_exact());
        assert!(&iv.lo * &iv.lo < rat("2"));
        assert!(&iv.hi * &iv.hi > rat("2"));
        assert!(&iv.hi - &iv.lo < rat("1/1000000000000000"));
    }

    #[test]
    fn roots() {
        let iv = root_interval(&rat("32"), 5, 64);
        assert!(iv.is_exact());
        assert_eq!(iv.lo, rat("2"));

        let iv = root_interval(&rat("10"), 4, 80);
        let lo4 = iv.lo.pow(4);
        let hi4 = iv.hi.pow(4);
        assert!(lo4 < rat("10") && hi4 > rat("10"));
    }

    #[test]
    fn log2_values() {
        let iv = log2_interval(&rat("8"), 64);
        assert!(iv.is_exact());
        assert_eq!(iv.lo, rat("3"));

        let iv = log2_interval(&rat("1/4"), 64);
        assert_eq!(iv.lo, rat("-2"));

        let iv = log2_interval(&rat("10"), 64);
        // log2(10) = 3.3219280948873623...
        assert!(iv.lo < rat("33219280948873624/10000000000000000"));
        assert!(iv.hi > rat("33219280948873623/10000000000000000"));
        assert!(&iv.hi - &iv.lo < rat("1/1000000000"));

        let iv = log2_interval(&rat("7"), 96);
        // 2^lo < 7 < 2^hi, checked loosely via 7^1 against 2^(lo..hi) bounds
        assert!(iv.lo < iv.hi);
        assert!(iv.lo > rat("28/10") && iv.hi < rat("281/100"));
    }

    #[test]
    fn certified_comparisons() {
        // 1/e = 0.36787944...
        assert!(certified_le(&rat("367/1000"), |b| inv_e_interval(b)).unwrap());
        assert!(!certified_le(&rat("368/1000"), |b| inv_e_interval(b)).unwrap());
        assert!(certified_ge(&rat("15/10"), |b| sqrt_interval(&rat("2"), b)).unwrap());
        // exact resolution: sqrt(9/4) == 3/2
        assert_eq!(
            certified_cmp(&rat("3/2"), |b| sqrt_interval(&rat("9/4"), b)).unwrap(),
            std::cmp::Ordering::Equal
        );
    }
}
