//! Certified enclosures of real numbers by rational intervals.
//!
//! Every transcendental constant that enters an asserted inequality (pi,
//! logarithms, square roots) is evaluated here. Endpoints are dyadic
//! rationals rounded outward, so an interval always contains the true value.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::scalar::Scalar;

/// Default number of fractional bits kept by outward rounding.
pub const DEFAULT_BITS: u32 = 96;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

fn pow2(bits: u32) -> BigInt {
    BigInt::one() << bits
}

fn round_down(x: &BigRational, bits: u32) -> BigRational {
    let scale = pow2(bits);
    let scaled = x * BigRational::from_integer(scale.clone());
    BigRational::new(scaled.floor().to_integer(), scale)
}

fn round_up(x: &BigRational, bits: u32) -> BigRational {
    let scale = pow2(bits);
    let scaled = x * BigRational::from_integer(scale.clone());
    BigRational::new(scaled.ceil().to_integer(), scale)
}

impl Interval {
    pub fn point(x: BigRational) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn from_scalar(x: &Scalar) -> Self {
        Interval::point(x.0.clone())
    }

    pub fn from_int(n: i64) -> Self {
        Interval::point(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        debug_assert!(lo <= hi);
        Interval { lo, hi }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn mid_f64(&self) -> f64 {
        ((&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2)))
            .to_f64()
            .unwrap_or(f64::NAN)
    }

    /// Widen outward to dyadic endpoints with `bits` fractional bits.
    pub fn rounded(&self, bits: u32) -> Self {
        Interval {
            lo: round_down(&self.lo, bits),
            hi: round_up(&self.hi, bits),
        }
    }

    /// `Some(ordering)` when the comparison against `other` is certain.
    pub fn cmp_certain(&self, other: &Interval) -> Option<Ordering> {
        if self.hi < other.lo {
            Some(Ordering::Less)
        } else if self.lo > other.hi {
            Some(Ordering::Greater)
        } else if self.lo == self.hi && other.lo == other.hi && self.lo == other.lo {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    pub fn certainly_lt(&self, other: &Interval) -> bool {
        self.hi < other.lo
    }

    pub fn certainly_le(&self, other: &Interval) -> bool {
        self.hi <= other.lo
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    /// Quotient of two intervals; the divisor must be strictly positive.
    pub fn div_pos(&self, d: &Interval) -> Interval {
        assert!(d.lo.is_positive(), "divisor interval must be positive");
        let cands = [
            &self.lo / &d.lo,
            &self.lo / &d.hi,
            &self.hi / &d.lo,
            &self.hi / &d.hi,
        ];
        let lo = cands.iter().min().unwrap().clone();
        let hi = cands.iter().max().unwrap().clone();
        Interval { lo, hi }
    }

    pub fn square(&self) -> Interval {
        if self.lo.is_negative() && self.hi.is_positive() {
            let a = &self.lo * &self.lo;
            let b = &self.hi * &self.hi;
            Interval { lo: BigRational::zero(), hi: a.max(b) }
        } else {
            let a = &self.lo * &self.lo;
            let b = &self.hi * &self.hi;
            if a <= b {
                Interval { lo: a, hi: b }
            } else {
                Interval { lo: b, hi: a }
            }
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{:.12}, {:.12}]",
            self.lo.to_f64().unwrap_or(f64::NAN),
            self.hi.to_f64().unwrap_or(f64::NAN)
        )
    }
}

impl Add for &Interval {
    type Output = Interval;
    fn add(self, rhs: &Interval) -> Interval {
        Interval { lo: &self.lo + &rhs.lo, hi: &self.hi + &rhs.hi }
    }
}

impl Sub for &Interval {
    type Output = Interval;
    fn sub(self, rhs: &Interval) -> Interval {
        Interval { lo: &self.lo - &rhs.hi, hi: &self.hi - &rhs.lo }
    }
}

impl Neg for &Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval { lo: -&self.hi, hi: -&self.lo }
    }
}

impl Mul for &Interval {
    type Output = Interval;
    fn mul(self, rhs: &Interval) -> Interval {
        let c = [
            &self.lo * &rhs.lo,
            &self.lo * &rhs.hi,
            &self.hi * &rhs.lo,
            &self.hi * &rhs.hi,
        ];
        Interval {
            lo: c.iter().min().unwrap().clone(),
            hi: c.iter().max().unwrap().clone(),
        }
    }
}

/// Enclosure of the square root of a non-negative rational.
pub fn sqrt(x: &BigRational, bits: u32) -> Interval {
    assert!(!x.is_negative(), "sqrt of a negative number");
    if x.is_zero() {
        return Interval::point(BigRational::zero());
    }
    // sqrt(n/d) = sqrt(n*d)/d
    let n = x.numer() * x.denom();
    let d = x.denom().clone();
    let scale = pow2(bits);
    let scaled = &n * &scale * &scale;
    let root = scaled.sqrt();
    let den = &scale * &d;
    let lo = BigRational::new(root.clone(), den.clone());
    if &root * &root == scaled {
        return Interval::point(lo);
    }
    let hi = BigRational::new(root + 1, den);
    Interval { lo, hi }
}

fn atan_inv(x: i64, bits: u32) -> Interval {
    // Alternating series sum_k (-1)^k / ((2k+1) x^(2k+1)); consecutive
    // partial sums bracket the limit.
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let eps = BigRational::new(BigInt::one(), pow2(bits + 8));
    let mut power = x.clone();
    let mut sum = BigRational::zero();
    let mut k: i64 = 0;
    loop {
        let term = BigRational::new(BigInt::one(), &power * BigInt::from(2 * k + 1));
        let next = if k % 2 == 0 { &sum + &term } else { &sum - &term };
        if term < eps {
            let (lo, hi) = if sum < next { (sum, next) } else { (next, sum) };
            return Interval { lo, hi };
        }
        sum = next;
        power *= &x2;
        k += 1;
    }
}

/// Enclosure of pi via Machin's formula.
pub fn pi(bits: u32) -> Interval {
    let a = atan_inv(5, bits);
    let b = atan_inv(239, bits);
    let sixteen = Interval::from_int(16);
    let four = Interval::from_int(4);
    (&(&sixteen * &a) - &(&four * &b)).rounded(bits)
}

/// Lower or upper bound of atanh(z) for a rational 0 <= z < 1/2, summed in
/// fixed point with `bits + 8` fractional bits rounded toward the bound.
fn atanh_bound(z: &BigRational, bits: u32, upper: bool) -> BigRational {
    let p = bits + 8;
    let scale = pow2(p);
    let div = |n: BigInt, d: &BigInt| -> BigInt {
        let (q, r) = n.div_mod_floor(d);
        if upper && !r.is_zero() {
            q + 1
        } else {
            q
        }
    };
    let z = div(z.numer() * &scale, z.denom());
    let z2 = div(&z * &z, &scale);
    let mut power = z;
    let mut sum = BigInt::zero();
    let mut k: i64 = 0;
    loop {
        sum += div(power.clone(), &BigInt::from(2 * k + 1));
        power = div(&power * &z2, &scale);
        k += 1;
        if power <= BigInt::one() {
            break;
        }
    }
    if upper {
        // Tail bounded by z^(2k+1) / ((2k+1)(1 - z^2)) <= 2 * power / (2k+1).
        sum += div(&power * 2, &BigInt::from(2 * k + 1)) + 1;
    }
    BigRational::new(sum, scale)
}

fn ln_point(x: &BigRational, bits: u32, upper: bool) -> BigRational {
    assert!(x.is_positive(), "log of a non-positive number");
    // x = m * 2^e with 1 <= m < 2
    let e = x.numer().bits() as i64 - x.denom().bits() as i64;
    let two = BigRational::from_integer(BigInt::from(2));
    let mut e = e;
    let scale_for = |e: i64| {
        if e >= 0 {
            BigRational::from_integer(pow2(e as u32))
        } else {
            BigRational::new(BigInt::one(), pow2((-e) as u32))
        }
    };
    let mut m = x / scale_for(e);
    while m >= two {
        e += 1;
        m = x / scale_for(e);
    }
    while m < BigRational::one() {
        e -= 1;
        m = x / scale_for(e);
    }
    let one = BigRational::one();
    let z = (&m - &one) / (&m + &one);
    let third = BigRational::new(BigInt::one(), BigInt::from(3));
    let ln_m = &two * atanh_bound(&z, bits, upper);
    // e * ln 2 takes the bound matching the sign of e.
    let ln2_upper = if e >= 0 { upper } else { !upper };
    let ln2 = &two * atanh_bound(&third, bits, ln2_upper);
    ln_m + BigRational::from_integer(BigInt::from(e)) * ln2
}

/// Enclosure of the natural logarithm over a strictly positive interval.
pub fn ln(x: &Interval, bits: u32) -> Interval {
    assert!(x.lo.is_positive(), "log of a non-positive interval");
    Interval {
        lo: ln_point(&x.lo, bits, false),
        hi: ln_point(&x.hi, bits, true),
    }
    .rounded(bits)
}

/// Sign of `f(bits) - rhs`, refining precision until the enclosure decides
/// it; `Equal` only when enclosures stay degenerate at the bound.
pub fn compare_refined(f: impl Fn(u32) -> Interval, rhs: &BigRational) -> Ordering {
    let r = Interval::point(rhs.clone());
    let mut bits = DEFAULT_BITS;
    loop {
        if let Some(o) = f(bits).cmp_certain(&r) {
            return o;
        }
        if bits >= 8192 {
            return Ordering::Equal;
        }
        bits *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn contains(iv: &Interval, v: f64) -> bool {
        iv.lo.to_f64().unwrap() <= v && v <= iv.hi.to_f64().unwrap()
    }

    #[test]
    fn pi_enclosure_is_tight() {
        let p = pi(DEFAULT_BITS);
        assert!(contains(&p, std::f64::consts::PI));
        assert!(p.width() < BigRational::new(BigInt::one(), pow2(80)));
        // 355/113 is famously slightly above pi
        assert!(p.certainly_lt(&Interval::point(BigRational::new(355.into(), 113.into()))));
    }

    #[test]
    fn logs_match_libm() {
        for &(n, d) in &[(1i64, 1i64), (2, 1), (1, 3), (10, 1), (1000003, 7), (7, 1_000_000)] {
            let x = Interval::point(BigRational::new(n.into(), d.into()));
            let l = ln(&x, 80);
            let v = (n as f64 / d as f64).ln();
            assert!((l.mid_f64() - v).abs() < 1e-12, "ln({n}/{d})");
            assert!(l.width() < BigRational::new(BigInt::one(), pow2(60)));
        }
    }

    #[test]
    fn sqrt_exact_and_inexact() {
        let four = BigRational::from_integer(BigInt::from(4));
        assert_eq!(sqrt(&four, 32), Interval::point(BigRational::from_integer(2.into())));
        let three = sqrt(&BigRational::from_integer(3.into()), 64);
        assert!(contains(&three, 3f64.sqrt()));
        assert!(three.square().lo < BigRational::from_integer(3.into()));
    }
}
