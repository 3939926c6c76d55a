//! Exact lengths: rational linear combinations of square roots of integers.
//!
//! Every saddle connection on a square-tiled surface has length `u * sqrt(n)`
//! for the tile size `u` and an integer `n`, so sums and products of lengths
//! stay in this ring. Square roots of distinct square-free integers are
//! linearly independent over the rationals, which makes the canonical form
//! below unique and equality exact; signs are decided by certified rational
//! enclosures.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::interval::{self, Interval};
use crate::scalar::Scalar;

/// `sum_b c_b * sqrt(b)` over square-free `b`, zero coefficients dropped.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Surd {
    terms: BTreeMap<u64, BigRational>,
}

/// Split `n` as `a^2 * b` with `b` square-free.
pub fn square_free_split(mut n: u64) -> (u64, u64) {
    assert!(n > 0);
    let mut a = 1u64;
    let mut b = 1u64;
    let mut p = 2u64;
    while p * p <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        a *= p.pow(e / 2);
        if e % 2 == 1 {
            b *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    b *= n;
    (a, b)
}

impl Surd {
    pub fn zero() -> Self {
        Surd::default()
    }

    pub fn rational(q: &Scalar) -> Self {
        let mut s = Surd::zero();
        s.add_term(1, q.0.clone());
        s
    }

    pub fn int(n: i64) -> Self {
        Surd::rational(&Scalar::int(n))
    }

    /// `coef * sqrt(n)`.
    pub fn scaled_sqrt(coef: &Scalar, n: u64) -> Self {
        let mut s = Surd::zero();
        if n == 0 {
            return s;
        }
        let (a, b) = square_free_split(n);
        s.add_term(b, &coef.0 * BigRational::from_integer(BigInt::from(a)));
        s
    }

    /// Square root of a non-negative rational whose reduced numerator and
    /// denominator product fits in a `u64`.
    pub fn sqrt_rational(q: &Scalar) -> Self {
        assert!(!q.0.is_negative());
        if q.is_zero() {
            return Surd::zero();
        }
        // sqrt(n/d) = sqrt(n d) / d
        let nd = (q.numer() * q.denom()).to_u64().expect("radicand overflow");
        let d = Scalar(BigRational::from_integer(q.denom().clone()));
        Surd::scaled_sqrt(&d.recip(), nd)
    }

    fn add_term(&mut self, b: u64, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(b).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&b);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value as a rational, if it has no irrational part.
    pub fn as_rational(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self.terms.get(&1).map(|c| Scalar(c.clone())),
            _ => None,
        }
    }

    pub fn scale(&self, k: &Scalar) -> Surd {
        let mut out = Surd::zero();
        for (b, c) in &self.terms {
            out.add_term(*b, c * &k.0);
        }
        out
    }

    pub fn square(&self) -> Surd {
        self * self
    }

    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(b, c)| c.to_f64().unwrap_or(f64::NAN) * (*b as f64).sqrt())
            .sum()
    }

    pub fn to_interval(&self, bits: u32) -> Interval {
        let mut acc = Interval::from_int(0);
        for (b, c) in &self.terms {
            let root = interval::sqrt(&BigRational::from_integer(BigInt::from(*b)), bits);
            let term = &Interval::point(c.clone()) * &root;
            acc = &acc + &term;
        }
        acc
    }

    /// Exact sign.
    pub fn signum(&self) -> Ordering {
        if self.terms.is_empty() {
            return Ordering::Equal;
        }
        // Fast path: the floating point error is far below this margin.
        let mut approx = 0.0f64;
        let mut mag = 0.0f64;
        for (b, c) in &self.terms {
            let t = c.to_f64().unwrap_or(f64::NAN) * (*b as f64).sqrt();
            approx += t;
            mag += t.abs();
        }
        if approx.is_finite() && mag.is_finite() && approx.abs() > 1e-9 * mag {
            return if approx > 0.0 { Ordering::Greater } else { Ordering::Less };
        }
        let mut bits = 64;
        loop {
            let iv = self.to_interval(bits);
            if iv.lo.is_positive() {
                return Ordering::Greater;
            }
            if iv.hi.is_negative() {
                return Ordering::Less;
            }
            bits *= 2;
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, &BigRational)> {
        self.terms.iter().map(|(b, c)| (*b, c))
    }
}

impl PartialOrd for Surd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Surd {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum()
    }
}

impl fmt::Debug for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (~{})", self, self.to_f64())
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (b, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let c = Scalar(c.clone());
            if *b == 1 {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}*sqrt({b})")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid surd literal `{0}`")]
pub struct ParseSurdError(pub String);

/// Parses the display form: terms `q` or `q*sqrt(n)` joined by ` + `.
impl std::str::FromStr for Surd {
    type Err = ParseSurdError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseSurdError(s.to_string());
        let mut out = Surd::zero();
        for term in s.split(" + ") {
            let (coef, n) = match term.trim().split_once("*sqrt(") {
                Some((c, rest)) => (c, rest.strip_suffix(')').ok_or_else(err)?.parse::<u64>().map_err(|_| err())?),
                None => (term, 1),
            };
            let coef: Scalar = coef.parse().map_err(|_| err())?;
            out = out + Surd::scaled_sqrt(&coef, n);
        }
        Ok(out)
    }
}

impl Add for &Surd {
    type Output = Surd;
    fn add(self, rhs: &Surd) -> Surd {
        let mut out = self.clone();
        for (b, c) in &rhs.terms {
            out.add_term(*b, c.clone());
        }
        out
    }
}

impl Add for Surd {
    type Output = Surd;
    fn add(self, rhs: Surd) -> Surd {
        &self + &rhs
    }
}

impl Sub for &Surd {
    type Output = Surd;
    fn sub(self, rhs: &Surd) -> Surd {
        let mut out = self.clone();
        for (b, c) in &rhs.terms {
            out.add_term(*b, -c.clone());
        }
        out
    }
}

impl Sub for Surd {
    type Output = Surd;
    fn sub(self, rhs: Surd) -> Surd {
        &self - &rhs
    }
}

impl Neg for &Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        Surd::zero() - self.clone()
    }
}

impl Mul for &Surd {
    type Output = Surd;
    fn mul(self, rhs: &Surd) -> Surd {
        let mut out = Surd::zero();
        for (b1, c1) in &self.terms {
            for (b2, c2) in &rhs.terms {
                // sqrt(b1 b2) = g sqrt((b1/g)(b2/g)) for square-free b1, b2
                let g = b1.gcd(b2);
                let b = (b1 / g) * (b2 / g);
                out.add_term(b, c1 * c2 * BigRational::from_integer(BigInt::from(g)));
            }
        }
        out
    }
}

impl Mul for Surd {
    type Output = Surd;
    fn mul(self, rhs: Surd) -> Surd {
        &self * &rhs
    }
}

impl std::iter::Sum for Surd {
    fn sum<I: Iterator<Item = Surd>>(iter: I) -> Surd {
        iter.fold(Surd::zero(), |a, b| a + b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        assert_eq!(square_free_split(72), (6, 2));
        let a = Surd::scaled_sqrt(&Scalar::one(), 8);
        let b = Surd::scaled_sqrt(&Scalar::int(2), 2);
        assert_eq!(a, b);
        assert_eq!(Surd::sqrt_rational(&Scalar::new(9, 4)).as_rational(), Some(Scalar::new(3, 2)));
    }

    #[test]
    fn display_round_trip() {
        let x = Surd::rational(&Scalar::new(-3, 7)) + Surd::scaled_sqrt(&Scalar::new(5, 2), 12);
        assert_eq!(x.to_string().parse::<Surd>().unwrap(), x);
        assert_eq!("0".parse::<Surd>().unwrap(), Surd::zero());
        assert!("1*sqrt(x)".parse::<Surd>().is_err());
    }

    #[test]
    fn products_stay_in_ring() {
        let s2 = Surd::scaled_sqrt(&Scalar::one(), 2);
        let s3 = Surd::scaled_sqrt(&Scalar::one(), 3);
        let s6 = Surd::scaled_sqrt(&Scalar::one(), 6);
        assert_eq!(&s2 * &s3, s6);
        assert_eq!(s2.square().as_rational(), Some(Scalar::int(2)));
    }

    #[test]
    fn near_ties_resolved_exactly() {
        // sqrt(2) + sqrt(3) vs sqrt(10): 3.1462... vs 3.1623...
        let lhs = Surd::scaled_sqrt(&Scalar::one(), 2) + Surd::scaled_sqrt(&Scalar::one(), 3);
        let rhs = Surd::scaled_sqrt(&Scalar::one(), 10);
        assert!(lhs < rhs);
        // 99/70 is a very close rational approximation of sqrt(2)
        let r = Surd::rational(&Scalar::new(99, 70));
        assert!(Surd::scaled_sqrt(&Scalar::one(), 2) < r);
        let d = Surd::scaled_sqrt(&Scalar::new(1, 1_000_000_000), 2) - Surd::rational(&Scalar::new(1_414_213_562, 1_000_000_000_000_000_000));
        assert_eq!(d.signum(), Ordering::Greater);
    }
}
