//! Rigorous rational enclosures.
//!
//! Endpoints are exact rationals, so there is no rounding to direct; every
//! operation returns an interval containing all possible true values.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalInterval {
    lo: Rational,
    hi: Rational,
}

impl RationalInterval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidArgument(format!("empty interval [{lo}, {hi}]")));
        }
        Ok(RationalInterval { lo, hi })
    }

    pub fn point(x: Rational) -> Self {
        RationalInterval { lo: x.clone(), hi: x }
    }

    /// `[center - radius, center + radius]`; `radius` must be non-negative.
    pub fn around(center: &Rational, radius: &Rational) -> Self {
        assert!(!radius.is_negative(), "negative radius");
        RationalInterval { lo: center - radius, hi: center + radius }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from(2)
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(&Rational::zero())
    }

    /// `other` lies inside `self`.
    pub fn encloses(&self, other: &Self) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn overlaps(&self, other: &Self) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// Largest absolute value of any point in the interval.
    pub fn mag(&self) -> Rational {
        self.lo.abs().max(self.hi.abs())
    }

    /// `{|x| : x in self}`.
    pub fn abs(&self) -> Self {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            -self
        } else {
            RationalInterval { lo: Rational::zero(), hi: self.mag() }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let (a, b) = (&self.lo * c, &self.hi * c);
        if c.is_negative() {
            RationalInterval { lo: b, hi: a }
        } else {
            RationalInterval { lo: a, hi: b }
        }
    }

    pub fn square(&self) -> Self {
        let a = self.abs();
        RationalInterval { lo: &a.lo * &a.lo, hi: &a.hi * &a.hi }
    }

    pub fn recip(&self) -> Result<Self> {
        if self.contains_zero() {
            return Err(Error::IntervalContainsZero);
        }
        Ok(RationalInterval { lo: self.hi.recip()?, hi: self.lo.recip()? })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.recip()?)
    }
}

impl Add for &RationalInterval {
    type Output = RationalInterval;
    fn add(self, rhs: &RationalInterval) -> RationalInterval {
        RationalInterval { lo: &self.lo + &rhs.lo, hi: &self.hi + &rhs.hi }
    }
}

impl Sub for &RationalInterval {
    type Output = RationalInterval;
    fn sub(self, rhs: &RationalInterval) -> RationalInterval {
        RationalInterval { lo: &self.lo - &rhs.hi, hi: &self.hi - &rhs.lo }
    }
}

impl Mul for &RationalInterval {
    type Output = RationalInterval;
    fn mul(self, rhs: &RationalInterval) -> RationalInterval {
        let products = [
            &self.lo * &rhs.lo,
            &self.lo * &rhs.hi,
            &self.hi * &rhs.lo,
            &self.hi * &rhs.hi,
        ];
        let lo = products.iter().min().unwrap().clone();
        let hi = products.iter().max().unwrap().clone();
        RationalInterval { lo, hi }
    }
}

impl Neg for &RationalInterval {
    type Output = RationalInterval;
    fn neg(self) -> RationalInterval {
        RationalInterval { lo: -&self.hi, hi: -&self.lo }
    }
}

impl fmt::Display for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Enclosure of `e^x` of width at most `eps`.
///
/// Sums the Taylor series through `x^m/m!` and bounds the remainder by the
/// first omitted term times `1/(1 - |x|/(m+2))`, valid once `m + 2 > |x|`.
/// Terms are added until that bound drops to `eps/2`; for negative `x` the
/// bound is applied on both sides.
pub fn enclose_exp(x: &Rational, eps: &Rational) -> Result<RationalInterval> {
    if !eps.is_positive() {
        return Err(Error::InvalidArgument(format!("eps must be positive, got {eps}")));
    }
    if x.is_zero() {
        return Ok(RationalInterval::point(Rational::one()));
    }
    let ax = x.abs();
    let half_eps = eps / &Rational::from(2);
    let mut sum = Rational::one();
    let mut term = Rational::one();
    let mut m: i64 = 0;
    loop {
        // term = x^m/m!, sum = sum_{j<=m} x^j/j!
        let next = &(&term * x) / &Rational::from(m + 1);
        let ratio = &ax / &Rational::from(m + 2);
        if ratio < Rational::one() {
            let tail = &next.abs() / &(Rational::one() - ratio);
            if tail <= half_eps {
                return Ok(if x.is_positive() {
                    RationalInterval { lo: sum.clone(), hi: &sum + &tail }
                } else {
                    RationalInterval::around(&sum, &tail)
                });
            }
        }
        sum += &next;
        term = next;
        m += 1;
    }
}

/// Enclosure of `tanh(1/s)` of width at most `eps`, as `(E-1)/(E+1)` with
/// `E` enclosing `e^{2/s}`.
pub fn enclose_tanh_inv_s(s: u64, eps: &Rational) -> Result<RationalInterval> {
    if s == 0 {
        return Err(Error::InvalidArgument("s must be a positive integer".into()));
    }
    // d/dE (E-1)/(E+1) = 2/(E+1)^2 <= 1/2 for E >= 1
    let e = enclose_exp(&Rational::new(2, s), eps)?;
    let one = Rational::one();
    Ok(RationalInterval {
        lo: (e.lo() - &one) / (e.lo() + &one),
        hi: (e.hi() - &one) / (e.hi() + &one),
    })
}
