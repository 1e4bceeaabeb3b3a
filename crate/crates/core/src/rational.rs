//! Exact arbitrary-precision rationals.
//!
//! `Rational` is always stored in lowest terms with a positive denominator.
//! Its text form is `p/q`, or just `p` when the denominator is one; the
//! parser also accepts the Unicode minus sign.

use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rational(BigRational);

impl Rational {
    /// `numer / denom`, reduced. Panics if `denom` is zero.
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Self {
        let denom = denom.into();
        assert!(!denom.is_zero(), "zero denominator");
        Rational(BigRational::new(numer.into(), denom))
    }

    pub fn checked_new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(BigRational::new(numer.into(), denom)))
    }

    /// For parts already known to be coprime with `denom > 0`.
    pub(crate) fn from_coprime_parts(numer: BigInt, denom: BigInt) -> Self {
        Rational(BigRational::new_raw(numer, denom))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        match self.0.cmp(&BigRational::zero()) {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        }
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(Rational(self.0.recip()))
        }
    }

    pub fn checked_div(&self, rhs: &Rational) -> Result<Self> {
        if rhs.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(Rational(&self.0 / &rhs.0))
        }
    }

    /// Integer power; negative exponents of zero panic.
    pub fn pow(&self, exp: i32) -> Self {
        Rational(num_traits::Pow::pow(&self.0, exp))
    }

    /// Largest integer not exceeding the value.
    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn min(self, other: Self) -> Self {
        std::cmp::min(self, other)
    }

    pub fn max(self, other: Self) -> Self {
        std::cmp::max(self, other)
    }

    /// Lossy conversion for display purposes only.
    pub fn to_f64_lossy(&self) -> f64 {
        num_traits::ToPrimitive::to_f64(&self.0).unwrap_or(f64::NAN)
    }

    pub fn as_big_rational(&self) -> &BigRational {
        &self.0
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational(r)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_integer(n)
    }
}

impl From<&BigInt> for Rational {
    fn from(n: &BigInt) -> Self {
        Rational::from_integer(n.clone())
    }
}

macro_rules! from_prim {
    ($($t:ty),*) => {$(
        impl From<$t> for Rational {
            fn from(n: $t) -> Self {
                Rational::from_integer(BigInt::from(n))
            }
        }
    )*};
}
from_prim!(i32, i64, u32, u64, usize);

macro_rules! bin_op {
    ($tr:ident, $method:ident, $op:tt) => {
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0 $op rhs.0)
            }
        }
        impl<'a> $tr<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational(self.0 $op &rhs.0)
            }
        }
        impl<'a> $tr<Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(&self.0 $op rhs.0)
            }
        }
        impl<'a, 'b> $tr<&'b Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'b Rational) -> Rational {
                Rational(&self.0 $op &rhs.0)
            }
        }
    };
}

/// gcd with a shortcut when one side fits in a machine word: reducing the
/// big side modulo the small one first avoids a long binary gcd.
fn gcd_fast(a: &BigInt, b: &BigInt) -> BigInt {
    use num_traits::ToPrimitive;
    let (big, small) = if a.bits() >= b.bits() { (a, b) } else { (b, a) };
    match small.magnitude().to_u64() {
        Some(0) => big.abs(),
        Some(m) => {
            let r = (big.magnitude() % m).to_u64().expect("remainder below u64 modulus");
            BigInt::from(m.gcd(&r))
        }
        None => a.gcd(b),
    }
}

fn mul_reduced(x: &BigRational, y: &BigRational) -> BigRational {
    if x.is_zero() || y.is_zero() {
        return BigRational::zero();
    }
    let g1 = gcd_fast(x.numer(), y.denom());
    let g2 = gcd_fast(y.numer(), x.denom());
    BigRational::new_raw(
        (x.numer() / &g1) * (y.numer() / &g2),
        (x.denom() / &g2) * (y.denom() / &g1),
    )
}

macro_rules! mul_op {
    ($($l:ty, $r:ty);*) => {$(
        impl Mul<$r> for $l {
            type Output = Rational;
            fn mul(self, rhs: $r) -> Rational {
                Rational(mul_reduced(&self.0, &rhs.0))
            }
        }
    )*};
}

bin_op!(Add, add, +);
bin_op!(Sub, sub, -);
mul_op!(Rational, Rational; Rational, &Rational; &Rational, Rational; &Rational, &Rational);
// Panics on a zero divisor, like the integer types; use `checked_div` otherwise.
bin_op!(Div, div, /);

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl AddAssign<Rational> for Rational {
    fn add_assign(&mut self, rhs: Rational) {
        self.0 += rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl SubAssign<Rational> for Rational {
    fn sub_assign(&mut self, rhs: Rational) {
        self.0 -= rhs.0;
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        self.0 = mul_reduced(&self.0, &rhs.0);
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

/// Running sum over one common denominator, reduced once at the end.
/// Factorial sums mostly have denominators dividing the current one, so a
/// single division replaces a gcd per term.
#[derive(Debug, Clone)]
struct CommonDenominatorSum {
    num: BigInt,
    den: BigInt,
}

impl CommonDenominatorSum {
    fn new() -> Self {
        CommonDenominatorSum { num: BigInt::zero(), den: BigInt::one() }
    }

    fn add(&mut self, x: &Rational) {
        self.add_parts(x.0.numer(), x.0.denom());
    }

    /// Adds `p/q` for any `q > 0`, reduced or not.
    fn add_parts(&mut self, p: &BigInt, q: &BigInt) {
        let (quot, rem) = self.den.div_rem(q);
        if rem.is_zero() {
            self.num += p * quot;
        } else {
            let scale = q / self.den.gcd(q);
            self.num *= &scale;
            self.den *= &scale;
            self.num += p * (&self.den / q);
        }
    }

    fn finish(self) -> Rational {
        Rational(BigRational::new(self.num, self.den))
    }
}

/// `sum x_i y_i`, reducing only the final result.
pub(crate) fn dot<'a>(pairs: impl IntoIterator<Item = (&'a Rational, &'a Rational)>) -> Rational {
    let mut acc = CommonDenominatorSum::new();
    for (x, y) in pairs {
        acc.add_parts(&(x.0.numer() * y.0.numer()), &(x.0.denom() * y.0.denom()));
    }
    acc.finish()
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        let mut acc = CommonDenominatorSum::new();
        iter.for_each(|x| acc.add(&x));
        acc.finish()
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Self {
        let mut acc = CommonDenominatorSum::new();
        iter.for_each(|x| acc.add(x));
        acc.finish()
    }
}

impl Product for Rational {
    fn product<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::one(), |acc, x| acc * x)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::ParseRational(s.to_string());
        let trimmed = s.trim();
        let (negative, body) = if let Some(rest) = trimmed.strip_prefix('\u{2212}') {
            (true, rest)
        } else if let Some(rest) = trimmed.strip_prefix('-') {
            (true, rest)
        } else {
            (false, trimmed)
        };
        let digits = |p: &str| -> Result<BigInt> {
            if p.is_empty() || !p.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            p.parse::<BigInt>().map_err(|_| bad())
        };
        let (p, q) = match body.split_once('/') {
            Some((p, q)) => (digits(p)?, digits(q)?),
            None => (digits(body)?, BigInt::one()),
        };
        if q.is_zero() {
            return Err(bad());
        }
        let p = if negative { -p } else { p };
        Ok(Rational::new(p, q))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
