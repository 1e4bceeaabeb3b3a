//! Truncated Laurent series in `t = 1/s`.
//!
//! A series stores finitely many nonzero coefficients together with a
//! truncation order `T`: coefficients of `t^e` with `e > T` are unknown, and
//! reading one is an error rather than a silent zero. Positive powers of `s`
//! (negative powers of `t`) are allowed so that convergent polynomials
//! `p_n(s)`, `q_n(s)` live in the same ring. A truncation order of `None`
//! marks an exact finite Laurent polynomial.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{dot, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentSeries {
    coeffs: BTreeMap<i64, Rational>,
    trunc: Option<i64>,
}

fn min_order(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (Some(x), None) | (None, Some(x)) => Some(x),
        (None, None) => None,
    }
}

impl LaurentSeries {
    /// Builds a series known through `trunc`; zero coefficients and
    /// coefficients beyond `trunc` are dropped.
    pub fn new(coeffs: impl IntoIterator<Item = (i64, Rational)>, trunc: Option<i64>) -> Self {
        let mut map: BTreeMap<i64, Rational> = BTreeMap::new();
        for (e, c) in coeffs {
            if trunc.is_some_and(|t| e > t) {
                continue;
            }
            *map.entry(e).or_insert_with(Rational::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        LaurentSeries { coeffs: map, trunc }
    }

    pub fn truncated(coeffs: impl IntoIterator<Item = (i64, Rational)>, trunc: i64) -> Self {
        Self::new(coeffs, Some(trunc))
    }

    pub fn exact(coeffs: impl IntoIterator<Item = (i64, Rational)>) -> Self {
        Self::new(coeffs, None)
    }

    /// `O(t^{trunc+1})`.
    pub fn zero(trunc: i64) -> Self {
        Self::new(std::iter::empty(), Some(trunc))
    }

    pub fn exact_zero() -> Self {
        Self::new(std::iter::empty(), None)
    }

    pub fn constant(c: Rational) -> Self {
        Self::exact([(0, c)])
    }

    pub fn monomial(c: Rational, exponent: i64) -> Self {
        Self::exact([(exponent, c)])
    }

    /// Exact polynomial `sum c_k s^k`, i.e. `sum c_k t^{-k}`.
    pub fn from_s_polynomial(coeffs: &[Rational]) -> Self {
        Self::exact(
            coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| (-(k as i64), c.clone())),
        )
    }

    pub fn trunc(&self) -> Option<i64> {
        self.trunc
    }

    pub fn is_exact(&self) -> bool {
        self.trunc.is_none()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `t^exponent`.
    pub fn coeff(&self, exponent: i64) -> Result<Rational> {
        if let Some(t) = self.trunc {
            if exponent > t {
                return Err(Error::BeyondTruncation { exponent, trunc: t });
            }
        }
        Ok(self.coeffs.get(&exponent).cloned().unwrap_or_else(Rational::zero))
    }

    /// Nonzero coefficients in increasing exponent order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn lowest_exponent(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn highest_exponent(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Lower bound on the order of the series: the lowest nonzero exponent,
    /// or `trunc + 1` for a series that is zero as far as it is known.
    /// `None` means the exact zero.
    fn order_bound(&self) -> Option<i64> {
        match (self.lowest_exponent(), self.trunc) {
            (Some(v), _) => Some(v),
            (None, Some(t)) => Some(t + 1),
            (None, None) => None,
        }
    }

    /// Drops everything above `order`; fails if that would claim knowledge
    /// the series does not have.
    pub fn restrict(&self, order: i64) -> Result<Self> {
        if let Some(t) = self.trunc {
            if order > t {
                return Err(Error::BeyondTruncation { exponent: order, trunc: t });
            }
        }
        Ok(Self::new(
            self.coeffs.iter().map(|(e, c)| (*e, c.clone())),
            Some(order),
        ))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return LaurentSeries { coeffs: BTreeMap::new(), trunc: self.trunc };
        }
        LaurentSeries {
            coeffs: self.coeffs.iter().map(|(e, x)| (*e, x * c)).collect(),
            trunc: self.trunc,
        }
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentSeries {
            coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect(),
            trunc: self.trunc.map(|t| t + k),
        }
    }

    /// True when both series are known through `order` and agree there.
    pub fn agrees_through(&self, other: &Self, order: i64) -> Result<bool> {
        let lo = match (self.lowest_exponent(), other.lowest_exponent()) {
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) | (None, Some(a)) => a,
            (None, None) => order,
        };
        for e in lo.min(order)..=order {
            if self.coeff(e)? != other.coeff(e)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Evaluates the known part at `t = x` (a finite sum; no tail handling).
    pub fn eval_known(&self, x: &Rational) -> Result<Rational> {
        let mut acc = Rational::zero();
        for (e, c) in self.iter() {
            let p = if e < 0 {
                x.recip()?.pow((-e) as i32)
            } else {
                x.pow(e as i32)
            };
            acc += c * &p;
        }
        Ok(acc)
    }

    fn add_impl(&self, other: &Self, negate: bool) -> Self {
        let trunc = min_order(self.trunc, other.trunc);
        let rhs = other.coeffs.iter().map(|(e, c)| (*e, if negate { -c } else { c.clone() }));
        Self::new(
            self.coeffs.iter().map(|(e, c)| (*e, c.clone())).chain(rhs),
            trunc,
        )
    }

    fn mul_impl(&self, other: &Self) -> Self {
        let (va, vb) = (self.order_bound(), other.order_bound());
        if va.is_none() || vb.is_none() {
            return Self::exact_zero();
        }
        let (va, vb) = (va.unwrap(), vb.unwrap());
        let trunc = min_order(self.trunc.map(|t| t + vb), other.trunc.map(|t| t + va));
        let mut pairs: BTreeMap<i64, Vec<(&Rational, &Rational)>> = BTreeMap::new();
        for (ea, ca) in &self.coeffs {
            for (eb, cb) in &other.coeffs {
                let e = ea + eb;
                if trunc.is_some_and(|t| e > t) {
                    break;
                }
                pairs.entry(e).or_default().push((ca, cb));
            }
        }
        Self::new(pairs.into_iter().map(|(e, ps)| (e, dot(ps))), trunc)
    }
}

impl Add for &LaurentSeries {
    type Output = LaurentSeries;
    fn add(self, rhs: &LaurentSeries) -> LaurentSeries {
        self.add_impl(rhs, false)
    }
}

impl Sub for &LaurentSeries {
    type Output = LaurentSeries;
    fn sub(self, rhs: &LaurentSeries) -> LaurentSeries {
        self.add_impl(rhs, true)
    }
}

impl Mul for &LaurentSeries {
    type Output = LaurentSeries;
    fn mul(self, rhs: &LaurentSeries) -> LaurentSeries {
        self.mul_impl(rhs)
    }
}

impl Add for LaurentSeries {
    type Output = LaurentSeries;
    fn add(self, rhs: LaurentSeries) -> LaurentSeries {
        &self + &rhs
    }
}

impl Sub for LaurentSeries {
    type Output = LaurentSeries;
    fn sub(self, rhs: LaurentSeries) -> LaurentSeries {
        &self - &rhs
    }
}

impl Mul for LaurentSeries {
    type Output = LaurentSeries;
    fn mul(self, rhs: LaurentSeries) -> LaurentSeries {
        &self * &rhs
    }
}

impl Neg for &LaurentSeries {
    type Output = LaurentSeries;
    fn neg(self) -> LaurentSeries {
        self.scale(&Rational::from(-1))
    }
}

impl Neg for LaurentSeries {
    type Output = LaurentSeries;
    fn neg(self) -> LaurentSeries {
        -&self
    }
}

/// `e^{c/s} = sum_k c^k t^k / k!` through `t^order`.
pub fn series_exp(c: &Rational, order: i64) -> LaurentSeries {
    let mut coeffs = Vec::new();
    let mut term = Rational::one();
    for k in 0..=order.max(-1) {
        if k > 0 {
            term = &(&term * c) / &Rational::from(k);
        }
        coeffs.push((k, term.clone()));
    }
    LaurentSeries::truncated(coeffs, order)
}

#[derive(Serialize, Deserialize)]
struct SeriesRepr {
    var: String,
    trunc: Option<i64>,
    coeffs: BTreeMap<i64, Rational>,
}

pub(crate) const SERIES_VAR: &str = "1/s";

impl Serialize for LaurentSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        SeriesRepr {
            var: SERIES_VAR.to_string(),
            trunc: self.trunc,
            coeffs: self.coeffs.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LaurentSeries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = SeriesRepr::deserialize(deserializer)?;
        if repr.var != SERIES_VAR {
            return Err(serde::de::Error::custom(format!(
                "expected var \"{SERIES_VAR}\", got {:?}",
                repr.var
            )));
        }
        if let (Some(t), Some(e)) = (repr.trunc, repr.coeffs.keys().next_back()) {
            if *e > t {
                return Err(serde::de::Error::custom(format!(
                    "coefficient at exponent {e} exceeds trunc {t}"
                )));
            }
        }
        Ok(LaurentSeries::new(repr.coeffs, repr.trunc))
    }
}
