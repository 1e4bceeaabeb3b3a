//! Hurwitzian continued fractions: partial quotients, convergents and
//! error terms `E_n = p_n - alpha q_n`.
//!
//! Three families are supported:
//!
//! * `e^{1/s} = [1; (2k-1)s-1, 1, 1]_{k>=1}`
//! * `e^{2/s} = [1; ((6k-5)s-1)/2, (12k-6)s, ((6k-1)s-1)/2, 1, 1]_{k>=1}` for odd `s >= 3`
//! * `(s/u) tanh(1/s) = [0; (4k-3)u, (4k-1)v]_{k>=1}` with `s^2 = uv`
//!
//! The exponential families can be run with a concrete integer `s` or with
//! `s` left symbolic, in which case `p_n`, `q_n` are polynomials in `s` and
//! `E_n` is a truncated Laurent series in `t = 1/s`.

use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::{enclose_exp, enclose_tanh_inv_s, RationalInterval};
use crate::rational::Rational;
use crate::series::{series_exp, LaurentSeries};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    ExpInvS,
    ExpTwoInvS,
    TanhUV,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::ExpInvS => "exp-inv-s",
            Family::ExpTwoInvS => "exp-two-inv-s",
            Family::TanhUV => "tanh-uv",
        })
    }
}

/// Value of the parameter `s` of the exponential families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SValue {
    Numeric(u64),
    Symbolic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CfPattern {
    ExpInvS(SValue),
    ExpTwoInvS(SValue),
    TanhUV { u: u64, v: u64 },
}

impl CfPattern {
    pub fn exp_inv_s(s: u64) -> Result<Self> {
        let p = CfPattern::ExpInvS(SValue::Numeric(s));
        p.validate()?;
        Ok(p)
    }

    pub fn exp_two_inv_s(s: u64) -> Result<Self> {
        let p = CfPattern::ExpTwoInvS(SValue::Numeric(s));
        p.validate()?;
        Ok(p)
    }

    pub fn tanh_uv(u: u64, v: u64) -> Result<Self> {
        let p = CfPattern::TanhUV { u, v };
        p.validate()?;
        Ok(p)
    }

    pub fn symbolic(family: Family) -> Result<Self> {
        match family {
            Family::ExpInvS => Ok(CfPattern::ExpInvS(SValue::Symbolic)),
            Family::ExpTwoInvS => Ok(CfPattern::ExpTwoInvS(SValue::Symbolic)),
            Family::TanhUV => Err(Error::Unsupported(
                "tanh-uv has no single-variable symbolic form".into(),
            )),
        }
    }

    pub fn family(&self) -> Family {
        match self {
            CfPattern::ExpInvS(_) => Family::ExpInvS,
            CfPattern::ExpTwoInvS(_) => Family::ExpTwoInvS,
            CfPattern::TanhUV { .. } => Family::TanhUV,
        }
    }

    pub fn is_symbolic(&self) -> bool {
        matches!(
            self,
            CfPattern::ExpInvS(SValue::Symbolic) | CfPattern::ExpTwoInvS(SValue::Symbolic)
        )
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            CfPattern::ExpInvS(SValue::Numeric(s)) if s < 2 => Err(Error::InvalidPattern(
                format!("exp-inv-s needs s >= 2 (s = {s} gives a zero partial quotient)"),
            )),
            CfPattern::ExpTwoInvS(SValue::Numeric(s)) if s < 3 || s % 2 == 0 => Err(
                Error::InvalidPattern(format!("exp-two-inv-s needs odd s >= 3, got {s}")),
            ),
            CfPattern::TanhUV { u, v } if u == 0 || v == 0 => Err(Error::InvalidPattern(
                format!("tanh-uv needs u, v >= 1, got u = {u}, v = {v}"),
            )),
            _ => Ok(()),
        }
    }

    /// `s = sqrt(uv)` for the tanh family, or `s` itself for numeric
    /// exponential patterns.
    pub fn numeric_s(&self) -> Result<u64> {
        self.validate()?;
        match *self {
            CfPattern::ExpInvS(SValue::Numeric(s)) | CfPattern::ExpTwoInvS(SValue::Numeric(s)) => {
                Ok(s)
            }
            CfPattern::TanhUV { u, v } => {
                let uv = u as u128 * v as u128;
                let s = uv.sqrt();
                if s * s != uv {
                    return Err(Error::InvalidPattern(format!(
                        "tanh-uv numeric mode needs uv to be a perfect square, got {uv}"
                    )));
                }
                u64::try_from(s).map_err(|_| Error::InvalidPattern("s out of range".into()))
            }
            _ => Err(Error::Unsupported("pattern has symbolic s".into())),
        }
    }

    /// `a_n = s_coeff * s + constant`.
    fn quotient_form(&self, n: u64) -> (Rational, Rational) {
        let q = |a: i64, b: i64| Rational::new(a, b);
        let zero = Rational::zero();
        match *self {
            CfPattern::ExpInvS(_) => {
                if n == 0 {
                    return (zero, Rational::one());
                }
                let k = ((n - 1) / 3 + 1) as i64;
                match (n - 1) % 3 {
                    0 => (Rational::from(2 * k - 1), Rational::from(-1)),
                    _ => (zero, Rational::one()),
                }
            }
            CfPattern::ExpTwoInvS(_) => {
                if n == 0 {
                    return (zero, Rational::one());
                }
                let k = ((n - 1) / 5 + 1) as i64;
                match (n - 1) % 5 {
                    0 => (q(6 * k - 5, 2), q(-1, 2)),
                    1 => (Rational::from(12 * k - 6), zero),
                    2 => (q(6 * k - 1, 2), q(-1, 2)),
                    _ => (zero, Rational::one()),
                }
            }
            CfPattern::TanhUV { u, v } => {
                if n == 0 {
                    return (zero.clone(), zero);
                }
                let k = n.div_ceil(2);
                let c = if n % 2 == 1 {
                    BigInt::from(4 * k - 3) * u
                } else {
                    BigInt::from(4 * k - 1) * v
                };
                (zero, Rational::from(c))
            }
        }
    }
}

/// A partial quotient or convergent entry: an integer when `s` is known,
/// a polynomial in `s` otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingElem {
    Int(BigInt),
    Poly(SPoly),
}

/// Dense polynomial in `s` with rational coefficients; index = power of `s`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SPoly {
    coeffs: Vec<Rational>,
}

impl SPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        SPoly { coeffs }
    }

    pub fn constant(c: Rational) -> Self {
        SPoly::new(vec![c])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, s: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| &(&acc * s) + c)
    }

    /// The same polynomial written in `t = 1/s`.
    pub fn to_laurent(&self) -> LaurentSeries {
        LaurentSeries::from_s_polynomial(&self.coeffs)
    }
}

impl Add for &SPoly {
    type Output = SPoly;
    fn add(self, rhs: &SPoly) -> SPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = Rational::zero();
        SPoly::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + rhs.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl Mul for &SPoly {
    type Output = SPoly;
    fn mul(self, rhs: &SPoly) -> SPoly {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return SPoly::default();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        SPoly::new(out)
    }
}

impl Serialize for SPoly {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            deg_coeffs: &'a [Rational],
        }
        Repr { deg_coeffs: &self.coeffs }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SPoly {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            deg_coeffs: Vec<Rational>,
        }
        Ok(SPoly::new(Repr::deserialize(deserializer)?.deg_coeffs))
    }
}

/// Ring over which the convergent recurrence runs.
pub trait CfRing: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn mul_add(a: &Self, x: &Self, y: &Self) -> Self;
}

impl CfRing for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn mul_add(a: &Self, x: &Self, y: &Self) -> Self {
        a * x + y
    }
}

impl CfRing for SPoly {
    fn zero() -> Self {
        SPoly::default()
    }
    fn one() -> Self {
        SPoly::constant(Rational::one())
    }
    fn mul_add(a: &Self, x: &Self, y: &Self) -> Self {
        &(a * x) + y
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Convergent<R> {
    pub n: i64,
    pub p: R,
    pub q: R,
}

/// `p_n`, `q_n` for `n = -1 ..= last` from partial quotients `a_0, a_1, ...`.
pub fn run_recurrence<R: CfRing>(quotients: impl IntoIterator<Item = R>) -> Vec<Convergent<R>> {
    let mut out = vec![Convergent { n: -1, p: R::one(), q: R::zero() }];
    let (mut p2, mut q2) = (R::zero(), R::one()); // p_{-2}, q_{-2}
    for (i, a) in quotients.into_iter().enumerate() {
        let prev = out.last().unwrap();
        let p = R::mul_add(&a, &prev.p, &p2);
        let q = R::mul_add(&a, &prev.q, &q2);
        p2 = prev.p.clone();
        q2 = prev.q.clone();
        out.push(Convergent { n: i as i64, p, q });
    }
    out
}

/// The partial quotient `a_n` (`n = 0` gives `a_0`).
pub fn partial_quotient(pattern: &CfPattern, n: u64) -> Result<RingElem> {
    pattern.validate()?;
    let (sc, c0) = pattern.quotient_form(n);
    Ok(match pattern {
        CfPattern::ExpInvS(SValue::Symbolic) | CfPattern::ExpTwoInvS(SValue::Symbolic) => {
            RingElem::Poly(SPoly::new(vec![c0, sc]))
        }
        _ => {
            let s = Rational::from(pattern.numeric_s_or_one());
            let v = &(&sc * &s) + &c0;
            debug_assert!(v.is_integer());
            RingElem::Int(v.numer().clone())
        }
    })
}

impl CfPattern {
    // For tanh-uv the form has no s term, so any s works.
    fn numeric_s_or_one(&self) -> u64 {
        match *self {
            CfPattern::ExpInvS(SValue::Numeric(s)) | CfPattern::ExpTwoInvS(SValue::Numeric(s)) => s,
            _ => 1,
        }
    }
}

pub fn partial_quotient_int(pattern: &CfPattern, n: u64) -> Result<BigInt> {
    match partial_quotient(pattern, n)? {
        RingElem::Int(a) => Ok(a),
        RingElem::Poly(_) => Err(Error::Unsupported("pattern has symbolic s".into())),
    }
}

pub fn partial_quotient_poly(pattern: &CfPattern, n: u64) -> Result<SPoly> {
    match partial_quotient(pattern, n)? {
        RingElem::Poly(a) => Ok(a),
        RingElem::Int(a) => Ok(SPoly::constant(Rational::from(a))),
    }
}

/// Integer convergents for `n = -1 ..= last`.
pub fn convergents_numeric(pattern: &CfPattern, last: u64) -> Result<Vec<Convergent<BigInt>>> {
    if pattern.is_symbolic() {
        return Err(Error::Unsupported("pattern has symbolic s".into()));
    }
    let qs = (0..=last)
        .map(|n| partial_quotient_int(pattern, n))
        .collect::<Result<Vec<_>>>()?;
    Ok(run_recurrence(qs))
}

/// Convergents as polynomials in `s` for `n = -1 ..= last`.
pub fn convergents_symbolic(pattern: &CfPattern, last: u64) -> Result<Vec<Convergent<SPoly>>> {
    let qs = (0..=last)
        .map(|n| partial_quotient_poly(pattern, n))
        .collect::<Result<Vec<_>>>()?;
    Ok(run_recurrence(qs))
}

/// `alpha` as a series in `t = 1/s`, known through `t^order`.
pub fn alpha_series(pattern: &CfPattern, order: i64) -> Result<LaurentSeries> {
    match pattern.family() {
        Family::ExpInvS => Ok(series_exp(&Rational::one(), order)),
        Family::ExpTwoInvS => Ok(series_exp(&Rational::from(2), order)),
        Family::TanhUV => Err(Error::Unsupported(
            "tanh-uv alpha has no single-variable series".into(),
        )),
    }
}

/// Enclosure of `alpha` of width at most `eps` for a numeric pattern.
pub fn alpha_enclosure(pattern: &CfPattern, eps: &Rational) -> Result<RationalInterval> {
    let s = pattern.numeric_s()?;
    match *pattern {
        CfPattern::ExpInvS(_) => enclose_exp(&Rational::new(1, s), eps),
        CfPattern::ExpTwoInvS(_) => enclose_exp(&Rational::new(2, s), eps),
        CfPattern::TanhUV { u, .. } => {
            let factor = Rational::new(s, u);
            let inner = enclose_tanh_inv_s(s, &(eps / &factor))?;
            Ok(inner.scale(&factor))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ErrorMode {
    /// Laurent series valid through `t^order`.
    Symbolic { order: i64 },
    /// Enclosure with `alpha` computed to width `eps`.
    Numeric { eps: Rational },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ErrorValue {
    Series(LaurentSeries),
    Interval(RationalInterval),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ErrorTerm {
    pub n: i64,
    pub value: ErrorValue,
    /// Sign of `E_n`, +1 or -1.
    pub sign: i8,
}

impl ErrorTerm {
    /// `|E_n|` in the same representation.
    pub fn abs_value(&self) -> ErrorValue {
        match &self.value {
            ErrorValue::Series(s) if self.sign < 0 => ErrorValue::Series(-s),
            ErrorValue::Series(s) => ErrorValue::Series(s.clone()),
            ErrorValue::Interval(i) => ErrorValue::Interval(i.abs()),
        }
    }

    pub fn series(&self) -> Option<&LaurentSeries> {
        match &self.value {
            ErrorValue::Series(s) => Some(s),
            ErrorValue::Interval(_) => None,
        }
    }

    pub fn interval(&self) -> Option<&RationalInterval> {
        match &self.value {
            ErrorValue::Interval(i) => Some(i),
            ErrorValue::Series(_) => None,
        }
    }
}

/// Sign of `E_n` for a simple continued fraction of a non-integer.
pub fn expected_sign(n: i64) -> i8 {
    if n.rem_euclid(2) == 1 {
        1
    } else {
        -1
    }
}

/// `E_n = p_n - alpha q_n` for `n >= -1`.
pub fn error_term(pattern: &CfPattern, n: i64, mode: &ErrorMode) -> Result<ErrorTerm> {
    pattern.validate()?;
    if n < -1 {
        return Err(Error::InvalidArgument(format!("error term index {n} < -1")));
    }
    match mode {
        ErrorMode::Symbolic { order } => {
            if !pattern.is_symbolic() {
                return Err(Error::Unsupported(
                    "symbolic error terms need an exponential pattern with symbolic s".into(),
                ));
            }
            if n == -1 {
                return Ok(ErrorTerm {
                    n,
                    value: ErrorValue::Series(LaurentSeries::constant(Rational::one())),
                    sign: 1,
                });
            }
            let conv = convergents_symbolic(pattern, n as u64)?;
            let last = conv.last().unwrap();
            let deg = last.q.degree().unwrap_or(0) as i64;
            let alpha = alpha_series(pattern, order + deg)?;
            let e = &last.p.to_laurent() - &(&alpha * &last.q.to_laurent());
            let e = e.restrict(*order)?;
            let sign = match e.iter().next() {
                Some((_, c)) if c.is_negative() => -1,
                Some(_) => 1,
                None => expected_sign(n),
            };
            Ok(ErrorTerm { n, value: ErrorValue::Series(e), sign })
        }
        ErrorMode::Numeric { eps } => {
            if n == -1 {
                return Ok(ErrorTerm {
                    n,
                    value: ErrorValue::Interval(RationalInterval::point(Rational::one())),
                    sign: 1,
                });
            }
            let alpha = alpha_enclosure(pattern, eps)?;
            let conv = convergents_numeric(pattern, n as u64)?;
            let last = conv.last().unwrap();
            Ok(numeric_error(&alpha, last))
        }
    }
}

/// `E_n` enclosure from an `alpha` enclosure and a convergent.
pub(crate) fn numeric_error(alpha: &RationalInterval, c: &Convergent<BigInt>) -> ErrorTerm {
    let p = RationalInterval::point(Rational::from(&c.p));
    let value = &p - &alpha.scale(&Rational::from(&c.q));
    let sign = if value.lo().is_positive() {
        1
    } else if value.hi().is_negative() {
        -1
    } else {
        expected_sign(c.n)
    };
    ErrorTerm { n: c.n, value: ErrorValue::Interval(value), sign }
}
