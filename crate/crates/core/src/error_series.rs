//! Closed-form factorial series for the absolute error terms.
//!
//! Every series lives in `t = 1/s`; powers of 2 coming from `(2/s)^k` are
//! folded into the coefficients. For the tanh family the symbolic factor
//! `(1 - tanh(1/s))/2` or `(1 - tanh(1/s))/u` is *not* multiplied in and is
//! recorded in [`Prefactor`] instead.
//!
//! Each series has the form `sum_{m>=0} c(m) t^{L+m}` where `L` is the
//! lowest exponent. For all three families `c(m+1)/c(m) <= 2/(m+1)`, which
//! gives the geometric tail bound used by [`ErrorSeriesSpec::enclose_at`].

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::cf::Family;
use crate::combinat::factorial;
use crate::error::{Error, Result};
use crate::interval::RationalInterval;
use crate::rational::Rational;
use crate::series::{LaurentSeries, SERIES_VAR};

/// Symbolic factor kept outside the series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Prefactor {
    None,
    /// `(1 - tanh(1/s)) / 2`
    HalfOneMinusTanh,
    /// `(1 - tanh(1/s)) / u`
    OneMinusTanhOverU,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    /// `|D_{2n-1}|`
    Odd,
    /// `|D_{2n}|`
    Even,
}

/// Which closed form: family, group index and case within the period.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ErrorSeriesSpec {
    /// `|E_{3n+case}|` for `e^{1/s}`.
    ExpInvS { n: u64, case: u8 },
    /// `|E_{5n+case}|` for `e^{2/s}`.
    ExpTwoInvS { n: u64, case: u8 },
    /// Series part of `|D_{2n-1}|` (odd) or `|D_{2n}|` (even).
    Tanh { n: u64, parity: Parity },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedErrorSeries {
    pub series: LaurentSeries,
    pub u_exponent: i32,
    pub prefactor: Prefactor,
}

impl ErrorSeriesSpec {
    fn check(&self) -> Result<()> {
        match *self {
            ErrorSeriesSpec::ExpInvS { case, .. } if case > 2 => {
                Err(Error::InvalidArgument(format!("exp-inv-s case {case} not in 0..=2")))
            }
            ErrorSeriesSpec::ExpTwoInvS { case, .. } if case > 4 => {
                Err(Error::InvalidArgument(format!("exp-two-inv-s case {case} not in 0..=4")))
            }
            ErrorSeriesSpec::Tanh { n: 0, parity: Parity::Odd } => {
                Err(Error::InvalidArgument("there is no D_{-1} series".into()))
            }
            _ => Ok(()),
        }
    }

    /// Exponent of `t` carried by the `m = 0` term.
    pub fn lowest_exponent(&self) -> i64 {
        match *self {
            ErrorSeriesSpec::ExpInvS { n, .. } => n as i64 + 1,
            ErrorSeriesSpec::ExpTwoInvS { n, case } => 3 * n as i64 + [1, 2, 3, 3, 3][case as usize],
            ErrorSeriesSpec::Tanh { n, .. } => 2 * n as i64,
        }
    }

    pub fn prefactor(&self) -> Prefactor {
        match *self {
            ErrorSeriesSpec::Tanh { parity: Parity::Odd, .. } => Prefactor::HalfOneMinusTanh,
            ErrorSeriesSpec::Tanh { parity: Parity::Even, .. } => Prefactor::OneMinusTanhOverU,
            _ => Prefactor::None,
        }
    }

    pub fn u_exponent(&self) -> i32 {
        match self.prefactor() {
            Prefactor::OneMinusTanhOverU => -1,
            _ => 0,
        }
    }

    /// Coefficient of `t^{L+m}`.
    pub fn coefficient(&self, m: u64) -> Rational {
        let f = |k: u64| factorial(k);
        let pow2 = |k: u64| BigInt::from(2).pow(k as u32);
        match *self {
            ErrorSeriesSpec::ExpInvS { n, case } => match case {
                0 => Rational::new(f(n + m), f(m) * f(2 * n + m + 1)),
                1 => Rational::new(f(n + 1 + m), f(m) * f(2 * n + m + 2)),
                _ => Rational::new((n + 1) * f(n + m), f(m) * f(2 * n + m + 2)),
            },
            ErrorSeriesSpec::ExpTwoInvS { n, case } => match case {
                0 => Rational::new(pow2(m + 3 * n + 1) * f(m + 3 * n), f(m) * f(m + 6 * n + 1)),
                1 => Rational::new(pow2(m + 3 * n + 1) * f(m + 3 * n + 1), f(m) * f(m + 6 * n + 3)),
                2 => Rational::new(pow2(m + 3 * n + 3) * f(m + 3 * n + 2), f(m) * f(m + 6 * n + 5)),
                3 => Rational::new(pow2(m + 3 * n + 3) * f(m + 3 * n + 3), f(m) * f(m + 6 * n + 6)),
                _ => Rational::new(
                    pow2(m + 3 * n + 3) * (3 * n + 3) * f(m + 3 * n + 2),
                    f(m) * f(m + 6 * n + 6),
                ),
            },
            ErrorSeriesSpec::Tanh { n, parity } => {
                let head = pow2(2 * n) * pow2(m);
                match parity {
                    Parity::Odd => Rational::new(head * f(2 * n + m - 1), f(m) * f(4 * n + m - 1)),
                    Parity::Even => Rational::new(head * f(2 * n + m), f(m) * f(4 * n + m + 1)),
                }
            }
        }
    }

    /// The series through `t^order`.
    pub fn series(&self, order: i64) -> Result<GradedErrorSeries> {
        self.check()?;
        let low = self.lowest_exponent();
        if order < low {
            return Err(Error::InvalidArgument(format!(
                "truncation order {order} below lowest exponent {low}"
            )));
        }
        let coeffs = (0..=(order - low) as u64).map(|m| (low + m as i64, self.coefficient(m)));
        Ok(GradedErrorSeries {
            series: LaurentSeries::truncated(coeffs, order),
            u_exponent: self.u_exponent(),
            prefactor: self.prefactor(),
        })
    }

    /// Enclosure of the series value at `t` (`0 < t <= 1/2`) from the first
    /// `terms` terms plus the tail bound `c(M) t^{L+M} / (1 - 2t/(M+1))`.
    pub fn enclose_at(&self, t: &Rational, terms: u64) -> Result<RationalInterval> {
        self.check()?;
        if !t.is_positive() || t > &Rational::new(1, 2) {
            return Err(Error::InvalidArgument(format!("t = {t} outside (0, 1/2]")));
        }
        if terms < 2 {
            return Err(Error::InvalidArgument("need at least two terms".into()));
        }
        let low = self.lowest_exponent();
        let tpow = |k: i64| t.pow(k as i32);
        let partial: Rational = (0..terms)
            .map(|m| &self.coefficient(m) * &tpow(low + m as i64))
            .sum();
        let first_omitted = &self.coefficient(terms) * &tpow(low + terms as i64);
        let ratio = &(t * &Rational::from(2)) / &Rational::from(terms + 1);
        let tail = &first_omitted / &(Rational::one() - ratio);
        RationalInterval::new(partial.clone(), &partial + &tail)
    }
}

/// `|E_{3n+case}|` for `e^{1/s}`.
pub fn e_abs_error_series(n: u64, case: u8, order: i64) -> Result<GradedErrorSeries> {
    ErrorSeriesSpec::ExpInvS { n, case }.series(order)
}

/// `|E_{5n+case}|` for `e^{2/s}`.
pub fn e2s_abs_error_series(n: u64, case: u8, order: i64) -> Result<GradedErrorSeries> {
    ErrorSeriesSpec::ExpTwoInvS { n, case }.series(order)
}

/// Series part of `|D_{2n-1}|` / `|D_{2n}|` for `n >= 1`.
pub fn d_abs_error_series(n: u64, parity: Parity, order: i64) -> Result<GradedErrorSeries> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "tanh error series are defined for n >= 1".into(),
        ));
    }
    ErrorSeriesSpec::Tanh { n, parity }.series(order)
}

/// Maps a flat index onto the closed form that covers it.
pub fn flat_spec(family: Family, n_flat: u64) -> Result<ErrorSeriesSpec> {
    Ok(match family {
        Family::ExpInvS => ErrorSeriesSpec::ExpInvS { n: n_flat / 3, case: (n_flat % 3) as u8 },
        Family::ExpTwoInvS => ErrorSeriesSpec::ExpTwoInvS { n: n_flat / 5, case: (n_flat % 5) as u8 },
        Family::TanhUV => {
            if n_flat == 0 {
                return Err(Error::InvalidArgument(
                    "D_0 = -alpha has no factorial series".into(),
                ));
            }
            let n = n_flat.div_ceil(2);
            let parity = if n_flat % 2 == 1 { Parity::Odd } else { Parity::Even };
            ErrorSeriesSpec::Tanh { n, parity }
        }
    })
}

/// `|E_n|` (or the series part of `|D_n|`) by flat index.
pub fn flat_abs_error(family: Family, n_flat: u64, order: i64) -> Result<GradedErrorSeries> {
    flat_spec(family, n_flat)?.series(order)
}

#[derive(Serialize)]
struct GradedRepr<'a> {
    var: &'a str,
    trunc: Option<i64>,
    coeffs: std::collections::BTreeMap<i64, &'a Rational>,
    u_exp: i32,
    prefactor: Prefactor,
}

impl Serialize for GradedErrorSeries {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        GradedRepr {
            var: SERIES_VAR,
            trunc: self.series.trunc(),
            coeffs: self.series.iter().collect(),
            u_exp: self.u_exponent,
            prefactor: self.prefactor,
        }
        .serialize(serializer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cf::{error_term, CfPattern, ErrorMode, ErrorValue};
    use proptest::prelude::*;

    fn q(p: i64, d: i64) -> Rational {
        Rational::new(p, d)
    }

    #[test]
    fn exp_inv_s_values() {
        let s = e_abs_error_series(0, 0, 4).unwrap();
        let expect = LaurentSeries::truncated(
            [(1, 1), (2, 2), (3, 6), (4, 24)].map(|(e, d)| (e, q(1, d))),
            4,
        );
        assert_eq!(s.series, expect);
        assert_eq!(s.prefactor, Prefactor::None);
        assert_eq!(s.u_exponent, 0);

        assert_eq!(e_abs_error_series(1, 0, 2).unwrap().series.coeff(2).unwrap(), q(1, 6));
        assert_eq!(e_abs_error_series(0, 2, 2).unwrap().series.coeff(1).unwrap(), q(1, 2));
        assert!(e_abs_error_series(3, 0, 3).is_err());
        assert!(e_abs_error_series(0, 3, 3).is_err());
    }

    #[test]
    fn exp_two_inv_s_values() {
        let s = e2s_abs_error_series(0, 0, 2).unwrap().series;
        assert_eq!(s, LaurentSeries::truncated([(1, q(2, 1)), (2, q(2, 1))], 2));
        assert_eq!(e2s_abs_error_series(0, 1, 2).unwrap().series.coeff(2).unwrap(), q(1, 3));
        // leading coefficients of |E_3| and |E_4|, read off p_n - e^{2/s} q_n
        assert_eq!(e2s_abs_error_series(0, 3, 3).unwrap().series.coeff(3).unwrap(), q(1, 15));
        assert_eq!(e2s_abs_error_series(0, 4, 4).unwrap().series.coeff(4).unwrap(), q(2, 35));
        assert!(e2s_abs_error_series(1, 2, 5).is_err());
    }

    #[test]
    fn tanh_values() {
        let odd = d_abs_error_series(1, Parity::Odd, 2).unwrap();
        assert_eq!(odd.series.coeff(2).unwrap(), q(2, 3));
        assert_eq!(odd.prefactor, Prefactor::HalfOneMinusTanh);
        assert_eq!(odd.u_exponent, 0);
        let even = d_abs_error_series(1, Parity::Even, 2).unwrap();
        assert_eq!(even.series.coeff(2).unwrap(), q(1, 15));
        assert_eq!(even.prefactor, Prefactor::OneMinusTanhOverU);
        assert_eq!(even.u_exponent, -1);
        assert!(d_abs_error_series(0, Parity::Even, 4).is_err());
    }

    #[test]
    fn flat_index_mapping() {
        assert_eq!(flat_spec(Family::ExpInvS, 7).unwrap(), ErrorSeriesSpec::ExpInvS { n: 2, case: 1 });
        assert_eq!(
            flat_spec(Family::ExpTwoInvS, 13).unwrap(),
            ErrorSeriesSpec::ExpTwoInvS { n: 2, case: 3 }
        );
        assert_eq!(
            flat_spec(Family::TanhUV, 3).unwrap(),
            ErrorSeriesSpec::Tanh { n: 2, parity: Parity::Odd }
        );
        assert_eq!(
            flat_spec(Family::TanhUV, 4).unwrap(),
            ErrorSeriesSpec::Tanh { n: 2, parity: Parity::Even }
        );
        assert!(flat_spec(Family::TanhUV, 0).is_err());
    }

    #[test]
    fn graded_json() {
        let g = d_abs_error_series(1, Parity::Even, 3).unwrap();
        let v: serde_json::Value = serde_json::to_value(&g).unwrap();
        assert_eq!(v["var"], "1/s");
        assert_eq!(v["trunc"], 3);
        assert_eq!(v["u_exp"], -1);
        assert_eq!(v["prefactor"], "one_minus_tanh_over_u");
        assert_eq!(v["coeffs"]["2"], "1/15");
    }

    fn all_specs(max_n: u64) -> Vec<ErrorSeriesSpec> {
        let mut v = Vec::new();
        for n in 0..=max_n {
            for case in 0..3 {
                v.push(ErrorSeriesSpec::ExpInvS { n, case });
            }
            for case in 0..5 {
                v.push(ErrorSeriesSpec::ExpTwoInvS { n, case });
            }
            if n >= 1 {
                v.push(ErrorSeriesSpec::Tanh { n, parity: Parity::Odd });
                v.push(ErrorSeriesSpec::Tanh { n, parity: Parity::Even });
            }
        }
        v
    }

    #[test]
    fn coefficients_positive_and_lowest_exponent_matches() {
        for spec in all_specs(4) {
            let low = spec.lowest_exponent();
            let g = spec.series(low + 6).unwrap();
            assert_eq!(g.series.lowest_exponent(), Some(low), "{spec:?}");
            assert!(g.series.iter().all(|(_, c)| c.is_positive()), "{spec:?}");
            assert_eq!(g.series.iter().count(), 7);
        }
    }

    #[test]
    fn ratio_bound_and_doubling_tail() {
        for spec in all_specs(6) {
            for m in 0..40u64 {
                let ratio = spec.coefficient(m + 1) / spec.coefficient(m);
                assert!(ratio <= q(2, m as i64 + 1), "{spec:?} m = {m}");
            }
            // once 2t/(M+1) <= 1/2 the tail is at most twice the first omitted term
            let t = q(1, 2);
            let low = spec.lowest_exponent().max(1);
            for terms in (4 * low as u64)..(4 * low as u64 + 5) {
                let rho = &(&t * &q(2, 1)) / &Rational::from(terms + 1);
                assert!((Rational::one() - rho).recip().unwrap() <= q(2, 1));
            }
        }
    }

    #[test]
    fn enclosures_match_numeric_convergent_errors() {
        // |E_n| of e^{1/2} and e^{2/3}: closed-form enclosure against p_n - alpha q_n
        let eps = Rational::new(1, 10).pow(40);
        for (pattern, family, t) in [
            (CfPattern::exp_inv_s(2).unwrap(), Family::ExpInvS, q(1, 2)),
            (CfPattern::exp_two_inv_s(5).unwrap(), Family::ExpTwoInvS, q(1, 5)),
        ] {
            for n in 0..12u64 {
                let spec = flat_spec(family, n).unwrap();
                // (2/s)-powers are folded in, so evaluating at t = 1/s is right
                let closed = spec.enclose_at(&t, 40).unwrap();
                let e = error_term(&pattern, n as i64, &ErrorMode::Numeric { eps: eps.clone() }).unwrap();
                let ErrorValue::Interval(abs) = e.abs_value() else { unreachable!() };
                assert!(closed.overlaps(&abs), "{family} n = {n}: {closed} vs {abs}");
            }
        }
    }

    proptest! {
        #[test]
        fn flat_series_agree_with_grouped(n in 0u64..30) {
            let spec = flat_spec(Family::ExpTwoInvS, n).unwrap();
            let low = spec.lowest_exponent();
            let flat = flat_abs_error(Family::ExpTwoInvS, n, low + 3).unwrap();
            let grouped = e2s_abs_error_series(n / 5, (n % 5) as u8, low + 3).unwrap();
            prop_assert_eq!(flat, grouped);
        }
    }
}
