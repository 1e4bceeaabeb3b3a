//! Weighted error-sum assemblies and the finite identities obtained by
//! comparing coefficients of `s^{-k}`.
//!
//! Every check is an exact rational comparison; there are no tolerances in
//! this module.

pub mod e2s;
pub mod linear_exp;
pub mod numeric;
pub mod quadratic_exp;
pub mod tanh;

use serde::{Deserialize, Serialize};

use crate::cf::Family;
use crate::rational::Rational;
use crate::series::LaurentSeries;

/// Outcome of one identity at one parameter value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    #[serde(rename = "id")]
    pub identity_id: String,
    #[serde(rename = "k")]
    pub instance: i64,
    pub lhs: Rational,
    pub rhs: Rational,
    pub pass: bool,
    #[serde(rename = "terms")]
    pub terms_evaluated: u64,
}

impl IdentityReport {
    pub fn new(id: impl Into<String>, instance: i64, lhs: Rational, rhs: Rational, terms: u64) -> Self {
        let pass = lhs == rhs;
        IdentityReport {
            identity_id: id.into(),
            instance,
            lhs,
            rhs,
            pass,
            terms_evaluated: terms,
        }
    }
}

/// A weighted error sum expanded through `t^trunc`, next to the series it
/// should equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedSumAssembly {
    pub family: Family,
    pub trunc: i64,
    pub assembled: LaurentSeries,
    pub target: LaurentSeries,
    /// Largest group index included; every later group starts above `trunc`.
    pub max_group_index: u64,
}

impl WeightedSumAssembly {
    pub fn matches(&self) -> bool {
        self.assembled == self.target
    }

    /// Report comparing the `t^trunc` coefficients; passes only when the
    /// whole window agrees.
    pub fn report(&self, id: &str) -> IdentityReport {
        let lhs = self.assembled.coeff(self.trunc).expect("assembled through trunc");
        let rhs = self.target.coeff(self.trunc).expect("target through trunc");
        let mut r = IdentityReport::new(id, self.trunc, lhs, rhs, self.max_group_index + 1);
        r.pass = r.pass && self.matches();
        r
    }
}

/// Sum of `|x_i - y_i|` over paired terms; zero iff every pair agrees.
pub(crate) fn termwise_gap(pairs: impl IntoIterator<Item = (Rational, Rational)>) -> (Rational, u64) {
    let mut gap = Rational::zero();
    let mut n = 0;
    for (x, y) in pairs {
        gap += (&x - &y).abs();
        n += 1;
    }
    (gap, n)
}
