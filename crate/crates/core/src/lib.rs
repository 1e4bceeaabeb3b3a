//! Exact arithmetic for continued-fraction error terms.
//!
//! For the Hurwitzian expansions of `e^{1/s}`, `e^{2/s}` and
//! `(s/u) tanh(1/s)` the crate computes convergents and error terms
//! `E_n = p_n - alpha q_n` either as truncated Laurent series in `t = 1/s` or
//! as rigorous rational enclosures, and checks the weighted sums
//! `sum a_{n+1}|E_n| = alpha + 1` and `sum a_{n+1} E_n^2 = alpha` together with
//! the finite factorial and hypergeometric identities they imply.

pub mod catalog;
pub mod cf;
pub mod combinat;
pub mod error;
pub mod error_series;
pub mod hypergeom;
pub mod identities;
pub mod interval;
pub mod rational;
pub mod series;

pub use cf::{CfPattern, Family};
pub use error::{Error, Result};
pub use identities::IdentityReport;
pub use interval::RationalInterval;
pub use rational::Rational;
pub use series::LaurentSeries;
