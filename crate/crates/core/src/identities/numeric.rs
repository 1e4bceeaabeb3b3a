//! Recovering `alpha` numerically from `sum a_{n+1}|E_n|` and
//! `sum a_{n+1} E_n^2`.

use serde::{Deserialize, Serialize};

use crate::cf::{alpha_enclosure, convergents_numeric, numeric_error, partial_quotient_int, CfPattern};
use crate::error::{Error, Result};
use crate::interval::RationalInterval;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartialSumResidual {
    pub n: i64,
    /// Encloses `|sum_{m=-1}^{n} a_{m+1}|E_m|^power - target|`.
    pub residual: RationalInterval,
}

/// Residuals of the partial sums for `n = -1..=last`, with target `alpha + 1`
/// (power 1) or `alpha` (power 2). Fails with [`Error::WidthDominates`] when
/// an upper bound goes up somewhere from `n = 2` on, which means `eps` is too
/// coarse for the requested depth.
pub fn numeric_partial_sums(
    pattern: &CfPattern,
    last: u64,
    power: u8,
    eps: &Rational,
) -> Result<Vec<PartialSumResidual>> {
    if power != 1 && power != 2 {
        return Err(Error::InvalidArgument(format!("power must be 1 or 2, got {power}")));
    }
    let alpha = alpha_enclosure(pattern, eps)?;
    let target = if power == 1 {
        &alpha + &RationalInterval::point(Rational::one())
    } else {
        alpha.clone()
    };
    let convergents = convergents_numeric(pattern, last)?;

    // n = -1: a_0 |E_{-1}|^power = a_0
    let a0 = Rational::from(partial_quotient_int(pattern, 0)?);
    let mut sum = RationalInterval::point(a0);
    let mut out = vec![PartialSumResidual { n: -1, residual: (&sum - &target).abs() }];
    for c in convergents.iter().skip(1) {
        let e = numeric_error(&alpha, c).interval().expect("numeric error terms are intervals").abs();
        let e = if power == 2 { e.square() } else { e };
        let weight = Rational::from(partial_quotient_int(pattern, c.n as u64 + 1)?);
        sum = &sum + &e.scale(&weight);
        out.push(PartialSumResidual { n: c.n, residual: (&sum - &target).abs() });
    }
    for w in out.windows(2) {
        if w[1].n >= 2 && w[1].residual.hi() > w[0].residual.hi() {
            return Err(Error::WidthDominates { n: w[1].n });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pow10(k: u32) -> Rational {
        Rational::from(num_bigint::BigInt::from(10).pow(k))
    }

    #[test]
    fn first_partial_sum() {
        let p = CfPattern::exp_inv_s(2).unwrap();
        let eps = pow10(30).recip().unwrap();
        let r = numeric_partial_sums(&p, 0, 1, &eps).unwrap();
        assert_eq!(r.len(), 2);
        let last = &r[1].residual;
        assert!(last.contains(&Rational::one()));
        assert!(last.width() <= &eps * &Rational::from(4));
    }

    #[test]
    fn decay_quadratic_and_tanh() {
        let eps = pow10(80).recip().unwrap();
        let tiny = pow10(15).recip().unwrap();
        let p = CfPattern::exp_inv_s(2).unwrap();
        let r = numeric_partial_sums(&p, 20, 2, &eps).unwrap();
        assert!(r.last().unwrap().residual.hi() < &tiny);
        let t = CfPattern::tanh_uv(1, 4).unwrap();
        for power in [1, 2] {
            let r = numeric_partial_sums(&t, 20, power, &eps).unwrap();
            assert!(r.last().unwrap().residual.hi() < &tiny);
        }
    }

    #[test]
    fn coarse_eps_is_reported() {
        let p = CfPattern::exp_inv_s(2).unwrap();
        let eps = pow10(4).recip().unwrap();
        assert!(matches!(numeric_partial_sums(&p, 30, 2, &eps), Err(Error::WidthDominates { .. })));
        assert!(numeric_partial_sums(&p, 3, 3, &eps).is_err());
        assert!(numeric_partial_sums(&CfPattern::symbolic(crate::cf::Family::ExpInvS).unwrap(), 3, 1, &eps).is_err());
    }
}
