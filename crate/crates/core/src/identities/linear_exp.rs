//! The linear error sum for `e^{1/s}`: `sum a_{n+1}|E_n| = e^{1/s} + 1`.

use num_bigint::BigInt;

use crate::cf::Family;
use crate::combinat::FactorialTable;
use crate::error_series::e_abs_error_series;
use crate::identities::{termwise_gap, IdentityReport, WeightedSumAssembly};
use crate::rational::Rational;
use crate::series::{series_exp, LaurentSeries};

/// `S_k = sum_{n=0}^k (2n+1) k!/((k-n)!(n+k+1)!)`.
pub fn s_k(k: u64) -> Rational {
    let f = FactorialTable::up_to(2 * k as usize + 1);
    s_k_with(&f, k as i64)
}

pub(crate) fn s_k_with(f: &FactorialTable, k: i64) -> Rational {
    (0..=k)
        .map(|n| Rational::from(2 * n + 1) * f.ratio(&[k], &[k - n, n + k + 1]))
        .sum()
}

/// `sum_{n=0}^k (2n+1) C(2k+1, k-n) = (2k+1) C(2k, k)`.
pub fn binomial_form_check(k: u64) -> IdentityReport {
    let f = FactorialTable::up_to(2 * k as usize + 1);
    let ki = k as i64;
    let lhs: BigInt = (0..=ki)
        .map(|n| BigInt::from(2 * n + 1) * f.binomial(2 * ki + 1, ki - n))
        .sum();
    let rhs = BigInt::from(2 * k + 1) * f.binomial(2 * ki, ki);
    IdentityReport::new("cor1.binomial", k as i64, lhs.into(), rhs.into(), k + 1)
}

/// The two-line coefficient of `s^{-k}` in `sum a_{n+1}|E_n|`, against `1/k!`.
pub fn coeff_linear_exp(k: u64) -> IdentityReport {
    let f = FactorialTable::up_to(2 * k as usize + 1);
    let k = k as i64;
    let (second, _) = second_line_terms(&f, k);
    let second: Rational = second.into_iter().sum();
    let lhs = &s_k_with(&f, k) + &second;
    let rhs = f.ratio(&[], &[k]);
    IdentityReport::new("cor1.coeff", k, lhs, rhs, 2 * k as u64 + 1)
}

/// Brackets `-(k-1)!/((k-1-n)!(n+k)!) + k!/((k-1-n)!(n+k+1)!) + (n+1)(k-1)!/((k-1-n)!(n+k+1)!)`
/// for `n = 0..k-1`, and how many there are.
fn second_line_terms(f: &FactorialTable, k: i64) -> (Vec<Rational>, u64) {
    let terms: Vec<Rational> = (0..k)
        .map(|n| {
            let a = f.ratio(&[k - 1], &[k - 1 - n, n + k]);
            let b = f.ratio(&[k], &[k - 1 - n, n + k + 1]);
            let c = Rational::from(n + 1) * f.ratio(&[k - 1], &[k - 1 - n, n + k + 1]);
            &(&b + &c) - &a
        })
        .collect();
    let len = terms.len() as u64;
    (terms, len)
}

/// Each bracket of the second line vanishes on its own.
pub fn second_line_vanishes(k: u64) -> IdentityReport {
    let f = FactorialTable::up_to(2 * k as usize + 1);
    let (terms, len) = second_line_terms(&f, k as i64);
    let (gap, _) = termwise_gap(terms.into_iter().map(|x| (x, Rational::zero())));
    IdentityReport::new("cor1.second-line", k as i64, gap, Rational::zero(), len)
}

/// Reports for `S_k = 1/k!` at one `k`.
pub fn cor1_reports(k: u64) -> Vec<IdentityReport> {
    let f = FactorialTable::up_to(2 * k as usize + 1);
    let sk = s_k_with(&f, k as i64);
    vec![
        IdentityReport::new("cor1.factorial", k as i64, sk, f.ratio(&[], &[k as i64]), k + 1),
        binomial_form_check(k),
        coeff_linear_exp(k),
        second_line_vanishes(k),
    ]
}

/// The sub-checks of [`cor1_reports`] folded into one report `cor1`
/// carrying `S_k` and `1/k!`; it passes only if every sub-check does.
pub fn cor1_summary(k: u64) -> IdentityReport {
    let parts = cor1_reports(k);
    let mut r = parts[0].clone();
    r.identity_id = "cor1".into();
    r.pass = parts.iter().all(|p| p.pass);
    r.terms_evaluated = parts.iter().map(|p| p.terms_evaluated).sum();
    r
}

/// `1 + sum_n [((2n+1)s - 1)|E_{3n}| + |E_{3n+1}| + |E_{3n+2}|]` through
/// `t^order`, against `2 + sum_{k>=1} t^k/k!`.
pub fn assemble_linear_sum_exp(order: i64) -> WeightedSumAssembly {
    assert!(order >= 0, "order must be non-negative");
    let mut assembled = LaurentSeries::constant(Rational::one());
    // group n contributes from t^n on (the s-weight lowers n+1 by one)
    let max_group = order as u64;
    for n in 0..=max_group {
        let weight = LaurentSeries::exact([
            (-1, Rational::from(2 * n + 1)),
            (0, Rational::from(-1)),
        ]);
        let e0 = e_abs_error_series(n, 0, order + 1).unwrap().series;
        assembled = &assembled + &(&weight * &e0);
        for case in 1..=2 {
            if (n as i64) < order {
                assembled = &assembled + &e_abs_error_series(n, case, order).unwrap().series;
            }
        }
    }
    let assembled = assembled.restrict(order).unwrap();
    let target = &series_exp(&Rational::one(), order) + &LaurentSeries::constant(Rational::one());
    WeightedSumAssembly {
        family: Family::ExpInvS,
        trunc: order,
        assembled,
        target,
        max_group_index: max_group,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s_k_small_values() {
        assert_eq!(s_k(0), Rational::one());
        assert_eq!(s_k(3), Rational::new(1, 6));
        // k = 3 by hand: 6/(3!*4!) ... summed directly
        let direct = Rational::new(6, 6 * 24)
            + Rational::new(3 * 6, 2 * 120)
            + Rational::new(5 * 6, 720)
            + Rational::new(7 * 6, 5040);
        assert_eq!(s_k(3), direct);
    }

    #[test]
    fn binomial_form_small() {
        let r = binomial_form_check(2);
        assert_eq!(r.lhs, Rational::from(30));
        assert_eq!(r.rhs, Rational::from(30));
        assert!(r.pass);
    }

    #[test]
    fn coefficient_formula() {
        assert_eq!(coeff_linear_exp(0).lhs, Rational::one());
        let r1 = coeff_linear_exp(1);
        assert_eq!(r1.lhs, Rational::one());
        assert!(r1.pass);
        let r40 = coeff_linear_exp(40);
        assert!(r40.pass);
        assert_eq!(r40.rhs, Rational::from(crate::combinat::factorial(40)).recip().unwrap());
        for k in 0..20 {
            assert!(second_line_vanishes(k).pass);
        }
    }

    #[test]
    fn folded_report() {
        let r = cor1_summary(9);
        assert_eq!(r.identity_id, "cor1");
        assert!(r.pass);
        assert_eq!(r.rhs, Rational::new(1, 362880));
    }

    #[test]
    fn assembly_small_orders() {
        let a0 = assemble_linear_sum_exp(0);
        assert_eq!(a0.assembled.coeff(0).unwrap(), Rational::from(2));
        assert!(a0.matches());
        let a1 = assemble_linear_sum_exp(1);
        assert_eq!(a1.assembled.coeff(1).unwrap(), Rational::one());
        assert!(a1.matches());
        let a12 = assemble_linear_sum_exp(12);
        assert!(a12.matches());
        assert!(a12.report("assemble-exp").pass);
    }
}
