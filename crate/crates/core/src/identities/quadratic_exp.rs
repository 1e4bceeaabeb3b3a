//! The quadratic error sum for `e^{1/s}`: `sum a_{n+1} E_n^2 = e^{1/s}`.

use crate::cf::Family;
use crate::combinat::FactorialTable;
use crate::error_series::e_abs_error_series;
use crate::identities::{IdentityReport, WeightedSumAssembly};
use crate::rational::Rational;
use crate::series::{series_exp, LaurentSeries};

/// Coefficient of `s^{-r}` from the four constrained sums over `(n, i, j)`,
/// evaluated exactly as written, against `1/r!`.
pub fn quadratic_coeff_exp(r: u64) -> IdentityReport {
    let r = r as i64;
    let f = FactorialTable::up_to(2 * r as usize + 3);
    // (n+i)!/(i!(2n+i+1)!), (n+1+i)!/(i!(2n+i+2)!), (n+1)(n+i)!/(i!(2n+i+2)!)
    let c0 = |n: i64, i: i64| f.ratio(&[n + i], &[i, 2 * n + i + 1]);
    let c1 = |n: i64, i: i64| f.ratio(&[n + 1 + i], &[i, 2 * n + i + 2]);
    let c2 = |n: i64, i: i64| Rational::from(n + 1) * f.ratio(&[n + i], &[i, 2 * n + i + 2]);

    let mut lhs = if r == 0 { Rational::one() } else { Rational::zero() };
    let mut terms = 0u64;
    for n in 0.. {
        let first = r - (2 * n + 1);
        if first < 0 {
            break;
        }
        let weight = Rational::from(2 * n + 1);
        for i in 0..=first {
            lhs += &(&weight * &(&c0(n, i) * &c0(n, first - i)));
            terms += 1;
        }
        let second = r - (2 * n + 2);
        for i in 0..=second {
            let j = second - i;
            lhs -= &c0(n, i) * &c0(n, j);
            lhs += &c1(n, i) * &c1(n, j);
            lhs += &c2(n, i) * &c2(n, j);
            terms += 3;
        }
    }
    IdentityReport::new("thm1.formula", r, lhs, f.ratio(&[], &[r]), terms)
}

/// `1 + sum_n [((2n+1)s - 1)E_{3n}^2 + E_{3n+1}^2 + E_{3n+2}^2]` through
/// `t^order`, built by squaring the closed-form `|E_n|` series; the target is
/// `e^{1/s}`.
pub fn assemble_quadratic_sum_exp(order: i64) -> WeightedSumAssembly {
    assert!(order >= 0, "order must be non-negative");
    let mut assembled = LaurentSeries::constant(Rational::one());
    // group n starts at t^{2n+1}
    let max_group = ((order - 1).max(0) / 2) as u64;
    for n in 0..=max_group {
        if 2 * n as i64 + 1 > order {
            break;
        }
        let weight = LaurentSeries::exact([
            (-1, Rational::from(2 * n + 1)),
            (0, Rational::from(-1)),
        ]);
        for case in 0..=2u8 {
            let e = e_abs_error_series(n, case, order + 1).unwrap().series;
            let sq = &e * &e;
            assembled = if case == 0 { &assembled + &(&weight * &sq) } else { &assembled + &sq };
        }
    }
    WeightedSumAssembly {
        family: Family::ExpInvS,
        trunc: order,
        assembled: assembled.restrict(order).unwrap(),
        target: series_exp(&Rational::one(), order),
        max_group_index: max_group,
    }
}

/// The four-sum formula and the squared-series route at one `r`.
pub fn thm1_reports(r: u64) -> Vec<IdentityReport> {
    let formula = quadratic_coeff_exp(r);
    let assembly = assemble_quadratic_sum_exp(r as i64);
    let series = assembly.report("thm1.series");
    let cross = IdentityReport::new(
        "thm1.cross",
        r as i64,
        formula.lhs.clone(),
        series.lhs.clone(),
        formula.terms_evaluated + series.terms_evaluated,
    );
    vec![formula, series, cross]
}
