//! The linear error sum for `e^{2/s}` (odd `s >= 3`).

use crate::cf::Family;
use crate::combinat::FactorialTable;
use crate::error_series::ErrorSeriesSpec;
use crate::identities::{IdentityReport, WeightedSumAssembly};
use crate::rational::Rational;
use crate::series::{series_exp, LaurentSeries};

fn two_pow(k: i64) -> Rational {
    Rational::from(num_bigint::BigInt::from(2).pow(k as u32))
}

/// Upper bound `floor((l - shift)/3)`, or `None` for an empty sum.
fn upper(l: i64, shift: i64) -> Option<i64> {
    (l >= shift).then(|| (l - shift) / 3)
}

/// The seven sums whose total is the coefficient of `s^{-l}` in
/// `sum a_{n+1}|E_n|`, in order of the five error series.
pub fn e2s_sums(l: u64) -> [Rational; 7] {
    assert!(l >= 1, "l must be positive");
    let l = l as i64;
    let f = FactorialTable::up_to(2 * l as usize + 4);
    let sum = |shift: i64, term: &dyn Fn(i64) -> Rational| -> Rational {
        match upper(l, shift) {
            Some(top) => (0..=top).map(term).sum(),
            None => Rational::zero(),
        }
    };
    [
        sum(0, &|n| Rational::from(6 * n + 1) * two_pow(l) * f.ratio(&[l], &[l - 3 * n, l + 3 * n + 1])),
        -sum(1, &|n| two_pow(l - 1) * f.ratio(&[l - 1], &[l - 3 * n - 1, l + 3 * n])),
        sum(1, &|n| {
            Rational::from(3 * (2 * n + 1)) * two_pow(l + 1) * f.ratio(&[l], &[l - 3 * n - 1, l + 3 * n + 2])
        }),
        sum(2, &|n| Rational::from(6 * n + 5) * two_pow(l) * f.ratio(&[l], &[l - 3 * n - 2, l + 3 * n + 3])),
        -sum(3, &|n| two_pow(l - 1) * f.ratio(&[l - 1], &[l - 3 * n - 3, l + 3 * n + 2])),
        sum(3, &|n| two_pow(l) * f.ratio(&[l], &[l - 3 * n - 3, l + 3 * n + 3])),
        sum(3, &|n| {
            Rational::from(3 * (n + 1)) * two_pow(l) * f.ratio(&[l - 1], &[l - 3 * n - 3, l + 3 * n + 3])
        }),
    ]
}

/// `2^l / l!` against the seven sums.
pub fn e2s_theorem(l: u64) -> IdentityReport {
    let li = l as i64;
    let lhs = &two_pow(li) * &FactorialTable::up_to(l as usize).ratio(&[], &[li]);
    let rhs: Rational = e2s_sums(l).into_iter().sum();
    let terms = [0, 1, 1, 2, 3, 3, 3].iter().filter_map(|&s| upper(li, s)).map(|t| t as u64 + 1).sum();
    IdentityReport::new("thm-e2s", li, lhs, rhs, terms)
}

/// `1 + sum_n sum_j a_{5n+j+1}|E_{5n+j}|` through `t^order`, against
/// `2 + sum_{l>=1} 2^l t^l / l!`.
pub fn assemble_linear_sum_e2s(order: i64) -> WeightedSumAssembly {
    assert!(order >= 0, "order must be non-negative");
    let q = |p: i64, d: i64| Rational::new(p, d);
    let mut assembled = LaurentSeries::constant(Rational::one());
    // group n starts at t^{3n}
    let max_group = (order / 3) as u64;
    for n in 0..=max_group {
        let ni = n as i64;
        let weights = [
            LaurentSeries::exact([(-1, q(6 * ni + 1, 2)), (0, q(-1, 2))]),
            LaurentSeries::exact([(-1, Rational::from(12 * ni + 6))]),
            LaurentSeries::exact([(-1, q(6 * ni + 5, 2)), (0, q(-1, 2))]),
            LaurentSeries::constant(Rational::one()),
            LaurentSeries::constant(Rational::one()),
        ];
        for (case, w) in weights.iter().enumerate() {
            let need = if w.lowest_exponent() == Some(-1) { order + 1 } else { order };
            let spec = ErrorSeriesSpec::ExpTwoInvS { n, case: case as u8 };
            if spec.lowest_exponent() > need {
                continue;
            }
            let e = spec.series(need).unwrap();
            assembled = &assembled + &(w * &e.series);
        }
    }
    let target = &series_exp(&Rational::from(2), order) + &LaurentSeries::constant(Rational::one());
    WeightedSumAssembly {
        family: Family::ExpTwoInvS,
        trunc: order,
        assembled: assembled.restrict(order).unwrap(),
        target,
        max_group_index: max_group,
    }
}
