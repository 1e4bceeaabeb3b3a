//! Identities from the error terms of `(s/u) tanh(1/s)`.

use num_bigint::BigInt;

use crate::cf::Family;
use crate::combinat::FactorialTable;
use crate::error_series::{ErrorSeriesSpec, Parity};
use crate::hypergeom::f32_family;
use crate::identities::{termwise_gap, IdentityReport, WeightedSumAssembly};
use crate::rational::Rational;
use crate::series::LaurentSeries;

fn two_pow(k: i64) -> Rational {
    if k >= 0 {
        Rational::from(BigInt::from(2).pow(k as u32))
    } else {
        Rational::new(1, BigInt::from(2).pow((-k) as u32))
    }
}

/// `2^{k-1}/k!` for `k >= 1`, and 1 at `k = 0`.
fn goal_coefficient(f: &FactorialTable, k: i64) -> Rational {
    if k == 0 {
        Rational::one()
    } else {
        &two_pow(k - 1) * &f.ratio(&[], &[k])
    }
}

/// Coefficient of `s^{-k}` in `(e^{2/s}+1)/2` against
/// `sum_{n<=k/2} (4n+1) 2^k/(k-2n)! k!/(2n+k+1)!`.
pub fn goal_z_coeff(k: u64) -> IdentityReport {
    let k = k as i64;
    let f = FactorialTable::up_to(3 * k as usize + 2);
    let rhs: Rational = (0..=k / 2)
        .map(|n| Rational::from(4 * n + 1) * two_pow(k) * f.ratio(&[k], &[k - 2 * n, 2 * n + k + 1]))
        .sum();
    IdentityReport::new("goal-z", k, goal_coefficient(&f, k), rhs, (k / 2 + 1) as u64)
}

/// Coefficient of `s^{-k}` (`k >= 1`) in `(e^{2/s}-1)/2` against the
/// general-term sum with `m = k - 2n - 1`.
pub fn second_tanh_coeff(k: u64) -> IdentityReport {
    assert!(k >= 1, "k must be positive");
    let k = k as i64;
    let f = FactorialTable::up_to(3 * k as usize + 2);
    let rhs: Rational = (0..=(k - 1) / 2)
        .map(|n| {
            let m = k - 2 * n - 1;
            Rational::from(4 * n + 3)
                * two_pow(2 * n + 2 + m - 1)
                * f.ratio(&[2 * n + 1 + m], &[m, 4 * n + 3 + m])
        })
        .sum();
    IdentityReport::new("second-tanh", k, goal_coefficient(&f, k), rhs, ((k - 1) / 2 + 1) as u64)
}

fn thm4_terms(f: &FactorialTable, k: i64) -> Vec<Rational> {
    (0..=k / 2)
        .map(|n| Rational::from(2 * (4 * n + 1)) * f.ratio(&[k], &[k - 2 * n, 2 * n + k + 1]))
        .collect()
}

fn thm5_terms(f: &FactorialTable, k: i64) -> Vec<Rational> {
    (0..=(k - 1) / 2)
        .map(|n| Rational::from(2 * (4 * n + 3)) * f.ratio(&[k], &[k - 2 * n - 1, k + 2 * n + 2]))
        .collect()
}

/// `S_k` terms with `n` of the given parity (0 or 1).
fn s_k_parity_terms(f: &FactorialTable, k: i64, parity: i64) -> Vec<Rational> {
    (0..=k)
        .filter(|n| n % 2 == parity)
        .map(|n| Rational::from(2 * n + 1) * f.ratio(&[k], &[k - n, n + k + 1]))
        .collect()
}

/// `(F(-1) + sign F(1)) / (k+1)!` with `F = 3F2(-k, 3/2, 1; 1/2, k+2; z)`.
fn from_thm3(f: &FactorialTable, k: i64, sign: i64) -> Rational {
    let plus = f32_family(k as u64, &Rational::from(-1));
    let at_one = f32_family(k as u64, &Rational::one());
    &(&plus + &(&Rational::from(sign) * &at_one)) * &f.ratio(&[], &[k + 1])
}

/// `1/k! = sum (4n+1) 2/(k-2n)! k!/(2n+k+1)!`, its binomial form, and its
/// link to the even-`n` half of `S_k` and to the hypergeometric sum.
pub fn thm4(k: u64) -> Vec<IdentityReport> {
    assert!(k >= 1, "k must be positive");
    let ki = k as i64;
    let f = FactorialTable::up_to(2 * k as usize + 2);
    let terms = thm4_terms(&f, ki);
    let len = terms.len() as u64;
    let sum: Rational = terms.iter().sum();

    let binom_lhs: BigInt = (0..=ki / 2)
        .map(|n| BigInt::from(2 * (4 * n + 1)) * f.binomial(2 * ki + 1, ki - 2 * n))
        .sum();
    let binom_rhs = BigInt::from(2 * k + 1) * f.binomial(2 * ki, ki);

    let halves: Vec<Rational> = s_k_parity_terms(&f, ki, 0).iter().map(|x| x * &Rational::from(2)).collect();
    let (gap, n_pairs) = termwise_gap(halves.into_iter().zip(terms));

    vec![
        IdentityReport::new("thm4.factorial", ki, sum.clone(), f.ratio(&[], &[ki]), len),
        IdentityReport::new("thm4.binomial", ki, binom_lhs.into(), binom_rhs.into(), len),
        IdentityReport::new("thm4.parity-split", ki, gap, Rational::zero(), n_pairs),
        IdentityReport::new("thm4.from-thm3", ki, sum, from_thm3(&f, ki, 1), 2 * (k + 1)),
    ]
}

/// `1/k! = sum (4n+3) 2/(k-2n-1)! k!/(k+2n+2)!`, its binomial form with the
/// two conversion steps, and the odd-`n` half of `S_k`.
pub fn thm5(k: u64) -> Vec<IdentityReport> {
    assert!(k >= 1, "k must be positive");
    let ki = k as i64;
    let f = FactorialTable::up_to(2 * k as usize + 2);
    let terms = thm5_terms(&f, ki);
    let len = terms.len() as u64;
    let sum: Rational = terms.iter().sum();

    let binom_lhs = BigInt::from((k + 1) * (k + 1)) * f.binomial(2 * ki + 2, ki + 1);
    let binom_rhs: BigInt = (0..=(ki - 1) / 2)
        .map(|n| BigInt::from(2 * (4 * n + 3) * (ki + 2 * n + 3)) * f.binomial(2 * ki + 2, ki - 2 * n - 1))
        .sum();

    let central = f.ratio(&[2 * ki + 2], &[ki, ki]);
    let (conv_gap, conv_len) = termwise_gap((0..=(ki - 1) / 2).map(|n| {
        (
            f.ratio(&[2 * ki + 2], &[ki - 2 * n - 1, ki + 2 * n + 2]),
            Rational::from(BigInt::from(ki + 2 * n + 3) * f.binomial(2 * ki + 2, ki - 2 * n - 1)),
        )
    }));

    let halves: Vec<Rational> = s_k_parity_terms(&f, ki, 1).iter().map(|x| x * &Rational::from(2)).collect();
    let (gap, n_pairs) = termwise_gap(halves.into_iter().zip(terms));

    vec![
        IdentityReport::new("thm5.factorial", ki, sum.clone(), f.ratio(&[], &[ki]), len),
        IdentityReport::new("thm5.binomial", ki, binom_lhs.clone().into(), binom_rhs.into(), len),
        IdentityReport::new("thm5.central", ki, central, binom_lhs.into(), 1),
        IdentityReport::new("thm5.conversion", ki, conv_gap, Rational::zero(), conv_len),
        IdentityReport::new("thm5.parity-split", ki, gap, Rational::zero(), n_pairs),
        IdentityReport::new("thm5.from-thm3", ki, sum, from_thm3(&f, ki, -1), 2 * (k + 1)),
    ]
}

/// `4^k/(k+1)!` against the two constrained triple sums.
pub fn quad_tanh(k: u64) -> IdentityReport {
    let k = k as i64;
    let f = FactorialTable::up_to(k as usize + 4);
    let mut lhs = Rational::zero();
    let mut terms = 0u64;
    // 4n + m1 + m2 = k
    for n in 0..=k / 4 {
        let rest = k - 4 * n;
        for m1 in 0..=rest {
            let m2 = rest - m1;
            let t = Rational::from(4 * n + 1)
                * two_pow(4 * n + m1 + m2)
                * f.ratio(&[2 * n + m1, 2 * n + m2], &[m1, m2, 4 * n + m1 + 1, 4 * n + m2 + 1]);
            lhs += t;
            terms += 1;
        }
    }
    // 4n + m1 + m2 = k + 2, n >= 1
    for n in 1..=(k + 2) / 4 {
        let rest = k + 2 - 4 * n;
        for m1 in 0..=rest {
            let m2 = rest - m1;
            let t = Rational::from(4 * n - 1)
                * two_pow(4 * n - 2 + m1 + m2)
                * f.ratio(&[2 * n - 1 + m1, 2 * n - 1 + m2], &[m1, m2, 4 * n + m1 - 1, 4 * n + m2 - 1]);
            lhs += t;
            terms += 1;
        }
    }
    let rhs = &Rational::from(BigInt::from(4).pow(k as u32)) * &f.ratio(&[], &[k + 1]);
    IdentityReport::new("quad-tanh", k, lhs, rhs, terms)
}

/// `sum_{k<=order} 4^k/(k+1)! t^k`, the expansion of `(s/4)(e^{4/s} - 1)`.
pub fn quad_target(order: i64) -> LaurentSeries {
    let f = FactorialTable::up_to(order.max(0) as usize + 1);
    LaurentSeries::truncated(
        (0..=order).map(|k| (k, &Rational::from(BigInt::from(4).pow(k as u32)) * &f.ratio(&[], &[k + 1]))),
        order,
    )
}

/// `Phi_0 + Phi_1` through `t^order`, from squared tanh error series:
/// `Phi_0 = sum_{n>=0} (4n+1) A_n^2` with `A_n` the even series and
/// `Phi_1 = sum_{n>=1} (4n-1)/4 B_n^2 t^{-2}` with `B_n` the odd series.
pub fn assemble_phi_sum(order: i64) -> WeightedSumAssembly {
    assert!(order >= 0, "order must be non-negative");
    let mut assembled = LaurentSeries::zero(order);
    let mut max_group = 0;
    for n in 0u64.. {
        let phi0_low = 4 * n as i64;
        let phi1_low = 4 * n as i64 - 2;
        if phi0_low > order && (n == 0 || phi1_low > order) {
            break;
        }
        max_group = n;
        if phi0_low <= order {
            let a = ErrorSeriesSpec::Tanh { n, parity: Parity::Even }.series(order).unwrap().series;
            assembled = &assembled + &(&a * &a).scale(&Rational::from(4 * n + 1));
        }
        if n >= 1 && phi1_low <= order {
            let b = ErrorSeriesSpec::Tanh { n, parity: Parity::Odd }.series(order + 2).unwrap().series;
            let w = Rational::new(4 * n as i64 - 1, 4);
            assembled = &assembled + &(&b * &b).scale(&w).shift(-2);
        }
    }
    WeightedSumAssembly {
        family: Family::TanhUV,
        trunc: order,
        assembled: assembled.restrict(order).unwrap(),
        target: quad_target(order),
        max_group_index: max_group,
    }
}
