//! Acceptance criteria 1-11. Each test prints one `criterion N ... PASS|FAIL`
//! line before asserting.
//!
//! Criteria 1-9 and 11 are exact rational comparisons (tolerance zero).
//! Criterion 10 is an enclosure check with the constants below.

use cf_errsum::cf::{convergents_numeric, error_term, CfPattern, ErrorMode};
use cf_errsum::error_series::flat_abs_error;
use cf_errsum::hypergeom::{verify_lemma_vanish, verify_thm3};
use cf_errsum::identities::numeric::numeric_partial_sums;
use cf_errsum::identities::{e2s, linear_exp, quadratic_exp, tanh, IdentityReport};
use cf_errsum::{Family, Rational};
use num_bigint::BigInt;

/// Residual upper bounds at `N` must be below `10^-15`.
const RESIDUAL_BOUND_DIGITS: u32 = 15;
/// Enclosures of `alpha` have width at most `10^-80` (the criterion asks for `<= 10^-30`).
const ENCLOSURE_EPS_DIGITS: u32 = 80;
const PARTIAL_SUM_N: u64 = 20;
const DETERMINANT_MAX_N: u64 = 30;
const DUAL_ROUTE_ORDER: i64 = 20;

fn ten_to_minus(digits: u32) -> Rational {
    Rational::new(1, BigInt::from(10).pow(digits))
}

fn verdict(criterion: &str, what: &str, ok: bool, detail: &str) {
    println!("criterion {criterion} [{what}]: {} ({detail})", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "criterion {criterion} failed: {detail}");
}

fn check_reports(criterion: &str, what: &str, reports: &[IdentityReport]) {
    let failed: Vec<String> = reports
        .iter()
        .filter(|r| !r.pass)
        .map(|r| format!("{}@{}", r.identity_id, r.instance))
        .collect();
    let detail = if failed.is_empty() {
        format!("{} exact checks", reports.len())
    } else {
        format!("{} of {} failed: {}", failed.len(), reports.len(), failed.join(", "))
    };
    verdict(criterion, what, failed.is_empty(), &detail);
}

#[test]
fn criterion_01_s_k_and_binomial_form() {
    let reports: Vec<_> = (0..=200).flat_map(linear_exp::cor1_reports).collect();
    assert_eq!(reports.len(), 201 * 4);
    check_reports("1", "S_k = 1/k!, binomial form, k = 0..200", &reports);
}

#[test]
fn criterion_02_quadratic_exp_coefficients() {
    // formula, squared-series oracle, and their mutual agreement
    let reports: Vec<_> = (0..=40).flat_map(quadratic_exp::thm1_reports).collect();
    assert_eq!(reports.len(), 41 * 3);
    check_reports("2", "quadratic e^{1/s} coefficients, r = 0..40, two routes", &reports);
}

#[test]
fn criterion_03_hypergeometric_chain() {
    let reports: Vec<_> = (0..=200).flat_map(verify_thm3).collect();
    check_reports("3", "3F2 at z = -1 equals k+1 and the S_k chain, k = 0..200", &reports);
}

#[test]
fn criterion_04_hypergeometric_vanishing() {
    let reports: Vec<_> = (1..=200).map(|k| verify_lemma_vanish(k).unwrap()).collect();
    check_reports("4", "3F2 at z = 1 vanishes, k = 1..200", &reports);
}

#[test]
fn criterion_05_goal_z_and_first_tanh_identity() {
    let mut reports: Vec<_> = (0..=150).map(tanh::goal_z_coeff).collect();
    reports.extend((1..=150).flat_map(tanh::thm4));
    check_reports("5", "(e^{2/s}+1)/2 coefficients k = 0..150, (4n+1) identity k = 1..150", &reports);
}

#[test]
fn criterion_06_second_tanh_identity() {
    let mut reports: Vec<_> = (1..=150).flat_map(tanh::thm5).collect();
    reports.extend((1..=150).map(tanh::second_tanh_coeff));
    check_reports("6", "(4n+3) identity with conversions, k = 1..150", &reports);
}

#[test]
fn criterion_07_quadratic_tanh() {
    let mut reports: Vec<_> = (0..=25).map(tanh::quad_tanh).collect();
    reports.extend((0..=20).map(|t| tanh::assemble_phi_sum(t).report("quad-series")));
    check_reports("7", "4^k/(k+1)! triple sums k = 0..25, Phi_0 + Phi_1 through t^20", &reports);
}

#[test]
fn criterion_08_e2s_seven_sums() {
    let mut reports: Vec<_> = (1..=60).map(e2s::e2s_theorem).collect();
    reports.extend((0..=20).map(|t| e2s::assemble_linear_sum_e2s(t).report("assemble-e2s")));
    check_reports("8", "2^l/l! seven sums l = 1..60, e^{2/s} assembly through t^20", &reports);
}

#[test]
fn criterion_09_dual_route_error_terms() {
    let mode = ErrorMode::Symbolic { order: DUAL_ROUTE_ORDER };
    let mut mismatches = Vec::new();
    let mut checked = 0;
    for (family, last) in [(Family::ExpInvS, 8u64), (Family::ExpTwoInvS, 9)] {
        let pattern = CfPattern::symbolic(family).unwrap();
        for n in 0..=last {
            let via_cf = error_term(&pattern, n as i64, &mode).unwrap();
            let via_cf = match via_cf.abs_value() {
                cf_errsum::cf::ErrorValue::Series(s) => s,
                other => panic!("symbolic mode returned {other:?}"),
            };
            let closed = flat_abs_error(family, n, DUAL_ROUTE_ORDER).unwrap().series;
            checked += 1;
            if via_cf != closed {
                mismatches.push(format!("{family} n={n}"));
            }
        }
    }
    verdict(
        "9",
        "convergent route vs factorial series, |E_n| through t^20",
        mismatches.is_empty(),
        &format!("{checked} series compared; mismatches: {mismatches:?}"),
    );
}

fn partial_sum_criterion(label: &str, pattern: CfPattern, power: u8) {
    let eps = ten_to_minus(ENCLOSURE_EPS_DIGITS);
    let bound = ten_to_minus(RESIDUAL_BOUND_DIGITS);
    // an Err here is the non-increasing check failing
    let outcome = numeric_partial_sums(&pattern, PARTIAL_SUM_N, power, &eps);
    let (ok, detail) = match &outcome {
        Ok(rows) => {
            let last = rows.last().unwrap();
            let hi = last.residual.hi();
            (
                hi < &bound,
                format!(
                    "residual at n = {} <= {:.3e}, bound 1e-{RESIDUAL_BOUND_DIGITS}, upper bounds non-increasing from n = 2",
                    last.n,
                    hi.to_f64_lossy()
                ),
            )
        }
        Err(e) => (false, e.to_string()),
    };
    verdict("10", label, ok, &detail);
}

#[test]
fn criterion_10_exp_inv_s_linear_sum() {
    partial_sum_criterion("e^{1/2}, sum a_{n+1}|E_n|, N = 20", CfPattern::exp_inv_s(2).unwrap(), 1);
}

#[test]
fn criterion_10_exp_inv_s_quadratic_sum() {
    partial_sum_criterion("e^{1/2}, sum a_{n+1}E_n^2, N = 20", CfPattern::exp_inv_s(2).unwrap(), 2);
}

#[test]
fn criterion_10_tanh_linear_sum() {
    partial_sum_criterion("(u,v) = (1,4), sum a_{n+1}|D_n|, N = 20", CfPattern::tanh_uv(1, 4).unwrap(), 1);
}

#[test]
fn criterion_10_tanh_quadratic_sum() {
    partial_sum_criterion("(u,v) = (1,4), sum a_{n+1}D_n^2, N = 20", CfPattern::tanh_uv(1, 4).unwrap(), 2);
}

#[test]
fn criterion_11_determinant() {
    let mut patterns: Vec<CfPattern> = (2..=12).map(|s| CfPattern::exp_inv_s(s).unwrap()).collect();
    patterns.extend((3..=25).step_by(2).map(|s| CfPattern::exp_two_inv_s(s).unwrap()));
    for u in 1..=16u64 {
        for v in 1..=16u64 {
            let r = ((u * v) as f64).sqrt() as u64;
            if r * r == u * v {
                patterns.push(CfPattern::tanh_uv(u, v).unwrap());
            }
        }
    }
    let mut bad = Vec::new();
    let mut checked = 0;
    for p in &patterns {
        let c = convergents_numeric(p, DETERMINANT_MAX_N).unwrap();
        for w in c.windows(2) {
            let n = w[1].n;
            let det = &w[1].p * &w[0].q - &w[0].p * &w[1].q;
            let expected = BigInt::from(if (n - 1).rem_euclid(2) == 0 { 1 } else { -1 });
            checked += 1;
            if det != expected {
                bad.push(format!("{p:?} n={n}"));
            }
        }
    }
    verdict(
        "11",
        "p_n q_{n-1} - p_{n-1} q_n = (-1)^{n-1}, n <= 30",
        bad.is_empty(),
        &format!("{} patterns, {checked} determinants; failures: {bad:?}", patterns.len()),
    );
}
