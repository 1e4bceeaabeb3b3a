//! Exact terminating generalized hypergeometric sums.

use num_traits::ToPrimitive;

use crate::combinat::pochhammer;
use crate::error::{Error, Result};
use crate::identities::IdentityReport;
use crate::rational::Rational;

/// `pFq(upper; lower; z)` where some upper parameter is `-k`, `k >= 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TerminatingHyperSum {
    upper: Vec<Rational>,
    lower: Vec<Rational>,
    z: Rational,
    last: u64,
}

fn nonpositive_integer(x: &Rational) -> Option<u64> {
    if x.is_integer() && !x.is_positive() {
        (-x.numer()).to_u64()
    } else {
        None
    }
}

impl TerminatingHyperSum {
    pub fn new(upper: Vec<Rational>, lower: Vec<Rational>, z: Rational) -> Result<Self> {
        let last = upper
            .iter()
            .filter_map(nonpositive_integer)
            .min()
            .ok_or(Error::NonTerminating)?;
        // (b)_j vanishes for some j <= last iff b = -i with i < last
        for b in &lower {
            if let Some(i) = nonpositive_integer(b) {
                if i < last {
                    return Err(Error::LowerPole(b.to_string()));
                }
            }
        }
        Ok(TerminatingHyperSum { upper, lower, z, last })
    }

    /// Index of the last (possibly) nonzero term.
    pub fn last_index(&self) -> u64 {
        self.last
    }

    /// Summed with the term ratio
    /// `t_{j+1} = t_j * prod(a_i + j) / prod(b_i + j) * z / (j + 1)`.
    pub fn value(&self) -> Rational {
        let mut term = Rational::one();
        let mut sum = Rational::one();
        for j in 0..self.last {
            let jr = Rational::from(j);
            let num: Rational = self.upper.iter().map(|a| a + &jr).product();
            let den: Rational = self.lower.iter().map(|b| b + &jr).product();
            term = &(&(&term * &num) * &self.z) / &(&den * &Rational::from(j + 1));
            sum += &term;
        }
        sum
    }

    /// Summed term by term from Pochhammer products; the cross-check for
    /// [`value`](Self::value).
    pub fn value_direct(&self) -> Rational {
        (0..=self.last)
            .map(|j| {
                let num: Rational = self.upper.iter().map(|a| pochhammer(a, j)).product();
                let den: Rational = self.lower.iter().map(|b| pochhammer(b, j)).product();
                let jfact = pochhammer(&Rational::one(), j);
                &(&num * &self.z.pow(j as i32)) / &(&den * &jfact)
            })
            .sum()
    }
}

pub fn eval_3f2(
    a1: &Rational,
    a2: &Rational,
    a3: &Rational,
    b1: &Rational,
    b2: &Rational,
    z: &Rational,
) -> Result<Rational> {
    Ok(TerminatingHyperSum::new(
        vec![a1.clone(), a2.clone(), a3.clone()],
        vec![b1.clone(), b2.clone()],
        z.clone(),
    )?
    .value())
}

/// `3F2(-k, 3/2, 1; 1/2, k+2; z)`.
pub fn f32_family(k: u64, z: &Rational) -> Rational {
    eval_3f2(
        &Rational::from(-(k as i64)),
        &Rational::new(3, 2),
        &Rational::one(),
        &Rational::new(1, 2),
        &Rational::from(k + 2),
        z,
    )
    .expect("parameters terminate and have no lower pole")
}

/// `3F2(-k, 3/2, 1; 1/2, k+2; -1) = k + 1`, and with it
/// `S_k = 3F2(...) / (k+1)! = 1/k!`.
pub fn verify_thm3(k: u64) -> Vec<IdentityReport> {
    use crate::identities::linear_exp::s_k;

    let f = f32_family(k, &Rational::from(-1));
    let kp1_fact = Rational::from(crate::combinat::factorial(k + 1));
    let inv_k_fact = Rational::from(crate::combinat::factorial(k)).recip().unwrap();
    let chain = &f / &kp1_fact;
    vec![
        IdentityReport::new("thm3.3f2", k as i64, f, Rational::from(k + 1), k + 1),
        IdentityReport::new("thm3.chain", k as i64, chain.clone(), inv_k_fact, k + 1),
        IdentityReport::new("thm3.sk", k as i64, s_k(k), chain, 2 * (k + 1)),
    ]
}

/// `3F2(-k, 3/2, 1; 1/2, k+2; 1) = 0` for `k >= 1`. (At `k = 0` the sum is 1.)
pub fn verify_lemma_vanish(k: u64) -> Result<IdentityReport> {
    if k == 0 {
        return Err(Error::InvalidArgument(
            "the vanishing holds for k >= 1 only (k = 0 gives 1)".into(),
        ));
    }
    let f = f32_family(k, &Rational::one());
    Ok(IdentityReport::new("lemma-3f2", k as i64, f, Rational::zero(), k + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(p: i64, d: i64) -> Rational {
        Rational::new(p, d)
    }

    #[test]
    fn family_values() {
        let args = (q(-1, 1), q(3, 2), q(1, 1), q(1, 2), q(3, 1));
        assert_eq!(eval_3f2(&args.0, &args.1, &args.2, &args.3, &args.4, &q(-1, 1)).unwrap(), q(2, 1));
        assert_eq!(eval_3f2(&args.0, &args.1, &args.2, &args.3, &args.4, &q(1, 1)).unwrap(), q(0, 1));
        assert_eq!(
            eval_3f2(&q(-4, 1), &q(7, 3), &q(-5, 2), &q(1, 3), &q(9, 1), &q(0, 1)).unwrap(),
            q(1, 1)
        );
        assert_eq!(f32_family(0, &q(1, 1)), q(1, 1));
    }

    #[test]
    fn thm3_and_lemma_small() {
        for k in [0u64, 1, 2, 7] {
            assert!(verify_thm3(k).iter().all(|r| r.pass), "k = {k}");
        }
        assert_eq!(f32_family(1, &q(-1, 1)), q(2, 1));
        for k in [1u64, 2, 3] {
            assert!(verify_lemma_vanish(k).unwrap().pass);
        }
        assert!(verify_lemma_vanish(0).is_err());
    }

    #[test]
    fn invalid_parameters() {
        assert_eq!(
            TerminatingHyperSum::new(vec![q(1, 2), q(3, 1)], vec![q(2, 1)], q(1, 1)),
            Err(Error::NonTerminating)
        );
        assert_eq!(
            TerminatingHyperSum::new(vec![q(-5, 1)], vec![q(-2, 1)], q(1, 1)),
            Err(Error::LowerPole("-2".into()))
        );
        // the series stops before (b)_j can vanish
        assert!(TerminatingHyperSum::new(vec![q(-2, 1)], vec![q(-2, 1)], q(1, 1)).is_ok());
    }

    #[test]
    fn zero_upper_parameter_gives_one() {
        let h = TerminatingHyperSum::new(vec![q(0, 1), q(5, 2), q(1, 1)], vec![q(1, 3), q(4, 1)], q(7, 1)).unwrap();
        assert_eq!(h.value(), q(1, 1));
    }

    fn arb_param() -> impl Strategy<Value = Rational> {
        (-9i64..10, 1i64..5).prop_map(|(p, d)| Rational::new(p, d))
    }

    proptest! {
        #[test]
        fn recurrence_matches_pochhammer_sum(
            k in 0i64..12,
            a in arb_param(),
            b1 in (1i64..20, 1i64..4).prop_map(|(p, d)| Rational::new(p, d)),
            b2 in (1i64..20, 1i64..4).prop_map(|(p, d)| Rational::new(p, d)),
            z in arb_param(),
        ) {
            let h = TerminatingHyperSum::new(vec![Rational::from(-k), a, Rational::new(3, 2)], vec![b1, b2], z).unwrap();
            prop_assert_eq!(h.value(), h.value_direct());
        }
    }
}
