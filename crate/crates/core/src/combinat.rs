//! Factorials, binomial coefficients and rising factorials.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::rational::Rational;

pub fn factorial(n: u64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// C(n, k), zero outside `0 <= k <= n`.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    // Each prefix product is itself a binomial coefficient, so the division is exact.
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// Rising factorial `(a)_n = a (a+1) ... (a+n-1)`; `(a)_0 = 1`.
pub fn pochhammer(a: &Rational, n: u64) -> Rational {
    let mut acc = Rational::one();
    let mut factor = a.clone();
    let one = Rational::one();
    for _ in 0..n {
        if factor.is_zero() {
            return Rational::zero();
        }
        acc *= &factor;
        factor += &one;
    }
    acc
}

/// Primes `<= max` by the sieve of Eratosthenes.
fn primes_up_to(max: usize) -> Vec<u64> {
    let mut composite = vec![false; max + 1];
    let mut primes = Vec::new();
    for i in 2..=max {
        if !composite[i] {
            primes.push(i as u64);
            for j in (i * i..=max).step_by(i) {
                composite[j] = true;
            }
        }
    }
    primes
}

/// Exponent of the prime `p` in `n!`.
fn legendre(n: i64, p: u64) -> i64 {
    let (n, mut pk, mut e) = (n as u64, p, 0);
    while pk <= n {
        e += n / pk;
        pk = match pk.checked_mul(p) {
            Some(next) => next,
            None => break,
        };
    }
    e as i64
}

/// Precomputed `0!, 1!, ..., max!`, shared read-only by the identity sums.
#[derive(Debug, Clone)]
pub struct FactorialTable {
    table: Vec<BigInt>,
    primes: Vec<u64>,
}

impl FactorialTable {
    pub fn up_to(max: usize) -> Self {
        let mut table = Vec::with_capacity(max + 1);
        table.push(BigInt::one());
        for i in 1..=max {
            let next = &table[i - 1] * i;
            table.push(next);
        }
        FactorialTable { table, primes: primes_up_to(max) }
    }

    pub fn max(&self) -> usize {
        self.table.len() - 1
    }

    /// `n!`. Panics when `n` exceeds the table (a sizing bug in the caller).
    pub fn get(&self, n: usize) -> &BigInt {
        &self.table[n]
    }

    /// `n!` for a signed index that the caller has already range-checked.
    pub fn at(&self, n: i64) -> &BigInt {
        assert!(n >= 0, "factorial of negative index {n}");
        self.get(n as usize)
    }

    /// `C(n, k)` by exact division, 0 outside `0 <= k <= n`.
    pub fn binomial(&self, n: i64, k: i64) -> BigInt {
        if k < 0 || k > n {
            return BigInt::zero();
        }
        self.at(n) / (self.at(k) * self.at(n - k))
    }

    /// `prod(num[i]!) / prod(den[i]!)` in lowest terms, assembled from
    /// prime exponents so no gcd is needed.
    pub fn ratio(&self, num: &[i64], den: &[i64]) -> Rational {
        for &i in num.iter().chain(den) {
            assert!(i >= 0 && i as usize <= self.max(), "factorial index {i} outside 0..={}", self.max());
        }
        let mut top = BigInt::one();
        let mut bottom = BigInt::one();
        for &p in &self.primes {
            let e: i64 = num.iter().map(|&n| legendre(n, p)).sum::<i64>()
                - den.iter().map(|&n| legendre(n, p)).sum::<i64>();
            if e > 0 {
                top *= BigInt::from(p).pow(e as u32);
            } else if e < 0 {
                bottom *= BigInt::from(p).pow((-e) as u32);
            }
        }
        Rational::from_coprime_parts(top, bottom)
    }

    /// [`ratio`](Self::ratio) by dividing the full products.
    pub fn ratio_direct(&self, num: &[i64], den: &[i64]) -> Rational {
        let top = num.iter().fold(BigInt::one(), |acc, &i| acc * self.at(i));
        let bottom = den.iter().fold(BigInt::one(), |acc, &i| acc * self.at(i));
        Rational::new(top, bottom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn factorial_values() {
        assert_eq!(factorial(0), BigInt::from(1));
        assert_eq!(factorial(5), BigInt::from(120));
        // 20! by iterated u128 multiplication
        let oracle: u128 = (1..=20u128).product();
        assert_eq!(oracle, 2432902008176640000);
        assert_eq!(factorial(20), BigInt::from(oracle));
        assert_eq!(factorial(400), FactorialTable::up_to(400).get(400).clone());
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(3, 1), BigInt::from(3));
        // C(2k, k) with k = 2 via 4!/(2! 2!)
        assert_eq!(binomial(4, 2), factorial(4) / (factorial(2) * factorial(2)));
        assert_eq!(binomial(4, 2), BigInt::from(6));
        assert_eq!(binomial(4, 7), BigInt::zero());
        assert_eq!(binomial(4, -1), BigInt::zero());
        assert_eq!(binomial(0, 0), BigInt::one());
    }

    #[test]
    fn binomial_matches_factorial_ratio() {
        for n in 0..=60u64 {
            for k in 0..=n {
                let oracle = factorial(n) / (factorial(k) * factorial(n - k));
                assert_eq!(binomial(n, k as i64), oracle, "C({n},{k})");
            }
        }
    }

    #[test]
    fn pochhammer_values() {
        let three_halves = Rational::new(3, 2);
        let half = Rational::new(1, 2);
        assert_eq!(pochhammer(&three_halves, 1), three_halves);
        assert_eq!(pochhammer(&three_halves, 0), Rational::one());
        assert_eq!(
            pochhammer(&three_halves, 4) / pochhammer(&half, 4),
            Rational::from(9)
        );
        assert_eq!(pochhammer(&Rational::from(-3), 5), Rational::zero());
        assert_eq!(pochhammer(&Rational::one(), 6), Rational::from(factorial(6)));
    }

    #[test]
    fn sieve_and_legendre() {
        assert_eq!(primes_up_to(30), [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(primes_up_to(1), Vec::<u64>::new());
        // 10! = 2^8 3^4 5^2 7
        assert_eq!([2, 3, 5, 7].map(|p| legendre(10, p)), [8, 4, 2, 1]);
        let f = FactorialTable::up_to(12);
        assert_eq!(f.ratio(&[10], &[3, 7]), Rational::from(120));
        assert_eq!(f.ratio(&[], &[0, 1]), Rational::one());
        assert_eq!(f.binomial(12, 5), binomial(12, 5));
        assert_eq!(f.binomial(12, 13), BigInt::zero());
    }

    proptest! {
        #[test]
        fn prime_exponent_ratio_matches_division(
            num in proptest::collection::vec(0i64..=120, 0..4),
            den in proptest::collection::vec(0i64..=120, 0..4),
        ) {
            let f = FactorialTable::up_to(120);
            prop_assert_eq!(f.ratio(&num, &den), f.ratio_direct(&num, &den));
        }

        #[test]
        fn odd_number_as_pochhammer_ratio(n in 0u64..=50) {
            let ratio = pochhammer(&Rational::new(3, 2), n) / pochhammer(&Rational::new(1, 2), n);
            prop_assert_eq!(ratio, Rational::from(2 * n + 1));
        }

        #[test]
        fn negative_integer_pochhammer(k in 0i64..30, n in 0u64..40) {
            // (-k)_n = (-1)^n k!/(k-n)! for n <= k, zero beyond
            let value = pochhammer(&Rational::from(-k), n);
            if n as i64 <= k {
                let mag = factorial(k as u64) / factorial(k as u64 - n);
                let expected = if n % 2 == 0 { mag } else { -mag };
                prop_assert_eq!(value, Rational::from(expected));
            } else {
                prop_assert!(value.is_zero());
            }
        }
    }
}
