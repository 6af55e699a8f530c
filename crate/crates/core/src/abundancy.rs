//! The sum-of-divisors function, the abundancy index I(n) = sigma(n)/n, and
//! its supremum over a fixed radical.  Everything exact.

use num_bigint::BigUint;
use num_traits::One;
use thiserror::Error;

use crate::arith::{repunit, ExactRatio, Factorization};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AbundancyError {
    #[error("a friend of 10 must exceed 10 (got {0})")]
    TooSmall(BigUint),
    #[error("abundancy_sup needs a non-empty set of distinct primes")]
    EmptyPrimeSet,
}

/// sigma(n): sum of divisors, computed as the product of repunits
/// sigma(p^a) = 1 + p + ... + p^a over the factorization.
pub fn sigma(n: &Factorization) -> BigUint {
    let mut acc = BigUint::one();
    for &(p, a) in n.pairs() {
        acc *= repunit(p, a + 1);
    }
    acc
}

/// The abundancy index I(n) = sigma(n)/n as a reduced exact rational.
/// I(1) = 1/1 (empty product), which keeps the product laws total.
pub fn abundancy(n: &Factorization) -> ExactRatio {
    ExactRatio::new(sigma(n), n.value())
}

/// Strict supremum of I over integers whose radical is exactly the given
/// prime set: prod p/(p-1).
pub fn abundancy_sup(primes: &[u128]) -> Result<ExactRatio, AbundancyError> {
    if primes.is_empty() {
        return Err(AbundancyError::EmptyPrimeSet);
    }
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for &p in primes {
        num *= BigUint::from(p);
        den *= BigUint::from(p - 1);
    }
    Ok(ExactRatio::new(num, den))
}

/// Exact test I(n) = 9/5 for n > 10.
pub fn is_friend_of_10(n: &Factorization) -> Result<bool, AbundancyError> {
    let value = n.value();
    if value <= BigUint::from(10u32) {
        return Err(AbundancyError::TooSmall(value));
    }
    Ok(abundancy(n) == ExactRatio::nine_fifths())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::factorize;

    fn fz(n: u128) -> Factorization {
        factorize(n).unwrap()
    }

    #[test]
    fn sigma_values() {
        assert_eq!(sigma(&fz(25)), BigUint::from(31u32));
        assert_eq!(sigma(&fz(1)), BigUint::one());
        // divisors of 10: 1 + 2 + 5 + 10
        assert_eq!(sigma(&fz(10)), BigUint::from(18u32));
    }

    #[test]
    fn abundancy_of_10_is_nine_fifths() {
        assert_eq!(abundancy(&fz(10)), ExactRatio::nine_fifths());
        assert_eq!(abundancy(&fz(1)), ExactRatio::one());
    }

    #[test]
    fn case_10_lower_bound_exceeds_nine_fifths() {
        // I(5^2 7^2 11^2 13^2 17^2) = 31/25 * 57/49 * 133/121 * 183/169 * 307/289
        let n: Factorization = "5^2*7^2*11^2*13^2*17^2".parse().unwrap();
        let parts = [
            (31u128, 25u128),
            (57, 49),
            (133, 121),
            (183, 169),
            (307, 289),
        ];
        let mut expected = ExactRatio::one();
        for (num, den) in parts {
            expected = expected.mul(&ExactRatio::from_u128(num, den));
        }
        assert_eq!(abundancy(&n), expected);
        assert!(abundancy(&n) > ExactRatio::nine_fifths());
    }

    #[test]
    fn sup_values() {
        assert_eq!(abundancy_sup(&[2]).unwrap(), ExactRatio::from_u128(2, 1));
        // fixes the upper endpoint of the first chain: with 61 the sup clears
        // 9/5, with the next prime 67 it does not
        let with_61 = abundancy_sup(&[5, 7, 13, 17, 19, 61]).unwrap();
        let with_67 = abundancy_sup(&[5, 7, 13, 17, 19, 67]).unwrap();
        assert!(with_61 > ExactRatio::nine_fifths());
        assert!(with_67 < ExactRatio::nine_fifths());
        // explains the unbounded tail of the {5,7,11,13,17} chain
        let open = abundancy_sup(&[5, 7, 11, 13, 17]).unwrap();
        assert_eq!(open, ExactRatio::from_u128(85085, 46080));
        assert!(open > ExactRatio::nine_fifths());
        assert!(abundancy_sup(&[]).is_err());
    }

    #[test]
    fn friend_test_edges() {
        assert!(matches!(
            is_friend_of_10(&fz(10)),
            Err(AbundancyError::TooSmall(_))
        ));
        // sigma(50) = 93 and 93/50 != 9/5
        assert_eq!(is_friend_of_10(&fz(50)), Ok(false));
        let n: Factorization = "5^2*7^2".parse().unwrap();
        assert_eq!(is_friend_of_10(&n), Ok(false));
    }

    #[test]
    fn sigma_matches_brute_force_to_20000() {
        // the acceptance suite pushes this to 1e5; keep the unit test quick
        let limit = 20_000usize;
        let mut divisor_sum = vec![0u64; limit + 1];
        for d in 1..=limit {
            let mut m = d;
            while m <= limit {
                divisor_sum[m] += d as u64;
                m += d;
            }
        }
        for (n, &expected) in divisor_sum.iter().enumerate().skip(1) {
            assert_eq!(sigma(&fz(n as u128)), BigUint::from(expected), "n={n}");
        }
    }

    #[test]
    fn property_laws_randomized() {
        // Property 1: weak multiplicativity on coprime pairs
        // Property 2: I(an) > I(n) for a > 1
        // Property 4: prime-domination monotonicity
        // Property 5: I(n) < sup over the radical
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..200 {
            let m = 2 + (next() % 10_000) as u128;
            let n = 2 + (next() % 10_000) as u128;
            if crate::arith::gcd_u128(m, n) == 1 {
                let lhs = abundancy(&fz(m * n));
                let rhs = abundancy(&fz(m)).mul(&abundancy(&fz(n)));
                assert_eq!(lhs, rhs, "multiplicativity at {m},{n}");
            }
            let a = 2 + (next() % 50) as u128;
            assert!(
                abundancy(&fz(a * n)) > abundancy(&fz(n)),
                "I(an) > I(n) at a={a}, n={n}"
            );
            let f = fz(n);
            let radical: Vec<u128> = f.primes().collect();
            assert!(abundancy(&f) < abundancy_sup(&radical).unwrap());
        }
        // Property 4 on aligned prime tuples with equal exponents
        let smaller: Factorization = "3^2*7^4*11^1".parse().unwrap();
        let larger: Factorization = "5^2*11^4*13^1".parse().unwrap();
        assert!(abundancy(&smaller) >= abundancy(&larger));
    }
}
