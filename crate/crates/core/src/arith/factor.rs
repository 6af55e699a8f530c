//! Integer factorization: trial division, then Brent's variant of Pollard
//! rho with an explicit iteration budget.  Budget exhaustion is an error,
//! never a silently partial answer.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::modular::{gcd_u128, mul_mod};
use super::primality::{is_prime_with_rounds, small_primes};
use super::{ArithError, Factorization};

/// Trial division bound; removes every factor below it.
const TRIAL_BOUND: u64 = 100_000;

/// Default rho budget: total iterations across all splits.  Generous enough
/// for 80-bit semiprimes (a 2^40 factor needs on the order of 2^21 steps).
pub const DEFAULT_RHO_BUDGET: u64 = 40_000_000;

struct Budget {
    remaining: u64,
}

impl Budget {
    fn spend(&mut self, amount: u64) -> Result<(), ArithError> {
        if self.remaining < amount {
            Err(ArithError::BudgetExhausted)
        } else {
            self.remaining -= amount;
            Ok(())
        }
    }
}

fn xorshift(state: &mut u64) -> u64 {
    let mut x = *state;
    x ^= x << 13;
    x ^= x >> 7;
    x ^= x << 17;
    *state = x;
    x
}

/// Brent cycle-finding rho on u128 values. Returns a non-trivial factor.
fn rho_brent(n: u128, budget: &mut Budget, seed: &mut u64) -> Result<u128, ArithError> {
    debug_assert!(n > 3 && n % 2 == 1);
    loop {
        let c = 1 + xorshift(seed) as u128 % (n - 2);
        let mut y: u128 = 2 + xorshift(seed) as u128 % (n - 3);
        let m = 128u128;
        let (mut r, mut q) = (1u128, 1u128);
        let (mut x, mut ys) = (y, y);
        let mut g = 1u128;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = (mul_mod(y, y, n) + c) % n;
            }
            budget.spend(r as u64)?;
            let mut k = 0u128;
            while k < r && g == 1 {
                ys = y;
                let steps = m.min(r - k);
                for _ in 0..steps {
                    y = (mul_mod(y, y, n) + c) % n;
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                budget.spend(steps as u64)?;
                g = gcd_u128(q, n);
                k += m;
            }
            r <<= 1;
        }
        if g == n {
            // backtrack one step at a time
            loop {
                ys = (mul_mod(ys, ys, n) + c) % n;
                g = gcd_u128(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return Ok(g);
        }
        // degenerate cycle; retry with a fresh polynomial
    }
}

fn factor_recursive(
    n: u128,
    budget: &mut Budget,
    seed: &mut u64,
    rounds: u32,
    out: &mut Vec<(u128, u32)>,
) -> Result<(), ArithError> {
    if n == 1 {
        return Ok(());
    }
    if is_prime_with_rounds(n, rounds) {
        out.push((n, 1));
        return Ok(());
    }
    // perfect powers of a prime slip past rho slowly; peel squares first
    let root = n.isqrt();
    if root * root == n {
        factor_recursive(root, budget, seed, rounds, out)?;
        factor_recursive(root, budget, seed, rounds, out)?;
        return Ok(());
    }
    let d = rho_brent(n, budget, seed)?;
    factor_recursive(d, budget, seed, rounds, out)?;
    factor_recursive(n / d, budget, seed, rounds, out)?;
    Ok(())
}

/// Complete factorization of n with the given rho budget and Miller-Rabin
/// round count for primality certification.
pub fn factorize_with(n: u128, rho_budget: u64, mr_rounds: u32) -> Result<Factorization, ArithError> {
    if n == 0 {
        return Err(ArithError::ZeroInput);
    }
    let mut pairs: Vec<(u128, u32)> = Vec::new();
    let mut rest = n;
    for &p in small_primes() {
        let p = p as u128;
        if p * p > rest {
            break;
        }
        if rest.is_multiple_of(p) {
            let mut e = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            pairs.push((p, e));
        }
        if rest == 1 {
            break;
        }
    }
    if rest > 1 {
        if rest <= (TRIAL_BOUND as u128) * (TRIAL_BOUND as u128) {
            // below the trial square, whatever is left is prime
            pairs.push((rest, 1));
        } else {
            let mut budget = Budget { remaining: rho_budget };
            let mut seed = 0x5eed_0f10_u64 ^ (n as u64);
            let mut found = Vec::new();
            factor_recursive(rest, &mut budget, &mut seed, mr_rounds, &mut found)?;
            found.sort_unstable();
            for (p, e) in found {
                match pairs.iter_mut().find(|(q, _)| *q == p) {
                    Some((_, acc)) => *acc += e,
                    None => pairs.push((p, e)),
                }
            }
        }
    }
    pairs.sort_unstable();
    Ok(Factorization::from_raw_unchecked(pairs))
}

/// Factorization with default budget and rounds.
pub fn factorize(n: u128) -> Result<Factorization, ArithError> {
    factorize_with(n, DEFAULT_RHO_BUDGET, super::primality::DEFAULT_MR_ROUNDS)
}

/// Factor a BigUint if it fits in u128, else report it as out of reach.
pub fn factorize_big(n: &BigUint, rho_budget: u64, mr_rounds: u32) -> Result<Factorization, ArithError> {
    match n.to_u128() {
        Some(v) => factorize_with(v, rho_budget, mr_rounds),
        None => Err(ArithError::BudgetExhausted),
    }
}

/// Strip every factor of `p` from `n`, returning (cofactor, valuation).
pub fn strip_factor_big(n: &BigUint, p: u128) -> (BigUint, u32) {
    let p = BigUint::from(p);
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return (n, v);
        }
        n = q;
        v += 1;
    }
}

/// Prime factors of `n` found by trial division with the cached sieve,
/// without insisting on completeness: returns (found primes, cofactor).
pub fn small_prime_scan(n: &BigUint) -> (Vec<u128>, BigUint) {
    let mut rest = n.clone();
    let mut found = Vec::new();
    for &p in small_primes() {
        if rest.is_one() {
            break;
        }
        let big_p = BigUint::from(p);
        if (&rest % &big_p).is_zero() {
            found.push(p as u128);
            while (&rest % &big_p).is_zero() {
                rest /= &big_p;
            }
        }
    }
    (found, rest)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::modular::repunit;

    #[test]
    fn factors_case_values() {
        // sigma(11^4) = 16105 = 5 * 3221, a forced-companion pair
        let f = factorize(16105).unwrap();
        assert_eq!(f.pairs(), &[(5, 1), (3221, 1)]);
        assert_eq!(factorize(1).unwrap().pairs(), &[]);
    }

    #[test]
    fn factors_repunit_5_29() {
        // (5^29 - 1)/4 contains 59 and 35671
        let value = repunit(5, 29).to_u128().unwrap();
        assert_eq!(value, 46_566_128_730_773_925_781);
        let f = factorize(value).unwrap();
        let primes: Vec<u128> = f.pairs().iter().map(|&(p, _)| p).collect();
        assert!(primes.contains(&59));
        assert!(primes.contains(&35671));
        // direct division confirms
        assert_eq!(value % 59, 0);
        assert_eq!(value % 35671, 0);
    }

    #[test]
    fn rebuild_identity_exhaustive() {
        for n in 1..=100_000u128 {
            let f = factorize(n).unwrap();
            assert_eq!(f.value(), BigUint::from(n), "n={n}");
        }
    }

    #[test]
    fn budget_exhaustion_is_an_error() {
        // product of two 63-bit primes; a handful of iterations cannot split it
        let a: u128 = 9_223_372_036_854_775_783;
        let b: u128 = 9_223_372_036_854_775_643;
        let err = factorize_with(a * b, 100, 16).unwrap_err();
        assert!(matches!(err, ArithError::BudgetExhausted));
    }

    #[test]
    fn semiprime_near_80_bits() {
        let a: u128 = 549_755_813_881; // prime near 2^39
        let b: u128 = 549_755_813_911;
        let f = factorize(a * b).unwrap();
        assert_eq!(f.pairs(), &[(a, 1), (b, 1)]);
    }
}
