//! Primality testing and a cached small-prime sieve.

use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use super::modular::{mul_mod, pow_mod};

/// Miller-Rabin rounds giving error probability below 2^-128 for inputs
/// beyond the deterministic 64-bit range.
pub const DEFAULT_MR_ROUNDS: u32 = 64;

const SIEVE_LIMIT: u64 = 100_000;

static SMALL_PRIMES: OnceLock<Vec<u64>> = OnceLock::new();

/// All primes below 100_000, computed once.
pub fn small_primes() -> &'static [u64] {
    SMALL_PRIMES.get_or_init(|| sieve(SIEVE_LIMIT))
}

/// Simple sieve of Eratosthenes.
pub fn sieve(limit: u64) -> Vec<u64> {
    let limit = limit as usize;
    let mut composite = vec![false; limit + 1];
    let mut primes = Vec::new();
    for n in 2..=limit {
        if !composite[n] {
            primes.push(n as u64);
            let mut m = n * n;
            while m <= limit {
                composite[m] = true;
                m += n;
            }
        }
    }
    primes
}

/// Primes in the inclusive range [lo, hi]; hi must stay below the sieve cap.
pub fn primes_in_range(lo: u128, hi: u128) -> Vec<u128> {
    assert!(hi <= SIEVE_LIMIT as u128, "range exceeds sieve limit");
    small_primes()
        .iter()
        .map(|&p| p as u128)
        .filter(|&p| p >= lo && p <= hi)
        .collect()
}

// Witness set deterministic for all n < 3.3 * 10^24, comfortably past 2^64.
const MR_BASES_64: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn miller_rabin_u128(n: u128, base: u128) -> bool {
    // returns true if n passes (is a probable prime) for this base
    let base = base % n;
    if base == 0 {
        return true;
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    let mut x = pow_mod(base, d, n);
    if x == 1 || x == n - 1 {
        return true;
    }
    for _ in 1..s {
        x = mul_mod(x, x, n);
        if x == n - 1 {
            return true;
        }
    }
    false
}

/// Deterministic primality for anything representable in u128.
///
/// Below 2^64 the fixed Miller-Rabin base set is provably correct.  Above,
/// `rounds` pseudo-random bases are added on top of the fixed set; with the
/// default rounds the error probability is below 2^-128.
pub fn is_prime_with_rounds(n: u128, rounds: u32) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u128, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    for &b in &MR_BASES_64 {
        if !miller_rabin_u128(n, b as u128) {
            return false;
        }
    }
    if n <= u64::MAX as u128 {
        return true;
    }
    // splitmix-style base generator, deterministic per n
    let mut state = (n as u64) ^ 0x9e37_79b9_7f4a_7c15;
    for _ in 0..rounds {
        state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^= z >> 31;
        let base = 2 + (z as u128) % (n - 3);
        if !miller_rabin_u128(n, base) {
            return false;
        }
    }
    true
}

/// Primality with the default round count.
pub fn is_prime(n: u128) -> bool {
    is_prime_with_rounds(n, DEFAULT_MR_ROUNDS)
}

/// Probabilistic primality for arbitrary-precision integers.
pub fn is_prime_big(n: &BigUint, rounds: u32) -> bool {
    if let Some(small) = n.to_u128() {
        return is_prime_with_rounds(small, rounds);
    }
    for &p in small_primes().iter().take(256) {
        if (n % BigUint::from(p)).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let two = BigUint::from(2u32);
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    let mut state = n.to_u64_digits().first().copied().unwrap_or(1) ^ 0xa076_1d64_78bd_642f;
    'base: for _ in 0..rounds {
        state = state.wrapping_mul(0xd129_0d3c_e434_79a9).wrapping_add(1);
        let base = &two + BigUint::from(state);
        let mut x = base.modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'base;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert!(is_prime(2));
        assert!(!is_prime(0));
        assert!(!is_prime(1));
        assert!(!is_prime(51)); // 3 * 17
        assert!(is_prime(20731)); // upper endpoint of the widest bounded chain
    }

    #[test]
    fn sieve_agrees_with_miller_rabin() {
        let primes = sieve(2000);
        for n in 2..=2000u64 {
            assert_eq!(primes.contains(&n), is_prime(n as u128), "n={n}");
        }
    }

    #[test]
    fn big_prime_known_values() {
        // companion primes appearing in the elimination tables
        for &p in &[305_175_781u128, 22_366_891, 7_394_137, 5_207_827, 3_044_081] {
            assert!(is_prime(p), "{p} should be prime");
        }
        assert!(!is_prime(305_175_783));
        // the large prime factor of (5^29 - 1)/4
        assert!(is_prime(22_125_996_444_329));
    }

    #[test]
    fn big_uint_path() {
        let p = BigUint::parse_bytes(b"170141183460469231731687303715884105727", 10).unwrap();
        assert!(is_prime_big(&p, 32)); // 2^127 - 1 is prime
        let q = &p * BigUint::from(3u32);
        assert!(!is_prime_big(&q, 32));
    }
}
