//! Multiplicative orders modulo prime powers, the smallest-odd-exponent
//! machinery that decides when p | sigma(q^{2a}), exact q-adic valuations of
//! sigma(p^a), and companion-prime forcing through repunit factorization.

use std::collections::BTreeSet;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{
    factorize_with, gcd_u128, pow_mod, repunit, v_p, ArithError, DEFAULT_MR_ROUNDS,
    DEFAULT_RHO_BUDGET,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrderError {
    #[error("{q} and {modulus} are not coprime")]
    NotCoprime { q: u128, modulus: u128 },
    #[error("q must be at least 3 for sigma valuations")]
    EvenValuationBase,
    #[error("p and q must be distinct primes")]
    SamePrime,
    #[error("modulus overflowed u128")]
    Overflow,
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// The smallest odd f > 1 with q^f = 1 (mod p^k), where k - 1 is the exact
/// power of p dividing q - 1.  `f` is absent when no odd exponent works,
/// which encodes "p can never divide sigma(q^even)".
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderProfile {
    pub p: u128,
    pub k: u32,
    pub q: u128,
    pub f: Option<u128>,
}

/// Exact exponent of q in sigma(p^a), together with the inputs that fixed it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValuationResult {
    pub q: u128,
    pub p: u128,
    pub a: u32,
    pub v: u32,
}

/// Least e >= 1 with q^e = 1 (mod p^k).  Computed by factoring
/// phi(p^k) = p^{k-1}(p-1) and descending through its prime divisors.
pub fn mult_order(q: u128, p: u128, k: u32) -> Result<u128, OrderError> {
    let modulus = checked_pow(p, k)?;
    if gcd_u128(q, modulus) != 1 {
        return Err(OrderError::NotCoprime { q, modulus });
    }
    if modulus == 1 {
        return Ok(1);
    }
    let phi = checked_pow(p, k - 1)? * (p - 1);
    let phi_factors = factorize_with(phi, DEFAULT_RHO_BUDGET, DEFAULT_MR_ROUNDS)?;
    let mut e = phi;
    for &(r, _) in phi_factors.pairs() {
        while e.is_multiple_of(r) && pow_mod(q, e / r, modulus) == 1 {
            e /= r;
        }
    }
    debug_assert_eq!(pow_mod(q, e, modulus), 1);
    Ok(e)
}

fn checked_pow(p: u128, k: u32) -> Result<u128, OrderError> {
    let mut acc: u128 = 1;
    for _ in 0..k {
        acc = acc.checked_mul(p).ok_or(OrderError::Overflow)?;
    }
    Ok(acc)
}

/// OrderProfile for distinct primes p, q with k fixed by p^{k-1} || (q - 1).
pub fn f_pq(p: u128, q: u128) -> Result<OrderProfile, OrderError> {
    f_pq_layered(p, q, 0)
}

/// Like `f_pq`, but raising the modulus by `layer` extra powers of p.  Layer
/// t answers "when does p^{1+t} divide sigma(q^{2a})" for p with order 1,
/// which is how prime-power table entries like f for 9 = 3^2 are realized.
pub fn f_pq_layered(p: u128, q: u128, layer: u32) -> Result<OrderProfile, OrderError> {
    if p == q {
        return Err(OrderError::SamePrime);
    }
    let k = v_p(p, q - 1) + 1 + layer;
    let e = mult_order(q, p, k)?;
    let f = if e > 1 && e % 2 == 1 { Some(e) } else { None };
    Ok(OrderProfile { p, k, q, f })
}

/// Does p divide sigma(q^{2a})?  Decided without computing sigma: the
/// divisibility holds exactly when f exists and divides 2a + 1.
pub fn divides_sigma(p: u128, q: u128, a: u32) -> Result<bool, OrderError> {
    if p == 2 {
        // sigma of an even power of an odd prime is a sum of an odd number
        // of odd terms, hence odd
        return Err(OrderError::EvenValuationBase);
    }
    let profile = f_pq(p, q)?;
    Ok(match profile.f {
        Some(f) => (2 * a as u128 + 1).is_multiple_of(f),
        None => false,
    })
}

/// Exact v_q(sigma(p^a)) for an odd prime q, by the three-branch valuation
/// formula: with o the order of p mod q,
///   o | a+1, o != 1  ->  v_q(p^o - 1) + v_q(a + 1)
///   o = 1            ->  v_q(a + 1)
///   otherwise        ->  0
pub fn valuation_sigma(q: u128, p: u128, a: u32) -> Result<ValuationResult, OrderError> {
    if q < 3 {
        return Err(OrderError::EvenValuationBase);
    }
    if q == p {
        return Err(OrderError::SamePrime);
    }
    let o = mult_order(p, q, 1)?;
    let a_plus_1 = a as u128 + 1;
    let v = if o == 1 {
        v_p(q, a_plus_1)
    } else if a_plus_1.is_multiple_of(o) {
        v_of_pow_minus_one(p, o, q) + v_p(q, a_plus_1)
    } else {
        0
    };
    Ok(ValuationResult { q, p, a, v })
}

/// v_q(p^o - 1), computed by raising the q-power modulus until p^o deviates
/// from 1.  Assumes q | p^o - 1.
fn v_of_pow_minus_one(p: u128, o: u128, q: u128) -> u32 {
    let mut v = 0;
    let mut modulus: u128 = 1;
    loop {
        match modulus.checked_mul(q) {
            Some(m) => modulus = m,
            None => return v,
        }
        if pow_mod(p, o, modulus) != 1 {
            return v;
        }
        v += 1;
    }
}

/// Companion primes: all prime factors of repunit(q, f) outside `exclude`.
/// Whenever some prime with profile exponent f divides sigma(q^{2a}), every
/// prime returned here divides it too, because f | 2a+1 forces the whole
/// repunit into sigma.
pub fn companion_primes(
    q: u128,
    f: u32,
    exclude: &BTreeSet<u128>,
    rho_budget: u64,
    mr_rounds: u32,
) -> Result<BTreeSet<u128>, OrderError> {
    let value = repunit(q, f);
    let value = value.to_u128().ok_or(ArithError::BudgetExhausted)?;
    let factors = factorize_with(value, rho_budget, mr_rounds)?;
    Ok(factors
        .primes()
        .filter(|p| !exclude.contains(p))
        .collect())
}
