//! Exact integer foundations: factored integers, arbitrary-precision reduced
//! rationals, primality, factorization, modular arithmetic and repunits.

mod factor;
mod modular;
mod primality;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

pub use factor::{
    factorize, factorize_big, factorize_with, small_prime_scan, strip_factor_big,
    DEFAULT_RHO_BUDGET,
};
pub use modular::{crt_solve, gcd_u128, mul_mod, pow_mod, repunit, repunit_u128, v_p, v_p_big};
pub use primality::{
    is_prime, is_prime_big, is_prime_with_rounds, primes_in_range, sieve, small_primes,
    DEFAULT_MR_ROUNDS,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("input must be positive")]
    ZeroInput,
    #[error("factorization budget exhausted before the input was fully split")]
    BudgetExhausted,
    #[error("moduli {a} and {b} are not coprime")]
    NonCoprimeModuli { a: u128, b: u128 },
    #[error("modulus must be positive")]
    InvalidModulus,
    #[error("integer overflow in exact computation")]
    Overflow,
    #[error("{0} is not prime")]
    NotPrime(u128),
    #[error("exponent must be >= 1")]
    ZeroExponent,
    #[error("prime factors must be strictly increasing")]
    UnsortedFactors,
    #[error("cannot parse {0:?} as an integer or factor expression")]
    Parse(String),
}

/// A positive integer in fully factored form: strictly increasing primes with
/// exponents >= 1.  The empty list is 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Factorization {
    factors: Vec<(u128, u32)>,
}

impl Factorization {
    /// The empty product.
    pub fn one() -> Self {
        Factorization { factors: Vec::new() }
    }

    /// Build from (prime, exponent) pairs, validating every invariant:
    /// primes strictly increasing, exponents positive, entries prime.
    pub fn from_pairs(pairs: Vec<(u128, u32)>) -> Result<Self, ArithError> {
        let mut last = 0u128;
        for &(p, e) in &pairs {
            if e == 0 {
                return Err(ArithError::ZeroExponent);
            }
            if p <= last {
                return Err(ArithError::UnsortedFactors);
            }
            if !is_prime(p) {
                return Err(ArithError::NotPrime(p));
            }
            last = p;
        }
        Ok(Factorization { factors: pairs })
    }

    /// Internal constructor for factors already known sorted and prime.
    pub(crate) fn from_raw_unchecked(pairs: Vec<(u128, u32)>) -> Self {
        debug_assert!(pairs.windows(2).all(|w| w[0].0 < w[1].0));
        Factorization { factors: pairs }
    }

    pub fn pairs(&self) -> &[(u128, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u128> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    /// Reconstructed integer value.
    pub fn value(&self) -> BigUint {
        let mut acc = BigUint::one();
        for &(p, e) in &self.factors {
            acc *= BigUint::from(p).pow(e);
        }
        acc
    }

    /// Number of distinct prime factors, usually written omega.
    pub fn omega(&self) -> u32 {
        self.factors.len() as u32
    }

    /// Number of prime factors with multiplicity, usually written Omega.
    pub fn big_omega(&self) -> u32 {
        self.factors.iter().map(|&(_, e)| e).sum()
    }

    /// Exponent of p in the value (0 when p does not divide it).
    pub fn exponent_of(&self, p: u128) -> u32 {
        self.factors
            .iter()
            .find(|&&(q, _)| q == p)
            .map_or(0, |&(_, e)| e)
    }

    pub fn smallest_prime(&self) -> Option<u128> {
        self.factors.first().map(|&(p, _)| p)
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// True when every exponent is even (the value is a perfect square).
    pub fn is_square(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e % 2 == 0)
    }

    pub fn is_odd(&self) -> bool {
        self.exponent_of(2) == 0
    }

    /// Multiply in another prime power, keeping factors sorted.
    pub fn with_factor(&self, p: u128, e: u32) -> Result<Self, ArithError> {
        if e == 0 {
            return Err(ArithError::ZeroExponent);
        }
        if !is_prime(p) {
            return Err(ArithError::NotPrime(p));
        }
        let mut pairs = self.factors.clone();
        match pairs.binary_search_by_key(&p, |&(q, _)| q) {
            Ok(i) => pairs[i].1 += e,
            Err(i) => pairs.insert(i, (p, e)),
        }
        Ok(Factorization { factors: pairs })
    }

    /// Parse either a plain decimal integer (which is factorized, spending
    /// the given budget) or a factor expression like `5^2*7^4*11^2`.
    pub fn parse(input: &str, rho_budget: u64, mr_rounds: u32) -> Result<Self, ArithError> {
        let s = input.trim();
        if s.is_empty() {
            return Err(ArithError::Parse(input.into()));
        }
        if s.chars().all(|c| c.is_ascii_digit()) {
            let n: u128 = s.parse().map_err(|_| ArithError::Parse(input.into()))?;
            if n == 0 {
                return Err(ArithError::ZeroInput);
            }
            return factorize_with(n, rho_budget, mr_rounds);
        }
        let mut pairs: Vec<(u128, u32)> = Vec::new();
        for part in s.split('*') {
            let part = part.trim();
            let (base, exp) = match part.split_once('^') {
                Some((b, e)) => (
                    b.trim()
                        .parse::<u128>()
                        .map_err(|_| ArithError::Parse(input.into()))?,
                    e.trim()
                        .parse::<u32>()
                        .map_err(|_| ArithError::Parse(input.into()))?,
                ),
                None => (
                    part.parse::<u128>()
                        .map_err(|_| ArithError::Parse(input.into()))?,
                    1,
                ),
            };
            if base == 1 && exp == 1 && s == "1" {
                continue;
            }
            pairs.push((base, exp));
        }
        pairs.sort_unstable_by_key(|&(p, _)| p);
        // merge duplicates, then validate
        let mut merged: Vec<(u128, u32)> = Vec::with_capacity(pairs.len());
        for (p, e) in pairs {
            match merged.last_mut() {
                Some((q, acc)) if *q == p => *acc += e,
                _ => merged.push((p, e)),
            }
        }
        Factorization::from_pairs(merged)
    }

    /// Canonical factor-expression rendering, e.g. `5^2*7^4`.
    pub fn to_expr(&self) -> String {
        if self.factors.is_empty() {
            return "1".into();
        }
        self.factors
            .iter()
            .map(|&(p, e)| {
                if e == 1 {
                    p.to_string()
                } else {
                    format!("{p}^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_expr())
    }
}

impl FromStr for Factorization {
    type Err = ArithError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Factorization::parse(s, DEFAULT_RHO_BUDGET, DEFAULT_MR_ROUNDS)
    }
}

/// An exact non-negative rational, always stored reduced.  Comparison,
/// product and equality are exact; no floating point anywhere.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExactRatio(Ratio<BigUint>);

impl ExactRatio {
    pub fn new(numerator: BigUint, denominator: BigUint) -> Self {
        assert!(!denominator.is_zero(), "denominator must be positive");
        ExactRatio(Ratio::new(numerator, denominator))
    }

    pub fn from_u128(n: u128, d: u128) -> Self {
        assert!(d > 0, "denominator must be positive");
        ExactRatio(Ratio::new(BigUint::from(n), BigUint::from(d)))
    }

    pub fn from_integer(n: BigUint) -> Self {
        ExactRatio(Ratio::from_integer(n))
    }

    pub fn one() -> Self {
        ExactRatio(Ratio::one())
    }

    /// 9/5, the abundancy index of 10.
    pub fn nine_fifths() -> Self {
        Self::from_u128(9, 5)
    }

    pub fn numerator(&self) -> &BigUint {
        self.0.numer()
    }

    pub fn denominator(&self) -> &BigUint {
        self.0.denom()
    }

    pub fn mul(&self, other: &ExactRatio) -> ExactRatio {
        ExactRatio(&self.0 * &other.0)
    }

    /// Approximate decimal rendering; for display only, never for decisions.
    pub fn to_f64(&self) -> f64 {
        let n = self.0.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = self.0.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    }
}

impl PartialOrd for ExactRatio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExactRatio {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }
}

impl fmt::Display for ExactRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorization_invariants() {
        assert!(Factorization::from_pairs(vec![(5, 2), (7, 1)]).is_ok());
        assert!(matches!(
            Factorization::from_pairs(vec![(7, 1), (5, 2)]),
            Err(ArithError::UnsortedFactors)
        ));
        assert!(matches!(
            Factorization::from_pairs(vec![(6, 1)]),
            Err(ArithError::NotPrime(6))
        ));
        assert!(matches!(
            Factorization::from_pairs(vec![(5, 0)]),
            Err(ArithError::ZeroExponent)
        ));
    }

    #[test]
    fn parse_expressions() {
        let f: Factorization = "5^2*7^4*11^2".parse().unwrap();
        assert_eq!(f.pairs(), &[(5, 2), (7, 4), (11, 2)]);
        let g: Factorization = "16105".parse().unwrap();
        assert_eq!(g.pairs(), &[(5, 1), (3221, 1)]);
        let one: Factorization = "1".parse().unwrap();
        assert!(one.is_one());
        assert!("5^0".parse::<Factorization>().is_err());
        assert!("abc".parse::<Factorization>().is_err());
        // unsorted and repeated factors normalize
        let h: Factorization = "7*5^2*7".parse().unwrap();
        assert_eq!(h.pairs(), &[(5, 2), (7, 2)]);
    }

    #[test]
    fn expr_round_trip() {
        let f: Factorization = "5^2*31".parse().unwrap();
        assert_eq!(f.to_expr(), "5^2*31");
        assert_eq!(f.to_expr().parse::<Factorization>().unwrap(), f);
        assert_eq!(f.value(), BigUint::from(775u32));
    }

    #[test]
    fn ratio_reduction_and_compare() {
        let a = ExactRatio::from_u128(85085, 46080);
        let b = ExactRatio::from_u128(17017, 9216);
        assert_eq!(a, b);
        assert!(a > ExactRatio::nine_fifths());
        assert_eq!(a.to_string(), "17017/9216");
    }
}
