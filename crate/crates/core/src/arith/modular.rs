//! Modular arithmetic helpers shared by primality, factoring and order code.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use super::ArithError;

/// Modular multiplication with a u128 modulus.
///
/// Fast path when everything fits in 64 bits; otherwise falls back to
/// BigUint (moduli above 2^64 are rare in this crate and never hot).
pub fn mul_mod(a: u128, b: u128, m: u128) -> u128 {
    debug_assert!(m > 0);
    if m <= u64::MAX as u128 {
        ((a % m) * (b % m)) % m
    } else {
        let r = BigUint::from(a) * BigUint::from(b) % BigUint::from(m);
        r.to_u128().unwrap()
    }
}

/// b^e mod m, binary exponentiation. m = 1 gives 0.
pub fn pow_mod(b: u128, e: u128, m: u128) -> u128 {
    if m == 1 {
        return 0;
    }
    let mut base = b % m;
    let mut exp = e;
    let mut acc: u128 = 1;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        exp >>= 1;
        if exp > 0 {
            base = mul_mod(base, base, m);
        }
    }
    acc
}

pub fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = b;
        b = a % b;
        a = t;
    }
    a
}

/// Extended gcd on i128; returns (g, x, y) with a*x + b*y = g.
fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    (r0, s0, t0)
}

/// Solve a system of congruences x = r_i (mod m_i) with pairwise coprime
/// moduli.  Returns the unique (residue, modulus) with modulus = prod m_i.
pub fn crt_solve(pairs: &[(u128, u128)]) -> Result<(u128, u128), ArithError> {
    let mut r: u128 = 0;
    let mut m: u128 = 1;
    for &(ri, mi) in pairs {
        if mi == 0 {
            return Err(ArithError::InvalidModulus);
        }
        let ri = ri % mi;
        if gcd_u128(m, mi) != 1 {
            return Err(ArithError::NonCoprimeModuli { a: m, b: mi });
        }
        // x = r (mod m), x = ri (mod mi): x = r + m * t, t = (ri - r)/m (mod mi)
        let (_, inv, _) = ext_gcd((m % mi) as i128, mi as i128);
        let inv = inv.rem_euclid(mi as i128) as u128;
        let diff = (ri + mi - r % mi) % mi;
        let t = mul_mod(diff, inv, mi);
        r += m * t;
        m = m.checked_mul(mi).ok_or(ArithError::Overflow)?;
    }
    Ok((r % m, m))
}

/// p-adic valuation of n (exponent of p in n). n must be nonzero.
pub fn v_p(p: u128, mut n: u128) -> u32 {
    debug_assert!(n != 0 && p >= 2);
    let mut v = 0;
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

/// p-adic valuation of a BigUint.
pub fn v_p_big(p: u128, n: &BigUint) -> u32 {
    debug_assert!(!n.is_zero());
    let p = BigUint::from(p);
    let mut v = 0;
    let mut n = n.clone();
    loop {
        let (q, r) = num_integer::Integer::div_rem(&n, &p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// (q^f - 1) / (q - 1) = 1 + q + ... + q^{f-1}, exact.
pub fn repunit(q: u128, f: u32) -> BigUint {
    let q = BigUint::from(q);
    let mut acc = BigUint::one();
    let mut term = BigUint::one();
    for _ in 1..f {
        term *= &q;
        acc += &term;
    }
    acc
}

/// repunit when the result fits in u128.
pub fn repunit_u128(q: u128, f: u32) -> Option<u128> {
    let mut acc: u128 = 1;
    let mut term: u128 = 1;
    for _ in 1..f {
        term = term.checked_mul(q)?;
        acc = acc.checked_add(term)?;
    }
    Some(acc)
}
