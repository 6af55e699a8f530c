//! Hosting analysis: which primes of a candidate set can "host" a required
//! divisor q of sigma(N), meaning q | sigma(p^{2a}) for some admissible a,
//! without forcing a prime factor outside the allowed closure set.
//!
//! Everything here returns machine-checkable witnesses.  When a repunit is
//! too large to factor, the conclusion "some factor escapes the allowed set"
//! is certified by an exact size bound instead of a named companion.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use super::{HostRejection, Witness};
use crate::arith::{
    factorize_with, repunit, repunit_u128, small_primes, strip_factor_big,
};
use crate::config::KitConfig;
use crate::order_theory::{f_pq, f_pq_layered};

/// What the forced-companion analysis of repunit(base, f) concluded about
/// prime factors outside `allowed`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Forced {
    /// every prime factor lies inside the allowed set
    AllInside,
    /// the complete set of outside prime factors (exact; value fully split)
    Outside(Vec<u128>),
    /// at least one outside factor exists; `named` lists those found by
    /// scanning (when `scanned` is set the scan covered every prime below
    /// the sieve bound), and the certificate bound proves more remain
    OutsideCertified {
        named: Vec<u128>,
        scanned: bool,
        allowed_part_bits: u64,
        value_bits_lower: u64,
    },
    /// analysis could not decide within the budget (treated as viable)
    Unknown,
}

impl Forced {
    pub(crate) fn impossible_witness(&self, base: u128, f: u128) -> Option<Witness> {
        match self {
            Forced::AllInside | Forced::Unknown => None,
            Forced::Outside(list) => Some(Witness::ForcedCompanion {
                base,
                f,
                companion: list[0],
            }),
            Forced::OutsideCertified {
                named,
                allowed_part_bits,
                value_bits_lower,
                ..
            } => {
                if let Some(&c) = named.first() {
                    Some(Witness::ForcedCompanion { base, f, companion: c })
                } else {
                    Some(Witness::CofactorCertificate {
                        base,
                        f,
                        allowed_part_bits: *allowed_part_bits,
                        value_bits_lower: *value_bits_lower,
                    })
                }
            }
        }
    }
}

/// Exact exponent of q in repunit(base, f) = sigma(base^{f-1}), by the
/// valuation formula, without computing the repunit itself.
fn valuation_in_repunit(q: u128, base: u128, f: u128) -> u32 {
    if q == base {
        return 0; // repunit(base, f) = 1 (mod base)
    }
    match crate::order_theory::valuation_sigma(q, base, (f - 1) as u32) {
        Ok(v) => v.v,
        Err(_) => 0,
    }
}

/// Classify the prime factors of repunit(base, f) against `allowed`.
pub(crate) fn forced_outside(
    base: u128,
    f: u128,
    allowed: &BTreeSet<u128>,
    cfg: &KitConfig,
) -> Forced {
    let f32 = match u32::try_from(f) {
        Ok(v) => v,
        Err(_) => return Forced::Unknown,
    };
    // full factorization when the value fits u128 and the budget allows
    if let Some(value) = repunit_u128(base, f32) {
        if let Ok(fac) = factorize_with(value, cfg.factor_budget, cfg.mr_rounds) {
            let outside: Vec<u128> = fac.primes().filter(|p| !allowed.contains(p)).collect();
            return if outside.is_empty() {
                Forced::AllInside
            } else {
                Forced::Outside(outside)
            };
        }
    }
    // allowed-part bit certificate: repunit(base, f) > 2^bound exactly,
    // since base >= 5 gives repunit > base^{f-1} >= 4^{f-1} = 2^{2(f-1)}
    // and base >= 3 gives at least 2^{f-1}
    let bound: u64 = if base >= 5 {
        2 * (f as u64 - 1)
    } else {
        f as u64 - 1
    };
    let mut part = BigUint::from(1u32);
    for &q in allowed {
        let v = valuation_in_repunit(q, base, f);
        if v > 0 {
            part *= BigUint::from(q).pow(v);
        }
    }
    // scan for small named companions outside the allowed set
    let mut named = Vec::new();
    if let Some(value) = repunit_u128(base, f32) {
        let big = BigUint::from(value);
        let scanned = scan_small(&big, allowed, &mut named);
        let mut rest = big.clone();
        for &q in allowed {
            rest = strip_factor_big(&rest, q).0;
        }
        for &c in &named {
            rest = strip_factor_big(&rest, c).0;
        }
        use num_traits::One;
        if rest.is_one() && named.is_empty() {
            return Forced::AllInside;
        }
        if rest.is_one() {
            return Forced::Outside(named);
        }
        return Forced::OutsideCertified {
            named,
            scanned,
            allowed_part_bits: part.bits(),
            value_bits_lower: big.bits() - 1,
        };
    }
    if part.bits() + 1 < bound {
        // the allowed part cannot account for the repunit: outside factor(s)
        // certainly exist; name small ones when the value is cheap to build
        let mut scanned = false;
        if f <= 4096 {
            let value = repunit(base, f32);
            scanned = scan_small(&value, allowed, &mut named);
        }
        return Forced::OutsideCertified {
            named,
            scanned,
            allowed_part_bits: part.bits(),
            value_bits_lower: bound,
        };
    }
    // bits were inconclusive (only possible for small f); build the value
    let value = repunit(base, f32);
    if value == part {
        return Forced::AllInside;
    }
    let scanned = scan_small(&value, allowed, &mut named);
    let cofactor = strip_all(&value, allowed, &named);
    if let Some(small) = cofactor.to_u128() {
        if small > 1 {
            if let Ok(fac) = factorize_with(small, cfg.factor_budget, cfg.mr_rounds) {
                for p in fac.primes() {
                    if !allowed.contains(&p) && !named.contains(&p) {
                        named.push(p);
                    }
                }
                named.sort_unstable();
                return Forced::Outside(named);
            }
        } else if !named.is_empty() {
            named.sort_unstable();
            return Forced::Outside(named);
        } else {
            return Forced::AllInside;
        }
    }
    Forced::OutsideCertified {
        named,
        scanned,
        allowed_part_bits: part.bits(),
        value_bits_lower: value.bits() - 1,
    }
}

/// Trial-divide by every cached small prime outside `allowed`, collecting up
/// to four hits.  Returns true when the scan ran to completion (so an empty
/// result really means no small factor escapes the allowed set).
fn scan_small(value: &BigUint, allowed: &BTreeSet<u128>, named: &mut Vec<u128>) -> bool {
    use num_traits::Zero;
    for &p in small_primes() {
        let p = p as u128;
        if allowed.contains(&p) || named.contains(&p) {
            continue;
        }
        if (value % BigUint::from(p)).is_zero() {
            named.push(p);
            if named.len() >= 4 {
                return false;
            }
        }
    }
    true
}

fn strip_all(value: &BigUint, allowed: &BTreeSet<u128>, named: &[u128]) -> BigUint {
    let mut rest = value.clone();
    for &q in allowed.iter().chain(named.iter()) {
        rest = strip_factor_big(&rest, q).0;
    }
    rest
}

/// Can prime `host` carry q | sigma(host^{2a})?  Returns the witness that it
/// cannot, or None when hosting is viable (all forced companions allowed).
pub(crate) fn host_rejection(
    q: u128,
    host: u128,
    allowed: &BTreeSet<u128>,
    cfg: &KitConfig,
) -> Option<Witness> {
    let profile = match f_pq(q, host) {
        Ok(p) => p,
        Err(_) => return None,
    };
    let f = match profile.f {
        Some(f) => f,
        None => return Some(Witness::NoOddOrder { p: q, q: host }),
    };
    forced_outside(host, f, allowed, cfg).impossible_witness(host, f)
}

/// Viability of each member of `set` as a host for a factor of
/// sigma(5^{2a1}).  3 and 5 themselves never divide it.
pub(crate) fn sigma5_rejections(
    set: &BTreeSet<u128>,
    allowed: &BTreeSet<u128>,
    cfg: &KitConfig,
) -> (Vec<u128>, Vec<HostRejection>) {
    let mut viable = Vec::new();
    let mut rejections = Vec::new();
    for &p in set {
        if p == 5 {
            continue;
        }
        let profile = match f_pq(p, 5) {
            Ok(prof) => prof,
            Err(_) => continue,
        };
        match profile.f {
            None => rejections.push(HostRejection {
                host: p,
                why: Witness::NoOddOrder { p, q: 5 },
            }),
            Some(f) => match forced_outside(5, f, allowed, cfg).impossible_witness(5, f) {
                Some(w) => rejections.push(HostRejection { host: p, why: w }),
                None => viable.push(p),
            },
        }
    }
    (viable, rejections)
}

/// Hosting analysis for required divisor q over the concrete six-prime set.
/// `need_exact_two` encodes v_q(sigma(N)) = 2 (the case q = 3): a single
/// viable host must then also reach valuation 2, which forces the deeper
/// repunit level.
pub(crate) fn required_divisor_rejection(
    q: u128,
    set: &BTreeSet<u128>,
    allowed: &BTreeSet<u128>,
    need_exact_two: bool,
    cfg: &KitConfig,
) -> Option<Witness> {
    let mut viable = Vec::new();
    let mut rejections = Vec::new();
    for &p in set {
        if p == q {
            continue;
        }
        match host_rejection(q, p, allowed, cfg) {
            Some(w) => rejections.push(HostRejection { host: p, why: w }),
            None => viable.push(p),
        }
    }
    if viable.is_empty() {
        return Some(Witness::NoHost {
            q,
            valuation_needed: if need_exact_two { 2 } else { 1 },
            rejections,
        });
    }
    if need_exact_two && viable.len() == 1 {
        // one host must reach v_q = 2 alone: its order modulo q^2-level
        // fixes the deeper forcing exponent
        let host = viable[0];
        let deep = match f_pq_layered(q, host, 1) {
            Ok(prof) => prof.f,
            Err(_) => None,
        };
        let deep_witness = match deep {
            None => Some(Witness::NoOddOrder { p: q, q: host }),
            Some(f2) => forced_outside(host, f2, allowed, cfg).impossible_witness(host, f2),
        };
        if let Some(w) = deep_witness {
            rejections.push(HostRejection { host, why: w });
            return Some(Witness::NoHost {
                q,
                valuation_needed: 2,
                rejections,
            });
        }
    }
    None
}

/// Full per-candidate elimination check for the concrete set
/// {fixed} U {p6}.  Tries, in order: a named own-hosting companion for
/// q = 3 then q = 5 (these become the table rows), the sigma(5^{2a1})
/// closure, then every remaining required divisor.  Returns the first kill.
pub(crate) fn kill_subcase(fixed: &[u128], p6: u128, cfg: &KitConfig) -> Option<Witness> {
    let set: BTreeSet<u128> = fixed.iter().copied().chain([p6]).collect();
    let mut allowed = set.clone();
    allowed.insert(3);
    for q in [3u128, 5] {
        if let Some(w) = required_divisor_rejection(q, &set, &allowed, q == 3, cfg) {
            return Some(w);
        }
    }
    let (viable, rejections) = sigma5_rejections(&set, &allowed, cfg);
    if viable.is_empty() {
        return Some(Witness::SigmaFiveNoHost { rejections });
    }
    for &q in &set {
        if q == 3 || q == 5 {
            continue;
        }
        if let Some(w) = required_divisor_rejection(q, &set, &allowed, false, cfg) {
            return Some(w);
        }
    }
    None
}

/// Own-hosting companion row for a p6 candidate: the first q in {3, 5} whose
/// hosting by p6 forces a named companion outside the allowed set.  This is
/// what the companion tables record.
pub(crate) fn own_host_row(fixed: &[u128], p6: u128, cfg: &KitConfig) -> Option<(u128, u128, u128)> {
    let mut allowed: BTreeSet<u128> = fixed.iter().copied().chain([3, p6]).collect();
    allowed.insert(5);
    for q in [3u128, 5] {
        if p6 % q != 1 {
            continue;
        }
        let profile = match f_pq(q, p6) {
            Ok(p) => p,
            Err(_) => continue,
        };
        let Some(f) = profile.f else { continue };
        match forced_outside(p6, f, &allowed, cfg) {
            Forced::Outside(list) if !list.is_empty() => return Some((q, f, list[0])),
            Forced::OutsideCertified { named, .. } if !named.is_empty() => {
                return Some((q, f, named[0]))
            }
            _ => {}
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn widest_chain_allowed(p6: u128) -> BTreeSet<u128> {
        [3u128, 5, 7, 11, 13, 29, p6].into_iter().collect()
    }

    #[test]
    fn forced_outside_names_small_companions() {
        let cfg = KitConfig::default();
        // repunit(5,5) = 781 = 11 * 71: with 71 outside, it is named
        let allowed: BTreeSet<u128> = [3u128, 5, 7, 11, 13, 29, 31].into_iter().collect();
        match forced_outside(5, 5, &allowed, &cfg) {
            Forced::Outside(list) => assert_eq!(list, vec![71]),
            other => panic!("expected named outside factor, got {other:?}"),
        }
        // with 71 allowed everything stays inside
        let allowed: BTreeSet<u128> = [3u128, 5, 11, 71].into_iter().collect();
        assert_eq!(forced_outside(5, 5, &allowed, &cfg), Forced::AllInside);
    }

    #[test]
    fn forced_outside_certifies_huge_repunits() {
        let cfg = KitConfig::default();
        // f = 4905 makes repunit(5, f) far beyond factoring; the bit bound
        // still proves an escape from the allowed set
        let allowed = widest_chain_allowed(9811);
        match forced_outside(5, 4905, &allowed, &cfg) {
            Forced::OutsideCertified { allowed_part_bits, value_bits_lower, .. } => {
                assert!(allowed_part_bits + 1 < value_bits_lower);
            }
            Forced::Outside(_) => {} // naming one is even better
            other => panic!("expected certificate, got {other:?}"),
        }
    }

    #[test]
    fn sigma5_hosts_of_the_5_7_11_19_23_chain() {
        let cfg = KitConfig::default();
        // {5,7,11,19,23} with p6 = 37: nobody can host sigma(5^{2a1})
        let set: BTreeSet<u128> = [5u128, 7, 11, 19, 23, 37].into_iter().collect();
        let mut allowed = set.clone();
        allowed.insert(3);
        let (viable, rejections) = sigma5_rejections(&set, &allowed, &cfg);
        assert!(viable.is_empty(), "viable: {viable:?}");
        assert_eq!(rejections.len(), set.len() - 1);
        // 11 is rejected by its companion 71, 19 by 829 or 31
        let why_11 = rejections.iter().find(|r| r.host == 11).unwrap();
        assert_eq!(
            why_11.why,
            Witness::ForcedCompanion { base: 5, f: 5, companion: 71 }
        );
        // with p6 = 59 the rejection of 59 forces 35671
        let set59: BTreeSet<u128> = [5u128, 7, 11, 19, 23, 59].into_iter().collect();
        let mut allowed59 = set59.clone();
        allowed59.insert(3);
        let (viable59, rej59) = sigma5_rejections(&set59, &allowed59, &cfg);
        assert!(viable59.is_empty());
        let why_59 = rej59.iter().find(|r| r.host == 59).unwrap();
        match &why_59.why {
            Witness::ForcedCompanion { base: 5, f: 29, companion } => {
                assert_eq!(*companion, 35671)
            }
            other => panic!("expected 35671 companion, got {other:?}"),
        }
    }

    #[test]
    fn widest_chain_61_dies_at_valuation_two() {
        let cfg = KitConfig::default();
        let fixed = [5u128, 7, 11, 13, 29];
        let w = kill_subcase(&fixed, 61, &cfg).expect("61 must die");
        // 3 needs valuation 2 but only 13 can host it at level one, and the
        // deeper level forces 1609669 out of the allowed set
        match &w {
            Witness::NoHost { q: 3, valuation_needed: 2, .. } => {}
            other => panic!("unexpected kill witness {other:?}"),
        }
    }

    #[test]
    fn own_host_rows_match_companion_tables() {
        let cfg = KitConfig::default();
        let fixed = [5u128, 7, 11, 13, 29];
        // 1171: repunit(1171,3) = 3 * 7 * 65353
        let (q, f, c) = own_host_row(&fixed, 1171, &cfg).unwrap();
        assert_eq!((q, f, c), (3, 3, 65353));
        // 8191: repunit(8191,3) = 3 * 22366891
        let (q, f, c) = own_host_row(&fixed, 8191, &cfg).unwrap();
        assert_eq!((q, f, c), (3, 3, 22366891));
        // 61: repunit(61,3) = 3 * 13 * 97
        let (q, f, c) = own_host_row(&fixed, 61, &cfg).unwrap();
        assert_eq!((q, f, c), (3, 3, 97));
    }
}
