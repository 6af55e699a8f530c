//! Necessary conditions for a friend of 10, composed into a filter pipeline,
//! plus the partition bound, the Omega(N) lower bound, the explicit upper
//! bound on N, and the E_q sets.

mod partition;
mod search;

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use partition::{for_each_partition, min_partition_value, PartitionStats};
pub use search::{search_range, sieve_friends, SearchOptions, SearchSummary};

use crate::abundancy::abundancy;
use crate::arith::{factorize_big, ArithError, ExactRatio, Factorization};
use crate::config::{KitConfig, OmegaMode};
use crate::order_theory::{f_pq, valuation_sigma};

/// The five Fermat primes.
pub const FERMAT_PRIMES: [u128; 5] = [3, 5, 17, 257, 65537];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConditionError {
    #[error("{0} is not a Fermat prime")]
    NotFermatPrime(u128),
    #[error("{fermat} does not divide the candidate")]
    FermatNotDividing { fermat: u128 },
    #[error("candidate is not of the form 5^2a * m^2 (odd square with 5-part)")]
    NotCandidateForm,
    #[error("upper bound needs K >= 2a (got K={k}, a={a})")]
    BoundExponent { k: u32, a: u32 },
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// Stable identifiers for the pipeline conditions, in default run order
/// (cheapest first).  The sigma-closure step runs only when everything
/// cheaper has passed; the exact test is always last.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConditionKind {
    /// N > 10, odd, a perfect square, divisible by 5, least prime factor 5.
    OddSquare5,
    /// omega(N) >= 7 (or >= 6 with the chain engine, per config).
    Omega,
    /// some prime factor = 1 (mod 10).
    Mod10,
    /// some prime factor = 1 (mod 6).
    Mod6,
    /// the f-condition at the 5-part: some p | N with odd f > 1,
    /// 5^f = 1 (mod p), f | 2a+1, f <= min(2a+1, p-1).
    FCondition,
    /// for every Fermat prime F | N some prime factor = 1 (mod 2F).
    Fermat,
    /// m in N = 5^2a m^2 must not be squarefree.
    NonSquarefreeM,
    /// Omega(N) >= 2 omega(N) + 6a - 4.
    BigOmega,
    /// every prime factor of every sigma(p^2a) lies in {3, 5, p_2, ..., p_m}.
    SigmaClosure,
    /// the exact test I(N) = 9/5.
    Exact,
}

impl ConditionKind {
    pub const DEFAULT_ORDER: [ConditionKind; 10] = [
        ConditionKind::OddSquare5,
        ConditionKind::Omega,
        ConditionKind::Mod10,
        ConditionKind::Mod6,
        ConditionKind::FCondition,
        ConditionKind::Fermat,
        ConditionKind::NonSquarefreeM,
        ConditionKind::BigOmega,
        ConditionKind::SigmaClosure,
        ConditionKind::Exact,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ConditionKind::OddSquare5 => "odd-square-5",
            ConditionKind::Omega => "omega",
            ConditionKind::Mod10 => "mod10",
            ConditionKind::Mod6 => "mod6",
            ConditionKind::FCondition => "f-condition",
            ConditionKind::Fermat => "fermat",
            ConditionKind::NonSquarefreeM => "non-squarefree-m",
            ConditionKind::BigOmega => "big-omega",
            ConditionKind::SigmaClosure => "sigma-closure",
            ConditionKind::Exact => "exact",
        }
    }

    pub fn parse(name: &str) -> Option<ConditionKind> {
        Self::DEFAULT_ORDER
            .into_iter()
            .find(|k| k.name() == name)
    }
}

/// Outcome of one condition on one candidate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConditionOutcome {
    Pass,
    Reject { witness: String },
    Skipped { reason: String },
}

/// Machine-readable verdict for a candidate: which conditions ran, which
/// rejected, with concrete witnesses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterReport {
    pub candidate_expr: String,
    pub candidate_value: String,
    pub verdict: Verdict,
    pub rejections: Vec<(String, String)>,
    pub checked: Vec<String>,
    pub skipped: Vec<(String, String)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Reject,
}

/// Split an odd square divisible by 5 as (a, m) with N = 5^{2a} m^2,
/// m coprime to 10.  None when N is not of that shape.
pub fn five_part_split(n: &Factorization) -> Option<(u32, Factorization)> {
    if !n.is_odd() || !n.is_square() || n.is_one() {
        return None;
    }
    let e5 = n.exponent_of(5);
    if e5 == 0 || !e5.is_multiple_of(2) {
        return None;
    }
    let rest: Vec<(u128, u32)> = n
        .pairs()
        .iter()
        .filter(|&&(p, _)| p != 5)
        .map(|&(p, e)| (p, e / 2))
        .collect();
    Some((e5 / 2, Factorization::from_raw_unchecked(rest)))
}

/// Corollary condition at the 5-part: find a prime factor p with an odd
/// f > 1 such that 5^f = 1 (mod p), f | 2a+1 and f <= min(2a+1, p-1).
pub fn corollary_1_5(n: &Factorization) -> Result<Option<(u128, u128)>, ConditionError> {
    let (a, _) = five_part_split(n).ok_or(ConditionError::NotCandidateForm)?;
    let two_a_plus_1 = 2 * a as u128 + 1;
    for p in n.primes() {
        if p == 5 {
            continue;
        }
        let profile = f_pq(p, 5).map_err(|_| ConditionError::NotCandidateForm)?;
        if let Some(f) = profile.f {
            if two_a_plus_1.is_multiple_of(f) && f <= two_a_plus_1.min(p - 1) {
                return Ok(Some((p, f)));
            }
        }
    }
    Ok(None)
}

/// True iff some prime factor of N is congruent to 1 mod 2 F_k.
pub fn fermat_condition(n: &Factorization, fermat: u128) -> Result<bool, ConditionError> {
    if !FERMAT_PRIMES.contains(&fermat) {
        return Err(ConditionError::NotFermatPrime(fermat));
    }
    if n.exponent_of(fermat) == 0 {
        return Err(ConditionError::FermatNotDividing { fermat });
    }
    Ok(n.primes().any(|p| p % (2 * fermat) == 1))
}

/// For N = 5^2a m^2: is m squarefree?  A candidate must be rejected when
/// this returns true.
pub fn squarefree_m(n: &Factorization) -> Result<bool, ConditionError> {
    let (_, m) = five_part_split(n).ok_or(ConditionError::NotCandidateForm)?;
    Ok(m.pairs().iter().all(|&(_, e)| e == 1))
}

/// The Omega(N) lower bound 2 omega(N) + 6a - 4: returns (bound, actual,
/// pass).  The 8a - 4 partition minimum is what the 6a - 4 term comes from:
/// bound = 2(omega - 1) + 2a + (8a - 4).
pub fn big_omega_bound(n: &Factorization) -> Result<(u32, u32, bool), ConditionError> {
    let (a, _) = five_part_split(n).ok_or(ConditionError::NotCandidateForm)?;
    debug_assert_eq!(
        min_partition_value(2 * a - 1, 5).min_value,
        8 * a as u128 - 4
    );
    let bound = 2 * n.omega() + 6 * a - 4;
    let actual = n.big_omega();
    Ok((bound, actual, actual >= bound))
}

/// Exact value of the explicit upper bound 5 * 6^((2^(K-2a+1) - 1)^2).
pub fn upper_bound_n(k: u32, a: u32) -> Result<BigUint, ConditionError> {
    if k < 2 * a {
        return Err(ConditionError::BoundExponent { k, a });
    }
    let shift = k - 2 * a + 1;
    let two_pow = BigUint::one() << shift;
    let inner = &two_pow - BigUint::one();
    let exponent = (&inner * &inner)
        .to_u32()
        .ok_or(ConditionError::Arith(ArithError::Overflow))?;
    Ok(BigUint::from(5u32) * BigUint::from(6u32).pow(exponent))
}

/// E_q(N): odd prime factors p of N whose exponent eta = v_p(N) is even and
/// at least 2, with q | sigma(p^eta).
pub fn e_q_set(n: &Factorization, q: u128) -> Result<BTreeSet<u128>, ConditionError> {
    if q < 3 || q.is_multiple_of(2) {
        return Err(ConditionError::NotFermatPrime(q));
    }
    let mut out = BTreeSet::new();
    for &(p, eta) in n.pairs() {
        if p == 2 || p == q || eta < 2 || eta % 2 != 0 {
            continue;
        }
        let val = valuation_sigma(q, p, eta).map_err(|_| ConditionError::NotCandidateForm)?;
        if val.v > 0 {
            out.insert(p);
        }
    }
    Ok(out)
}

fn omega_check(n: &Factorization, cfg: &KitConfig) -> ConditionOutcome {
    let omega = n.omega();
    match cfg.omega_mode {
        OmegaMode::SevenTheorem => {
            if omega >= 7 {
                ConditionOutcome::Pass
            } else {
                ConditionOutcome::Reject {
                    witness: format!("omega(N) = {omega} < 7"),
                }
            }
        }
        OmegaMode::SixPlusChains => {
            if omega >= 7 {
                return ConditionOutcome::Pass;
            }
            if omega < 6 {
                return ConditionOutcome::Reject {
                    witness: format!("omega(N) = {omega} < 6"),
                };
            }
            // six distinct primes: either the radical's abundancy supremum
            // already falls short of 9/5, or the prime set lies in one of
            // the enumerated chains and the elimination engine kills it
            let radical: Vec<u128> = n.primes().collect();
            let sup = crate::abundancy::abundancy_sup(&radical).expect("non-empty radical");
            if sup <= ExactRatio::nine_fifths() {
                return ConditionOutcome::Reject {
                    witness: format!("six primes with I supremum {sup} <= 9/5"),
                };
            }
            match crate::chains::eliminate_prime_set(&radical, cfg) {
                Ok(reason) => ConditionOutcome::Reject {
                    witness: format!("six-prime chain candidate eliminated: {reason}"),
                },
                Err(e) => ConditionOutcome::Skipped {
                    reason: format!("chain elimination inconclusive: {e}"),
                },
            }
        }
    }
}

fn sigma_closure_check(n: &Factorization, cfg: &KitConfig) -> ConditionOutcome {
    let allowed: BTreeSet<u128> = n.primes().chain([3]).collect();
    for &(p, e) in n.pairs() {
        let s = crate::arith::repunit(p, e + 1);
        match factorize_big(&s, cfg.factor_budget, cfg.mr_rounds) {
            Ok(f) => {
                for q in f.primes() {
                    if !allowed.contains(&q) {
                        return ConditionOutcome::Reject {
                            witness: format!(
                                "sigma({p}^{e}) has prime factor {q} outside {{3}} U primes(N)"
                            ),
                        };
                    }
                }
            }
            Err(_) => {
                return ConditionOutcome::Skipped {
                    reason: format!("factorization budget exhausted on sigma({p}^{e})"),
                }
            }
        }
    }
    ConditionOutcome::Pass
}

fn run_condition(kind: ConditionKind, n: &Factorization, cfg: &KitConfig) -> ConditionOutcome {
    let reject = |witness: String| ConditionOutcome::Reject { witness };
    match kind {
        ConditionKind::OddSquare5 => {
            let value = n.value();
            if value <= BigUint::from(10u32) {
                return reject(format!("N = {value} does not exceed 10"));
            }
            if !n.is_odd() {
                return reject("N is even".into());
            }
            if !n.is_square() {
                return reject("N is not a perfect square".into());
            }
            if n.exponent_of(5) == 0 {
                return reject("5 does not divide N".into());
            }
            match n.smallest_prime() {
                Some(5) => ConditionOutcome::Pass,
                Some(p) => reject(format!("least prime factor is {p}, not 5")),
                None => reject("N = 1".into()),
            }
        }
        ConditionKind::Omega => omega_check(n, cfg),
        ConditionKind::Mod10 => {
            if n.primes().any(|p| p % 10 == 1) {
                ConditionOutcome::Pass
            } else {
                reject("no prime factor = 1 (mod 10)".into())
            }
        }
        ConditionKind::Mod6 => {
            if n.primes().any(|p| p % 6 == 1) {
                ConditionOutcome::Pass
            } else {
                reject("no prime factor = 1 (mod 6)".into())
            }
        }
        ConditionKind::FCondition => match corollary_1_5(n) {
            Ok(Some(_)) => ConditionOutcome::Pass,
            Ok(None) => {
                let a = n.exponent_of(5) / 2;
                reject(format!(
                    "no prime factor p admits odd f > 1 with 5^f = 1 (mod p), f | {}",
                    2 * a + 1
                ))
            }
            Err(e) => ConditionOutcome::Skipped {
                reason: e.to_string(),
            },
        },
        ConditionKind::Fermat => {
            for fermat in FERMAT_PRIMES {
                if n.exponent_of(fermat) > 0 {
                    match fermat_condition(n, fermat) {
                        Ok(true) => {}
                        Ok(false) => {
                            return reject(format!("{fermat} | N but no prime = 1 (mod {})", 2 * fermat))
                        }
                        Err(e) => {
                            return ConditionOutcome::Skipped {
                                reason: e.to_string(),
                            }
                        }
                    }
                }
            }
            ConditionOutcome::Pass
        }
        ConditionKind::NonSquarefreeM => match squarefree_m(n) {
            Ok(true) => reject("m in N = 5^2a m^2 is squarefree".into()),
            Ok(false) => ConditionOutcome::Pass,
            Err(e) => ConditionOutcome::Skipped {
                reason: e.to_string(),
            },
        },
        ConditionKind::BigOmega => match big_omega_bound(n) {
            Ok((bound, actual, true)) => {
                debug_assert!(actual >= bound);
                ConditionOutcome::Pass
            }
            Ok((bound, actual, false)) => {
                reject(format!("Omega(N) = {actual} below bound {bound}"))
            }
            Err(e) => ConditionOutcome::Skipped {
                reason: e.to_string(),
            },
        },
        ConditionKind::SigmaClosure => sigma_closure_check(n, cfg),
        ConditionKind::Exact => {
            let i = abundancy(n);
            if i != ExactRatio::nine_fifths() {
                reject(format!("I(N) = {i} != 9/5"))
            } else if n.value() <= BigUint::from(10u32) {
                reject("I(N) = 9/5 but a friend of 10 must exceed 10".into())
            } else {
                ConditionOutcome::Pass
            }
        }
    }
}

/// Run the filter pipeline on a candidate.  All selected conditions run and
/// report, except sigma-closure, which only runs once everything cheaper has
/// passed (it is the only step needing large factorizations).
pub fn check_candidate(n: &Factorization, cfg: &KitConfig) -> FilterReport {
    let order: Vec<ConditionKind> = cfg
        .conditions
        .clone()
        .unwrap_or_else(|| ConditionKind::DEFAULT_ORDER.to_vec());
    let mut rejections = Vec::new();
    let mut checked = Vec::new();
    let mut skipped = Vec::new();
    for kind in &order {
        if *kind == ConditionKind::SigmaClosure && !rejections.is_empty() {
            skipped.push((
                kind.name().to_string(),
                "cheaper filters already rejected".to_string(),
            ));
            continue;
        }
        checked.push(kind.name().to_string());
        match run_condition(*kind, n, cfg) {
            ConditionOutcome::Pass => {}
            ConditionOutcome::Reject { witness } => {
                rejections.push((kind.name().to_string(), witness));
            }
            ConditionOutcome::Skipped { reason } => {
                skipped.push((kind.name().to_string(), reason));
            }
        }
    }
    FilterReport {
        candidate_expr: n.to_expr(),
        candidate_value: n.value().to_string(),
        verdict: if rejections.is_empty() {
            Verdict::Pass
        } else {
            Verdict::Reject
        },
        rejections,
        checked,
        skipped,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::factorize;

    fn cfg() -> KitConfig {
        KitConfig::default()
    }

    #[test]
    fn rejects_10() {
        let report = check_candidate(&factorize(10).unwrap(), &cfg());
        assert_eq!(report.verdict, Verdict::Reject);
        assert!(report
            .rejections
            .iter()
            .any(|(name, _)| name == "odd-square-5"));
    }

    #[test]
    fn six_prime_squarefree_candidate() {
        // six distinct primes with m squarefree: rejected by both the omega
        // count and the squarefree-m condition
        let n: Factorization = "5^2*7^2*11^2*13^2*17^2*19^2".parse().unwrap();
        let report = check_candidate(&n, &cfg());
        assert_eq!(report.verdict, Verdict::Reject);
        let names: Vec<&str> = report.rejections.iter().map(|(n, _)| n.as_str()).collect();
        assert!(names.contains(&"omega"));
        assert!(names.contains(&"non-squarefree-m"));
    }

    #[test]
    fn mod10_rejection() {
        // no prime factor = 1 (mod 10)
        let n: Factorization = "5^2*7^4*11^2*13^2*17^2*19^2*23^2".parse().unwrap();
        let report = check_candidate(&n, &cfg());
        let mod10 = report
            .rejections
            .iter()
            .find(|(name, _)| name == "mod10");
        // 11 = 1 (mod 10), so this particular set passes mod10; build one
        // without 11 instead
        assert!(mod10.is_none());
        let n: Factorization = "5^2*7^4*13^2*17^2*19^2*23^2*29^2".parse().unwrap();
        let report = check_candidate(&n, &cfg());
        assert!(report
            .rejections
            .iter()
            .any(|(name, _)| name == "mod10"));
    }

    #[test]
    fn fermat_condition_cases() {
        let with_103: Factorization = "17^2*103^2".parse().unwrap();
        assert!(fermat_condition(&with_103, 17).unwrap()); // 103 = 3*34 + 1
        let with_107: Factorization = "17^2*107^2".parse().unwrap();
        assert!(!fermat_condition(&with_107, 17).unwrap()); // 106 = 2*53
        let n5_11: Factorization = "5^2*11^2".parse().unwrap();
        assert!(fermat_condition(&n5_11, 5).unwrap()); // 11 = 1 (mod 10)
        let n5_31: Factorization = "5^2*31^2".parse().unwrap();
        assert!(fermat_condition(&n5_31, 5).unwrap()); // 31 = 1 (mod 10)
        let n5_13: Factorization = "5^2*13^2".parse().unwrap();
        assert!(!fermat_condition(&n5_13, 5).unwrap());
        assert!(matches!(
            fermat_condition(&n5_13, 7),
            Err(ConditionError::NotFermatPrime(7))
        ));
        assert!(matches!(
            fermat_condition(&n5_13, 17),
            Err(ConditionError::FermatNotDividing { .. })
        ));
    }

    #[test]
    fn corollary_1_5_witnesses() {
        let n: Factorization = "5^2*31^2".parse().unwrap();
        assert_eq!(corollary_1_5(&n).unwrap(), Some((31, 3)));
        // none of these primes admits an odd f dividing 3
        let n: Factorization = "5^2*7^2*13^2*17^2*19^2*23^2".parse().unwrap();
        assert_eq!(corollary_1_5(&n).unwrap(), None);
        let n: Factorization = "5^4*11^2".parse().unwrap();
        assert_eq!(corollary_1_5(&n).unwrap(), Some((11, 5)));
    }

    #[test]
    fn squarefree_m_cases() {
        let sf: Factorization = "5^2*7^2*11^2".parse().unwrap();
        assert!(squarefree_m(&sf).unwrap());
        let non_sf: Factorization = "5^2*7^4*11^2".parse().unwrap();
        assert!(!squarefree_m(&non_sf).unwrap());
        // the 5-part is excluded from m regardless of its exponent
        let sf_high_a: Factorization = "5^6*7^2*11^2".parse().unwrap();
        assert!(squarefree_m(&sf_high_a).unwrap());
    }

    #[test]
    fn big_omega_cases() {
        let n: Factorization = "5^4*7^2*11^2*13^2*17^2*19^2*23^2*29^2".parse().unwrap();
        assert_eq!(big_omega_bound(&n).unwrap(), (24, 18, false));
        let n: Factorization = "5^2*7^6*11^2*13^2*17^2*19^2*31^4".parse().unwrap();
        assert_eq!(big_omega_bound(&n).unwrap(), (16, 20, true));
        // a = 1 gives bound 2 omega + 2
        let n: Factorization = "5^2*7^4*11^2".parse().unwrap();
        let (bound, _, _) = big_omega_bound(&n).unwrap();
        assert_eq!(bound, 2 * 3 + 2);
    }

    #[test]
    fn upper_bound_values() {
        assert_eq!(
            upper_bound_n(3, 1).unwrap(),
            BigUint::from(50_388_480u64) // 5 * 6^9
        );
        assert_eq!(upper_bound_n(2, 1).unwrap(), BigUint::from(30u32));
        assert_eq!(upper_bound_n(5, 2).unwrap(), upper_bound_n(3, 1).unwrap());
        assert!(matches!(
            upper_bound_n(1, 1),
            Err(ConditionError::BoundExponent { .. })
        ));
    }

    #[test]
    fn upper_bound_monotone() {
        // increasing in K, decreasing in a
        for a in 1..=3u32 {
            for k in (2 * a)..(2 * a + 4) {
                assert!(upper_bound_n(k, a).unwrap() < upper_bound_n(k + 1, a).unwrap());
            }
        }
        for k in 6..=9u32 {
            for a in 1..=(k / 2 - 1) {
                assert!(upper_bound_n(k, a).unwrap() > upper_bound_n(k, a + 1).unwrap());
            }
        }
    }

    #[test]
    fn omega_m_inequality_chain() {
        // from Omega(N) >= 2 omega(N) + 6a - 4 and Omega(N) = 2a + 2 Omega(m):
        // Omega(m) >= omega(N) + 2a - 2 = omega(m) + 2a - 1 for every
        // candidate passing the bound.  The boundary candidate below passes
        // with equality, so the constants cannot be raised further.
        let candidates: [Factorization; 3] = [
            "5^2*7^4*11^2*13^2*17^2*19^2*23^2".parse().unwrap(),
            "5^2*7^6*11^2*13^2*17^2*19^2*31^4".parse().unwrap(),
            "5^4*11^6*31^6*41^4*61^2*71^2*101^2*131^2".parse().unwrap(),
        ];
        for n in &candidates {
            let (bound, actual, pass) = big_omega_bound(n).unwrap();
            assert!(pass, "candidate should pass: {bound} vs {actual}");
            let (a, m) = five_part_split(n).unwrap();
            let omega_n = n.omega();
            let omega_m = m.omega();
            let big_omega_m = m.big_omega();
            assert!(big_omega_m + 2 >= omega_n + 2 * a);
            assert!(big_omega_m + 1 >= omega_m + 2 * a);
        }
        // tight at the first candidate: Omega(m) = omega(N) + 2a - 2 exactly
        let (_, m) = five_part_split(&candidates[0]).unwrap();
        assert_eq!(m.big_omega(), candidates[0].omega() + 2 * 1 - 2);
    }

    #[test]
    fn e_q_sets() {
        let n: Factorization = "5^2*11^4*71^2".parse().unwrap();
        assert_eq!(e_q_set(&n, 5).unwrap(), BTreeSet::from([11]));
        let n25: Factorization = "5^2".parse().unwrap();
        assert!(e_q_set(&n25, 3).unwrap().is_empty());
        let n31: Factorization = "5^2*31^2".parse().unwrap();
        assert_eq!(e_q_set(&n31, 31).unwrap(), BTreeSet::from([5]));
    }

    #[test]
    fn sigma_closure_detects_escape() {
        // sigma(5^2) = 31 escapes {3, 5, 7} (and sigma(7^2) = 57 = 3*19
        // would too); the first factor checked wins
        let n: Factorization = "5^2*7^2".parse().unwrap();
        let outcome = sigma_closure_check(&n, &cfg());
        match outcome {
            ConditionOutcome::Reject { witness } => assert!(witness.contains("31")),
            other => panic!("expected reject, got {other:?}"),
        }
    }

    #[test]
    fn condition_selector_runs_subset() {
        let mut config = cfg();
        config.conditions = Some(vec![ConditionKind::Mod10, ConditionKind::Mod6]);
        let n: Factorization = "5^2*7^4*13^2".parse().unwrap();
        let report = check_candidate(&n, &config);
        assert_eq!(report.checked, vec!["mod10", "mod6"]);
        assert!(report
            .rejections
            .iter()
            .all(|(name, _)| name == "mod10" || name == "mod6"));
    }

    #[test]
    fn omega_six_plus_chains_mode() {
        let mut config = cfg();
        config.omega_mode = OmegaMode::SixPlusChains;
        // a six-prime set whose supremum falls below 9/5
        let low: Factorization = "5^2*7^2*13^2*29^2*31^2*37^2".parse().unwrap();
        match omega_check(&low, &config) {
            ConditionOutcome::Reject { witness } => assert!(witness.contains("supremum")),
            other => panic!("expected supremum rejection, got {other:?}"),
        }
        // a six-prime set inside a chain: the engine eliminates it
        let in_chain: Factorization = "5^2*7^2*11^2*13^2*17^2*19^2".parse().unwrap();
        match omega_check(&in_chain, &config) {
            ConditionOutcome::Reject { witness } => assert!(witness.contains("eliminated")),
            other => panic!("expected chain rejection, got {other:?}"),
        }
    }
}
