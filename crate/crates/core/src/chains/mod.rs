//! Six-prime chain enumeration and elimination.
//!
//! A chain fixes five primes (always starting at 5) and carries the interval
//! of admissible sixth primes p6 — exactly those keeping the abundancy
//! supremum prod p/(p-1) above 9/5.  Eliminating every chain re-derives the
//! theorem that a friend of 10 needs at least seven distinct prime factors.

mod hosting;
mod tactics;
pub mod tables;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

pub use tactics::{eliminate_prime_set, hosting_viable, residue_classes_mod, TacticKind};

use crate::abundancy::abundancy_sup;
use crate::arith::{repunit, small_primes, ExactRatio, Factorization};
use crate::config::KitConfig;
use crate::order_theory::f_pq;

/// Admissible sixth primes of a chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum P6Range {
    Bounded { lo: u128, hi: u128 },
    Unbounded { lo: u128 },
}

/// One maximal six-prime family 5^{2a1} p2^{2a2} ... p6^{2a6}.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chain {
    /// Index in lexicographic enumeration order, 1-based.
    pub id: usize,
    /// The five fixed primes, strictly increasing, starting at 5.
    pub fixed: Vec<u128>,
    pub p6: P6Range,
}

/// Which p6 sub-cases one elimination step covers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Coverage {
    WholeChain,
    AllButP6 { keep: u128 },
    P6Set { values: Vec<u128> },
}

/// A congruence constraint on p6 derived from a required divisor of
/// sigma(N): p6 must be congruent to one of `residues` modulo `modulus`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceConstraint {
    pub q: u128,
    pub modulus: u128,
    pub residues: Vec<u128>,
}

/// Why one host prime cannot carry a required divisor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HostRejection {
    pub host: u128,
    pub why: Witness,
}

/// Machine-checkable witness attached to every elimination step.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Witness {
    /// no prime of the chain can be congruent to 1 mod `modulus`, which the
    /// Fermat prime `fermat` | N requires of some prime factor
    FermatClassEmpty { fermat: u128, modulus: u128 },
    /// exact lower bound on the abundancy of the sub-family exceeds 9/5
    AbundancyExceeds { exponents: String, value: String },
    /// raising the 5-exponent past 2 exceeds 9/5, pinning it to 2 and
    /// forcing sigma(5^2) = 31 into the prime set
    ExponentPin {
        escalated: String,
        value: String,
        forced_p6: u128,
    },
    /// `companion` divides repunit(base, f) and lies outside the allowed
    /// set, so base^* cannot host the implied divisor
    ForcedCompanion { base: u128, f: u128, companion: u128 },
    /// repunit(base, f) strictly exceeds its allowed-prime part, proving an
    /// unnamed factor escapes the allowed set
    CofactorCertificate {
        base: u128,
        f: u128,
        allowed_part_bits: u64,
        value_bits_lower: u64,
    },
    /// no odd exponent e > 1 has q^e = 1 mod p^k: p can never divide
    /// sigma(q^{2a})
    NoOddOrder { p: u128, q: u128 },
    /// required divisor q of sigma(N) has no viable host at the needed
    /// valuation
    NoHost {
        q: u128,
        valuation_needed: u32,
        rejections: Vec<HostRejection>,
    },
    /// sigma(5^{2a1}) needs a prime factor from the chain, but no member
    /// can host one
    SigmaFiveNoHost { rejections: Vec<HostRejection> },
    /// hosting constraints confine p6 to residue classes (plus residual
    /// explicit sub-cases treated separately)
    CongruenceClasses {
        constraints: Vec<CongruenceConstraint>,
        merged_modulus: u128,
        merged_classes: Vec<u128>,
        residuals: Vec<u128>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EliminationStep {
    pub tactic: String,
    pub description: String,
    pub coverage: Coverage,
    pub witness: Witness,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChainStatus {
    Eliminated,
    Open { uncovered: Vec<String> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EliminationReport {
    pub chain: Chain,
    pub steps: Vec<EliminationStep>,
    pub status: ChainStatus,
}

/// Enumerate all maximal chains for the given number of distinct primes
/// (the theorem's case is 6).  Prefixes are explored in lexicographic
/// order with exact-rational feasibility pruning.
pub fn enumerate_chains(num_primes: usize) -> Vec<Chain> {
    assert!(num_primes >= 2, "a chain needs at least two primes");
    let nine_fifths = ExactRatio::nine_fifths();
    let odd_primes: Vec<u128> = small_primes()
        .iter()
        .map(|&p| p as u128)
        .filter(|&p| p > 5)
        .collect();
    let fixed_len = num_primes - 1;
    let mut chains = Vec::new();
    let mut prefix: Vec<u128> = vec![5];

    fn sup_of(primes: &[u128]) -> ExactRatio {
        abundancy_sup(primes).expect("non-empty prime list")
    }

    fn extend(
        prefix: &mut Vec<u128>,
        start: usize,
        fixed_len: usize,
        odd_primes: &[u128],
        nine_fifths: &ExactRatio,
        chains: &mut Vec<Chain>,
    ) {
        if prefix.len() == fixed_len {
            // close the chain: p6 ranges over primes past the last fixed one
            let base = sup_of(prefix);
            let lo = *odd_primes
                .iter()
                .find(|&&p| p > *prefix.last().unwrap())
                .expect("sieve covers the range");
            let mut with_lo = prefix.clone();
            with_lo.push(lo);
            if sup_of(&with_lo) <= *nine_fifths {
                return; // no admissible p6 at all
            }
            let range = if base > *nine_fifths {
                P6Range::Unbounded { lo }
            } else {
                // largest prime x with base * x/(x-1) > 9/5, exactly:
                // x * (9 d - 5 n) < 9 d for base = n/d
                let n = base.numerator();
                let d = base.denominator();
                let deficit = (d * 9u32) - (n * 5u32);
                let nine_d = d * 9u32;
                let mut hi = lo;
                for &p in odd_primes.iter().filter(|&&p| p >= lo) {
                    if num_bigint::BigUint::from(p) * &deficit < nine_d {
                        hi = p;
                    } else {
                        break;
                    }
                }
                P6Range::Bounded { lo, hi }
            };
            chains.push(Chain {
                id: 0, // renumbered after the scan
                fixed: prefix.clone(),
                p6: range,
            });
            return;
        }
        let slots_left = fixed_len - prefix.len();
        for (idx, &p) in odd_primes.iter().enumerate().skip(start) {
            if idx + slots_left + 1 > odd_primes.len() {
                break;
            }
            // feasibility: fill remaining fixed slots and p6 with the very
            // next primes; any larger choice only lowers the supremum
            let mut trial = prefix.clone();
            trial.push(p);
            trial.extend_from_slice(&odd_primes[idx + 1..idx + slots_left + 1]);
            if sup_of(&trial) <= *nine_fifths {
                break;
            }
            prefix.push(p);
            extend(prefix, idx + 1, fixed_len, odd_primes, nine_fifths, chains);
            prefix.pop();
        }
    }

    extend(
        &mut prefix,
        0,
        fixed_len,
        &odd_primes,
        &nine_fifths,
        &mut chains,
    );
    for (i, chain) in chains.iter_mut().enumerate() {
        chain.id = i + 1;
    }
    chains
}

fn range_primes(chain: &Chain) -> Option<Vec<u128>> {
    match chain.p6 {
        P6Range::Bounded { lo, hi } => Some(crate::arith::primes_in_range(lo, hi)),
        P6Range::Unbounded { .. } => None,
    }
}

fn coverage_status(chain: &Chain, steps: &[EliminationStep]) -> ChainStatus {
    let whole = steps
        .iter()
        .any(|s| matches!(s.coverage, Coverage::WholeChain));
    if whole {
        return ChainStatus::Eliminated;
    }
    let mut covered: BTreeSet<u128> = BTreeSet::new();
    let mut all_but: Vec<u128> = Vec::new();
    for step in steps {
        match &step.coverage {
            Coverage::WholeChain => unreachable!(),
            Coverage::AllButP6 { keep } => all_but.push(*keep),
            Coverage::P6Set { values } => covered.extend(values.iter().copied()),
        }
    }
    match range_primes(chain) {
        Some(primes) => {
            let uncovered: Vec<String> = primes
                .iter()
                .copied()
                .filter(|p| !covered.contains(p) && !all_but.iter().any(|keep| keep != p))
                .map(|p| p.to_string())
                .collect();
            if uncovered.is_empty() {
                ChainStatus::Eliminated
            } else {
                ChainStatus::Open { uncovered }
            }
        }
        None => {
            // unbounded tail: either some AllButP6 pin plus coverage of the
            // kept value, or the tail stays open
            for keep in &all_but {
                if covered.contains(keep) || all_but.iter().any(|other| other != keep) {
                    return ChainStatus::Eliminated;
                }
            }
            ChainStatus::Open {
                uncovered: vec!["unbounded tail".into()],
            }
        }
    }
}

/// Run the configured tactics over one chain and assemble its report.
pub fn eliminate_chain(chain: &Chain, cfg: &KitConfig) -> EliminationReport {
    let mut steps = Vec::new();
    for tactic in &cfg.tactic_order {
        steps.extend(tactic.run(chain, cfg));
        if matches!(coverage_status(chain, &steps), ChainStatus::Eliminated) {
            break;
        }
    }
    let status = coverage_status(chain, &steps);
    EliminationReport {
        chain: chain.clone(),
        steps,
        status,
    }
}

/// Eliminate every chain, in parallel, reporting in chain-id order.  Any
/// chain left open is reported, never dropped.
pub fn eliminate_all(chains: &[Chain], cfg: &KitConfig) -> Vec<EliminationReport> {
    let mut reports: Vec<EliminationReport> = std::thread::scope(|scope| {
        let handles: Vec<_> = chains
            .iter()
            .map(|chain| scope.spawn(move || eliminate_chain(chain, cfg)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("chain elimination worker panicked"))
            .collect()
    });
    reports.sort_by_key(|r| r.chain.id);
    reports
}

/// Independently re-verify one elimination witness.  Used by the test suite
/// to confirm every step of every certificate.
pub fn verify_witness(chain: &Chain, step: &EliminationStep, cfg: &KitConfig) -> Result<(), String> {
    let allowed_for = |p6: Option<u128>| -> BTreeSet<u128> {
        let mut set: BTreeSet<u128> = chain.fixed.iter().copied().collect();
        set.insert(3);
        if let Some(p) = p6 {
            set.insert(p);
        }
        set
    };
    let covered_p6: Vec<u128> = match &step.coverage {
        Coverage::P6Set { values } => values.clone(),
        _ => Vec::new(),
    };
    match &step.witness {
        Witness::FermatClassEmpty { fermat, modulus } => {
            if !chain.fixed.contains(fermat) {
                return Err(format!("{fermat} is not a fixed prime"));
            }
            if *modulus != 2 * fermat {
                return Err("modulus mismatch".into());
            }
            if chain.fixed.iter().any(|&p| p % modulus == 1) {
                return Err("a fixed prime already satisfies the class".into());
            }
            for &p6 in &covered_p6 {
                if p6 % modulus == 1 {
                    return Err(format!("{p6} satisfies the class but was covered"));
                }
            }
            Ok(())
        }
        Witness::AbundancyExceeds { exponents, value } => {
            let f: Factorization = exponents
                .parse()
                .map_err(|e| format!("bad exponent expression: {e}"))?;
            let i = crate::abundancy::abundancy(&f);
            if i.to_string() != *value {
                return Err("stated abundancy does not recompute".into());
            }
            if i <= ExactRatio::nine_fifths() {
                return Err("abundancy does not exceed 9/5".into());
            }
            // the family floor must actually apply to the covered sub-cases
            for &p6 in &covered_p6 {
                if f.exponent_of(p6) == 0 {
                    return Err(format!("{p6} missing from the minimal configuration"));
                }
            }
            Ok(())
        }
        Witness::ExponentPin {
            escalated, value, ..
        } => {
            let f: Factorization = escalated
                .parse()
                .map_err(|e| format!("bad exponent expression: {e}"))?;
            if f.exponent_of(5) != 4 {
                return Err("escalation must raise the 5-exponent to 4".into());
            }
            let i = crate::abundancy::abundancy(&f);
            if i.to_string() != *value || i <= ExactRatio::nine_fifths() {
                return Err("escalated abundancy does not exceed 9/5".into());
            }
            // sigma(5^2) = 31 must then divide N
            if chain.fixed.contains(&31) {
                return Err("31 already fixed; the pin concludes nothing".into());
            }
            Ok(())
        }
        Witness::ForcedCompanion { base, f, companion } => {
            verify_forced_companion(*base, *f, *companion, &allowed_for(covered_p6.first().copied()))
        }
        Witness::CofactorCertificate { base, f, .. } => {
            verify_cofactor_certificate(*base, *f, &allowed_for(covered_p6.first().copied()), cfg)
        }
        Witness::NoOddOrder { p, q } => match f_pq(*p, *q) {
            Ok(profile) => {
                if profile.f.is_none() {
                    Ok(())
                } else {
                    Err(format!("odd order exists for ({p}, {q})"))
                }
            }
            Err(e) => Err(e.to_string()),
        },
        Witness::NoHost { rejections, .. } | Witness::SigmaFiveNoHost { rejections } => {
            for p6 in covered_p6.iter().copied() {
                let allowed = allowed_for(Some(p6));
                for rej in rejections {
                    verify_host_rejection(rej, &allowed, cfg)?;
                }
            }
            if covered_p6.is_empty() {
                return Err("host witnesses need concrete p6 coverage".into());
            }
            Ok(())
        }
        Witness::CongruenceClasses {
            merged_modulus,
            merged_classes,
            residuals,
            ..
        } => {
            for &p6 in &covered_p6 {
                let class = p6 % merged_modulus;
                if merged_classes.contains(&class) && !residuals.contains(&p6) {
                    return Err(format!(
                        "{p6} satisfies the derived classes but was excluded"
                    ));
                }
            }
            Ok(())
        }
    }
}

fn verify_host_rejection(
    rej: &HostRejection,
    allowed: &BTreeSet<u128>,
    cfg: &KitConfig,
) -> Result<(), String> {
    match &rej.why {
        Witness::NoOddOrder { p, q } => match f_pq(*p, *q) {
            Ok(profile) if profile.f.is_none() => Ok(()),
            Ok(_) => Err(format!("odd order exists for ({p}, {q})")),
            Err(e) => Err(e.to_string()),
        },
        Witness::ForcedCompanion { base, f, companion } => {
            verify_forced_companion(*base, *f, *companion, allowed)
        }
        Witness::CofactorCertificate { base, f, .. } => {
            verify_cofactor_certificate(*base, *f, allowed, cfg)
        }
        other => Err(format!("unexpected nested witness {other:?}")),
    }
}

fn verify_forced_companion(
    base: u128,
    f: u128,
    companion: u128,
    allowed: &BTreeSet<u128>,
) -> Result<(), String> {
    use num_traits::Zero;
    if allowed.contains(&companion) {
        return Err(format!("{companion} is inside the allowed set"));
    }
    if !crate::arith::is_prime(companion) {
        return Err(format!("{companion} is not prime"));
    }
    let f32 = u32::try_from(f).map_err(|_| "f too large".to_string())?;
    let value = repunit(base, f32);
    if (&value % num_bigint::BigUint::from(companion)).is_zero() {
        Ok(())
    } else {
        Err(format!("{companion} does not divide repunit({base},{f})"))
    }
}

fn verify_cofactor_certificate(
    base: u128,
    f: u128,
    allowed: &BTreeSet<u128>,
    cfg: &KitConfig,
) -> Result<(), String> {
    let f32 = u32::try_from(f).map_err(|_| "f too large".to_string())?;
    // exact route when the repunit is buildable: strip every allowed prime
    // and check a cofactor remains
    if f32 <= 4096 {
        let mut rest = repunit(base, f32);
        for &q in allowed {
            rest = crate::arith::strip_factor_big(&rest, q).0;
        }
        use num_traits::One;
        if rest.is_one() {
            return Err("repunit is entirely inside the allowed set".into());
        }
        return Ok(());
    }
    // bit-bound route: the allowed part is provably smaller than the value
    let mut part_bits: u64 = 0;
    for &q in allowed {
        if q == base {
            continue;
        }
        if let Ok(v) = crate::order_theory::valuation_sigma(q, base, f32 - 1) {
            if v.v > 0 {
                part_bits += (v.v as u64) * (128 - u128::leading_zeros(q) as u64);
            }
        }
    }
    let value_lower = if base >= 5 {
        2 * (f as u64 - 1)
    } else {
        f as u64 - 1
    };
    if part_bits + 1 < value_lower {
        Ok(())
    } else {
        let _ = cfg;
        Err("bit certificate inconclusive".into())
    }
}

/// The default-bound check used by tests: confirm the enumerated chains are
/// exactly those surviving a brute-force scan with exact rationals.
pub fn brute_force_chain_scan(prefix_cap: u128, p6_cap: u128) -> Vec<(Vec<u128>, u128, Option<u128>)> {
    let nine_fifths = ExactRatio::nine_fifths();
    let primes: Vec<u128> = crate::arith::primes_in_range(7, prefix_cap);
    let tail: Vec<u128> = crate::arith::primes_in_range(7, p6_cap);
    let mut found = Vec::new();
    for (i2, &p2) in primes.iter().enumerate() {
        for (i3, &p3) in primes.iter().enumerate().skip(i2 + 1) {
            for (i4, &p4) in primes.iter().enumerate().skip(i3 + 1) {
                for &p5 in primes.iter().skip(i4 + 1) {
                    let fixed = vec![5, p2, p3, p4, p5];
                    let base = abundancy_sup(&fixed).unwrap();
                    let admissible: Vec<u128> = tail
                        .iter()
                        .copied()
                        .filter(|&p6| p6 > p5)
                        .filter(|&p6| {
                            let mut all = fixed.clone();
                            all.push(p6);
                            abundancy_sup(&all).unwrap() > nine_fifths
                        })
                        .collect();
                    if admissible.is_empty() {
                        continue;
                    }
                    let lo = admissible[0];
                    let hi = if base > nine_fifths {
                        None // unbounded: every larger prime keeps the sup above 9/5
                    } else {
                        Some(*admissible.last().unwrap())
                    };
                    found.push((fixed, lo, hi));
                }
            }
        }
    }
    found
}

/// sigma of a single prime power, shared with reports.
pub fn sigma_value_of_power(p: u128, exponent: u32) -> num_bigint::BigUint {
    repunit(p, exponent + 1)
}
