//! The four elimination tactics.  Each tactic independently reports the
//! sub-cases it kills; the engine overlays them, so final statuses do not
//! depend on tactic order (a tactic only ever eliminates).

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::hosting::{
    forced_outside, host_rejection, kill_subcase, own_host_row, sigma5_rejections, Forced,
};
use super::{Chain, Coverage, EliminationStep, P6Range, Witness};
use crate::abundancy::abundancy;
use crate::arith::{crt_solve, primes_in_range, ExactRatio, Factorization};
use crate::conditions::FERMAT_PRIMES;
use crate::config::KitConfig;
use crate::order_theory::f_pq_layered;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TacticKind {
    Fermat,
    AbundancySqueeze,
    SigmaFiveClosure,
    CongruenceSieve,
}

impl TacticKind {
    pub fn name(self) -> &'static str {
        match self {
            TacticKind::Fermat => "fermat",
            TacticKind::AbundancySqueeze => "squeeze",
            TacticKind::SigmaFiveClosure => "sigma5-closure",
            TacticKind::CongruenceSieve => "congruence-sieve",
        }
    }

    pub fn parse(name: &str) -> Option<TacticKind> {
        match name {
            "fermat" => Some(TacticKind::Fermat),
            "squeeze" | "abundancy-squeeze" => Some(TacticKind::AbundancySqueeze),
            "sigma5-closure" | "closure" => Some(TacticKind::SigmaFiveClosure),
            "congruence-sieve" | "sieve" => Some(TacticKind::CongruenceSieve),
            _ => None,
        }
    }

    pub fn default_order() -> [TacticKind; 4] {
        [
            TacticKind::Fermat,
            TacticKind::AbundancySqueeze,
            TacticKind::SigmaFiveClosure,
            TacticKind::CongruenceSieve,
        ]
    }

    pub fn run(self, chain: &Chain, cfg: &KitConfig) -> Vec<EliminationStep> {
        match self {
            TacticKind::Fermat => tactic_fermat(chain, cfg),
            TacticKind::AbundancySqueeze => tactic_abundancy_squeeze(chain, cfg),
            TacticKind::SigmaFiveClosure => tactic_sigma5_closure(chain, cfg),
            TacticKind::CongruenceSieve => tactic_congruence_sieve(chain, cfg),
        }
    }
}

fn p6_candidates(chain: &Chain) -> Vec<u128> {
    match chain.p6 {
        P6Range::Bounded { lo, hi } => primes_in_range(lo, hi),
        P6Range::Unbounded { .. } => Vec::new(),
    }
}

/// Fermat-prime filter: if F is a Fermat prime in the chain and no fixed
/// prime is 1 (mod 2F), then p6 itself must be, killing every other p6.
pub fn tactic_fermat(chain: &Chain, _cfg: &KitConfig) -> Vec<EliminationStep> {
    let mut steps = Vec::new();
    let candidates = p6_candidates(chain);
    if candidates.is_empty() {
        return steps;
    }
    for fermat in FERMAT_PRIMES {
        if !chain.fixed.contains(&fermat) {
            continue;
        }
        let modulus = 2 * fermat;
        if chain.fixed.iter().any(|&p| p % modulus == 1) {
            continue;
        }
        let killed: Vec<u128> = candidates
            .iter()
            .copied()
            .filter(|&p6| p6 % modulus != 1)
            .collect();
        if killed.is_empty() {
            continue;
        }
        steps.push(EliminationStep {
            tactic: TacticKind::Fermat.name().into(),
            description: format!(
                "{fermat} | N requires a prime factor congruent to 1 mod {modulus}; \
                 no fixed prime qualifies, so p6 = 1 (mod {modulus})"
            ),
            coverage: Coverage::P6Set { values: killed },
            witness: Witness::FermatClassEmpty { fermat, modulus },
        });
    }
    steps
}

fn minimal_exponent_index(primes: &[u128]) -> (String, ExactRatio) {
    let pairs: Vec<(u128, u32)> = primes.iter().map(|&p| (p, 2)).collect();
    let f = Factorization::from_raw_unchecked(pairs);
    (f.to_expr(), abundancy(&f))
}

/// Exact-rational squeeze: the abundancy of any member of the family is at
/// least the value at minimal exponents, so exceeding 9/5 there kills the
/// family.  Includes the one-step exponent escalation: when even 5^4 pushes
/// past 9/5 the 5-exponent is pinned to 2, forcing 31 into the prime set.
pub fn tactic_abundancy_squeeze(chain: &Chain, _cfg: &KitConfig) -> Vec<EliminationStep> {
    let nine_fifths = ExactRatio::nine_fifths();
    let mut steps = Vec::new();
    let (base_expr, base_value) = minimal_exponent_index(&chain.fixed);
    if base_value > nine_fifths {
        steps.push(EliminationStep {
            tactic: TacticKind::AbundancySqueeze.name().into(),
            description: format!(
                "I(N) >= I({base_expr}) = {base_value} > 9/5 for every p6 and all exponents"
            ),
            coverage: Coverage::WholeChain,
            witness: Witness::AbundancyExceeds {
                exponents: base_expr,
                value: base_value.to_string(),
            },
        });
        return steps;
    }
    // per-p6 squeeze on bounded ranges
    for p6 in p6_candidates(chain) {
        let mut primes = chain.fixed.clone();
        primes.push(p6);
        let (expr, value) = minimal_exponent_index(&primes);
        if value > nine_fifths {
            steps.push(EliminationStep {
                tactic: TacticKind::AbundancySqueeze.name().into(),
                description: format!("I(N) >= I({expr}) = {value} > 9/5"),
                coverage: Coverage::P6Set { values: vec![p6] },
                witness: Witness::AbundancyExceeds {
                    exponents: expr,
                    value: value.to_string(),
                },
            });
        }
    }
    // escalation: if raising the 5-exponent to 4 already exceeds 9/5, then
    // 2a1 = 2, so sigma(5^2) = 31 divides sigma(N) and 31 must be a prime
    // factor of N; when 31 is not among the fixed primes it must be p6
    let escalated_pairs: Vec<(u128, u32)> = chain
        .fixed
        .iter()
        .map(|&p| if p == 5 { (p, 4) } else { (p, 2) })
        .collect();
    let escalated = Factorization::from_raw_unchecked(escalated_pairs);
    let escalated_value = abundancy(&escalated);
    if escalated_value > nine_fifths && !chain.fixed.contains(&31) {
        let in_range = match chain.p6 {
            P6Range::Bounded { lo, hi } => lo <= 31 && 31 <= hi,
            P6Range::Unbounded { lo } => lo <= 31,
        };
        let pin = Witness::ExponentPin {
            escalated: escalated.to_expr(),
            value: escalated_value.to_string(),
            forced_p6: 31,
        };
        if !in_range {
            steps.push(EliminationStep {
                tactic: TacticKind::AbundancySqueeze.name().into(),
                description: format!(
                    "I({}) = {escalated_value} > 9/5 pins the 5-exponent to 2, \
                     forcing 31 | N, but 31 cannot be p6 in this range",
                    escalated.to_expr()
                ),
                coverage: Coverage::WholeChain,
                witness: pin,
            });
        } else {
            steps.push(EliminationStep {
                tactic: TacticKind::AbundancySqueeze.name().into(),
                description: format!(
                    "I({}) = {escalated_value} > 9/5 pins the 5-exponent to 2 and \
                     sigma(5^2) = 31 must divide N, so p6 = 31",
                    escalated.to_expr()
                ),
                coverage: Coverage::AllButP6 { keep: 31 },
                witness: pin,
            });
            let mut primes = chain.fixed.clone();
            primes.push(31);
            let (expr, value) = minimal_exponent_index(&primes);
            if value > nine_fifths {
                steps.push(EliminationStep {
                    tactic: TacticKind::AbundancySqueeze.name().into(),
                    description: format!("with p6 = 31 pinned, I(N) >= I({expr}) = {value} > 9/5"),
                    coverage: Coverage::P6Set { values: vec![31] },
                    witness: Witness::AbundancyExceeds {
                        exponents: expr,
                        value: value.to_string(),
                    },
                });
            }
        }
    }
    steps
}

/// sigma(5^{2a1}) closure: its prime factors avoid 3 and 5, so some chain
/// member must host one; kill every p6 for which no member can.
pub fn tactic_sigma5_closure(chain: &Chain, cfg: &KitConfig) -> Vec<EliminationStep> {
    let mut steps = Vec::new();
    for p6 in p6_candidates(chain) {
        let set: BTreeSet<u128> = chain.fixed.iter().copied().chain([p6]).collect();
        let mut allowed = set.clone();
        allowed.insert(3);
        let (viable, rejections) = sigma5_rejections(&set, &allowed, cfg);
        if viable.is_empty() {
            steps.push(EliminationStep {
                tactic: TacticKind::SigmaFiveClosure.name().into(),
                description: format!(
                    "no prime of {{{}}} can divide sigma(5^{{2a1}}) without forcing \
                     a factor outside the allowed set",
                    set.iter()
                        .map(|p| p.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                ),
                coverage: Coverage::P6Set { values: vec![p6] },
                witness: Witness::SigmaFiveNoHost { rejections },
            });
        }
    }
    steps
}

/// Result of the symbolic hosting analysis of required divisor q by a fixed
/// prime: viable outright, viable only when p6 equals a specific companion,
/// or impossible.
enum FixedHost {
    Unconditional,
    ResidualOnly(u128),
    Impossible,
}

fn classify_fixed_host(
    q: u128,
    host: u128,
    fixed_allowed: &BTreeSet<u128>,
    range: (u128, u128),
    layer: u32,
    cfg: &KitConfig,
) -> FixedHost {
    let profile = match f_pq_layered(q, host, layer) {
        Ok(p) => p,
        Err(_) => return FixedHost::Impossible,
    };
    let Some(f) = profile.f else {
        return FixedHost::Impossible;
    };
    match forced_outside(host, f, fixed_allowed, cfg) {
        Forced::AllInside => FixedHost::Unconditional,
        Forced::Unknown => FixedHost::Unconditional, // conservative: no constraint drawn
        Forced::Outside(list) => match list.as_slice() {
            [single] if *single >= range.0 && *single <= range.1 => {
                FixedHost::ResidualOnly(*single)
            }
            _ => FixedHost::Impossible,
        },
        Forced::OutsideCertified { named, scanned, .. } => {
            // a completed scan with no hit means every escape factor exceeds
            // the range cap; a single named small factor may still be p6
            match named.as_slice() {
                [single] if *single >= range.0 && *single <= range.1 => {
                    FixedHost::ResidualOnly(*single)
                }
                [] if scanned => FixedHost::Impossible,
                [] => FixedHost::Unconditional, // undecided: draw no constraint
                _ => FixedHost::Impossible,
            }
        }
    }
}

/// Residues r mod q with r = 1 or odd multiplicative order > 1: the classes
/// a prime must lie in to divide some sigma(p^{2a}) from above.
fn odd_order_residues(q: u128) -> Vec<u128> {
    let mut out = Vec::new();
    for r in 1..q {
        let mut e = 1u32;
        let mut x = r;
        while x != 1 {
            x = x * r % q;
            e += 1;
        }
        if e == 1 || e % 2 == 1 {
            out.push(r);
        }
    }
    out
}

/// Congruence sieve on a bounded chain: derive residue classes p6 must lie
/// in (from the Fermat condition, from 3 at valuation 2, from 5, and from 13
/// when fixed), enumerate survivors plus residual sub-cases, and kill each
/// by hosting analysis.
pub fn tactic_congruence_sieve(chain: &Chain, cfg: &KitConfig) -> Vec<EliminationStep> {
    let P6Range::Bounded { lo, hi } = chain.p6 else {
        return Vec::new();
    };
    let range = (lo, hi);
    let candidates = p6_candidates(chain);
    let fixed_allowed: BTreeSet<u128> = chain.fixed.iter().copied().chain([3]).collect();

    let mut constraints: Vec<super::CongruenceConstraint> = Vec::new();
    let mut residuals: BTreeSet<u128> = BTreeSet::new();

    // Fermat-prime classes
    for fermat in FERMAT_PRIMES {
        if chain.fixed.contains(&fermat) && !chain.fixed.iter().any(|&p| p % (2 * fermat) == 1) {
            constraints.push(super::CongruenceConstraint {
                q: fermat,
                modulus: 2 * fermat,
                residues: vec![1],
            });
        }
    }

    // required divisor 3 at exact valuation 2
    {
        let mut unconditional = Vec::new();
        let mut residual_hosts = Vec::new();
        for &p in &chain.fixed {
            match classify_fixed_host(3, p, &fixed_allowed, range, 0, cfg) {
                FixedHost::Unconditional => unconditional.push(p),
                FixedHost::ResidualOnly(c) => residual_hosts.push((p, c)),
                FixedHost::Impossible => {}
            }
        }
        let constrained = match unconditional.as_slice() {
            [] | [_] => {
                // a single level-one host cannot reach valuation 2 alone
                // unless its deeper level stays inside the allowed set
                let mut deep_escape = true;
                if let [host] = unconditional.as_slice() {
                    match classify_fixed_host(3, *host, &fixed_allowed, range, 1, cfg) {
                        FixedHost::Unconditional => deep_escape = false,
                        FixedHost::ResidualOnly(c) => {
                            residuals.insert(c);
                        }
                        FixedHost::Impossible => {}
                    }
                    // pairing the host with a residual-only host works only
                    // at that residual's value
                    for &(_, c) in &residual_hosts {
                        residuals.insert(c);
                    }
                }
                if unconditional.is_empty() {
                    for &(host, c) in &residual_hosts {
                        // residual host at deeper level, or two residual
                        // hosts sharing one companion: both land on c
                        residuals.insert(c);
                        let _ = host;
                    }
                }
                deep_escape
            }
            _ => false, // two unconditional hosts reach 1 + 1 = 2
        };
        if constrained {
            constraints.push(super::CongruenceConstraint {
                q: 3,
                modulus: 3,
                residues: vec![1],
            });
        }
    }

    // required divisors 5 (always) and 13 (when fixed), at valuation >= 1
    let mut probe_divisors = vec![5u128];
    if chain.fixed.contains(&13) {
        probe_divisors.push(13);
    }
    for q in probe_divisors {
        let mut unconditional = false;
        for &p in &chain.fixed {
            if p == q {
                continue;
            }
            match classify_fixed_host(q, p, &fixed_allowed, range, 0, cfg) {
                FixedHost::Unconditional => unconditional = true,
                FixedHost::ResidualOnly(c) => {
                    residuals.insert(c);
                }
                FixedHost::Impossible => {}
            }
        }
        if !unconditional {
            constraints.push(super::CongruenceConstraint {
                q,
                modulus: q,
                residues: odd_order_residues(q),
            });
        }
    }

    // normalize constraints (two may share a modulus, e.g. the Fermat prime
    // 5 and the required divisor 5), then CRT-merge the residue choices
    // together with the mod-2 class of odd primes
    let mut normalized: std::collections::BTreeMap<u128, BTreeSet<u128>> =
        std::collections::BTreeMap::new();
    normalized.insert(2, BTreeSet::from([1u128]));
    for c in &constraints {
        let odd_mod = if c.modulus % 2 == 0 {
            c.modulus / 2
        } else {
            c.modulus
        };
        let classes: BTreeSet<u128> = c.residues.iter().map(|&r| r % odd_mod).collect();
        normalized
            .entry(odd_mod)
            .and_modify(|existing| {
                existing.retain(|r| classes.contains(r));
            })
            .or_insert(classes);
    }
    let merged_modulus: u128 = normalized.keys().product();
    let mut merged_classes: Vec<u128> = Vec::new();
    {
        let mut partial: Vec<(u128, u128)> = vec![(0, 1)];
        for (&modulus, classes) in &normalized {
            let mut next = Vec::new();
            for &(r0, m0) in &partial {
                for &r in classes {
                    if let Ok(merged) = crt_solve(&[(r0, m0), (r, modulus)]) {
                        next.push(merged);
                    }
                }
            }
            partial = next;
        }
        for &(r, m) in &partial {
            debug_assert_eq!(m, merged_modulus);
            merged_classes.push(r);
        }
        merged_classes.sort_unstable();
    }

    let survivors: Vec<u128> = candidates
        .iter()
        .copied()
        .filter(|&p6| merged_classes.contains(&(p6 % merged_modulus)))
        .collect();
    let residual_list: Vec<u128> = residuals
        .iter()
        .copied()
        .filter(|c| candidates.contains(c) && !survivors.contains(c))
        .collect();

    let mut steps = Vec::new();
    let excluded: Vec<u128> = candidates
        .iter()
        .copied()
        .filter(|p6| !survivors.contains(p6) && !residual_list.contains(p6))
        .collect();
    let class_text = merged_classes
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(", ");
    if !excluded.is_empty() {
        steps.push(EliminationStep {
            tactic: TacticKind::CongruenceSieve.name().into(),
            description: format!(
                "hosting constraints confine p6 to {{{class_text}}} mod {merged_modulus} \
                 (plus {} residual sub-cases)",
                residual_list.len()
            ),
            coverage: Coverage::P6Set { values: excluded },
            witness: Witness::CongruenceClasses {
                constraints: constraints.clone(),
                merged_modulus,
                merged_classes: merged_classes.clone(),
                residuals: residual_list.clone(),
            },
        });
    }

    // per-candidate kills for class survivors and residuals
    for p6 in survivors.iter().chain(residual_list.iter()).copied() {
        let step = match kill_subcase(&chain.fixed, p6, cfg) {
            Some(witness) => {
                let row = own_host_row(&chain.fixed, p6, cfg);
                let row_text = match row {
                    Some((q, f, c)) => format!(
                        "; companion row: {q} | sigma({p6}^{{2a6}}) forces {c} \
                         (factor of repunit({p6},{f}))"
                    ),
                    None => String::new(),
                };
                EliminationStep {
                    tactic: TacticKind::CongruenceSieve.name().into(),
                    description: format!("p6 = {p6} eliminated{row_text}"),
                    coverage: Coverage::P6Set { values: vec![p6] },
                    witness,
                }
            }
            None => continue, // leave uncovered; the chain will report open
        };
        steps.push(step);
    }
    steps
}

/// Targeted elimination of one concrete six-prime radical (used by the
/// omega >= 6 pipeline mode).  Returns a human-readable reason.
pub fn eliminate_prime_set(radical: &[u128], cfg: &KitConfig) -> Result<String, String> {
    if radical.len() != 6 || radical[0] != 5 {
        return Err("radical is not a six-prime set with least prime 5".into());
    }
    let pairs: Vec<(u128, u32)> = radical.iter().map(|&p| (p, 2)).collect();
    let minimal = Factorization::from_raw_unchecked(pairs);
    let value = abundancy(&minimal);
    if value > ExactRatio::nine_fifths() {
        return Ok(format!(
            "I(N) >= I({}) = {value} > 9/5",
            minimal.to_expr()
        ));
    }
    // escalation of the 5-exponent: if 5^4 pushes past 9/5 then 2a1 = 2 and
    // 31 = sigma(5^2) must divide N
    let escalated_pairs: Vec<(u128, u32)> = radical
        .iter()
        .map(|&p| if p == 5 { (p, 4) } else { (p, 2) })
        .collect();
    let escalated = Factorization::from_raw_unchecked(escalated_pairs);
    let esc_value = abundancy(&escalated);
    if esc_value > ExactRatio::nine_fifths() && !radical.contains(&31) {
        return Ok(format!(
            "I({}) = {esc_value} > 9/5 pins the 5-exponent to 2, forcing 31 | N, \
             but 31 is not among the prime factors",
            escalated.to_expr()
        ));
    }
    let fixed = &radical[..5];
    match kill_subcase(fixed, radical[5], cfg) {
        Some(witness) => Ok(format!("{witness:?}")),
        None => Err("no tactic eliminated this prime set".into()),
    }
}

/// Viability probe used in tests: does q | sigma(p^{2a}) admit a power with
/// all forced companions inside the allowed set?
pub fn hosting_viable(q: u128, p: u128, allowed: &BTreeSet<u128>, cfg: &KitConfig) -> bool {
    host_rejection(q, p, allowed, cfg).is_none()
}

/// Residues helper exposed for the case-13 class regression.
pub fn residue_classes_mod(q: u128) -> Vec<u128> {
    odd_order_residues(q)
}
