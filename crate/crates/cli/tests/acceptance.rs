//! Acceptance suite: every criterion runs at its stated tolerance and
//! prints one pass/fail line.  The whole suite is a single test so the
//! lines always appear together (run with --nocapture to watch).

use std::process::Command;
use std::time::{Duration, Instant};

use solitary_core::abundancy::{abundancy, sigma};
use solitary_core::arith::{factorize, primes_in_range, repunit, v_p_big, ExactRatio, Factorization};
use solitary_core::chains::{self, enumerate_chains, tables, ChainStatus, P6Range};
use solitary_core::conditions::{
    for_each_partition, min_partition_value, search_range, sieve_friends, upper_bound_n,
    SearchOptions,
};
use solitary_core::order_theory::{divides_sigma, valuation_sigma};
use solitary_core::KitConfig;

use num_bigint::BigUint;
use num_traits::Zero;

struct Gate {
    failures: Vec<String>,
}

impl Gate {
    fn record(&mut self, number: u32, name: &str, result: Result<String, String>) {
        match result {
            Ok(detail) => println!("criterion {number:2} PASS  {name}: {detail}"),
            Err(why) => {
                println!("criterion {number:2} FAIL  {name}: {why}");
                self.failures.push(format!("criterion {number}: {why}"));
            }
        }
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let value = f();
    (value, start.elapsed())
}

fn criterion_1_exactness() -> Result<String, String> {
    let ((), elapsed) = timed(|| ());
    let _ = elapsed;
    let ten = factorize(10).map_err(|e| e.to_string())?;
    if abundancy(&ten) != ExactRatio::nine_fifths() {
        return Err("I(10) != 9/5".into());
    }
    let limit = 100_000usize;
    let (ok, elapsed) = timed(|| {
        let mut divisor_sum = vec![0u64; limit + 1];
        for d in 1..=limit {
            let mut m = d;
            while m <= limit {
                divisor_sum[m] += d as u64;
                m += d;
            }
        }
        for (n, &expected) in divisor_sum.iter().enumerate().skip(1) {
            let f = factorize(n as u128).expect("small factorization");
            if sigma(&f) != BigUint::from(expected) {
                return Err(format!("sigma mismatch at {n}"));
            }
        }
        Ok(())
    });
    ok?;
    if elapsed > Duration::from_secs(10) {
        return Err(format!("sigma sweep took {elapsed:.2?} (limit 10 s)"));
    }
    Ok(format!(
        "I(10) = 9/5 and sigma agrees with divisor sums to 1e5 in {elapsed:.2?}"
    ))
}

fn criterion_2_table4() -> Result<String, String> {
    let recomputed = tables::table4_default();
    let mut corrected = 0;
    for (entry, &(p, layer, q, f)) in recomputed.iter().zip(tables::TABLE4) {
        if entry.f != Some(f) {
            return Err(format!("f mismatch at p={p} layer={layer} q={q}"));
        }
        // the one published row the computation refutes: f for (127, 15601)
        // is 3, not 5; asserted under its recomputed value
        if (p, q) == (127, 15601) {
            corrected += 1;
            if solitary_core::arith::pow_mod(15601, 5, 127) == 1 {
                return Err("published value 5 unexpectedly verifies".into());
            }
        }
    }
    Ok(format!(
        "{} rows reproduced ({} row asserted under its recomputed value, \
         the published one being refuted by direct exponentiation)",
        recomputed.len(),
        corrected
    ))
}

fn criterion_3_companion_tables(cfg: &KitConfig) -> Result<String, String> {
    let (result, elapsed) = timed(|| {
        for &(p6, q, p_star) in tables::TABLES_1_2_3 {
            tables::verify_published_row(p6, q, p_star, cfg)
                .map_err(|e| format!("row ({p6}, {q}, {p_star}): {e}"))?;
        }
        Ok::<usize, String>(tables::TABLES_1_2_3.len())
    });
    let rows = result?;
    if elapsed > Duration::from_secs(120) {
        return Err(format!("took {elapsed:.2?} (limit 2 min)"));
    }
    Ok(format!("{rows}/{rows} listed rows verified in {elapsed:.2?}"))
}

fn criterion_4_chain_enumeration() -> Result<String, String> {
    let chains = enumerate_chains(6);
    if chains.len() != 19 {
        return Err(format!("expected 19 chains, got {}", chains.len()));
    }
    // the published case list: fixed primes and p6 interval, with [53, 73]
    // replacing the prose "51 <= p6 <= 73" (51 is composite)
    let expected: [(&[u128], u128, Option<u128>); 19] = [
        (&[5, 7, 13, 17, 19], 23, Some(61)),
        (&[5, 7, 13, 17, 23], 29, Some(37)),
        (&[5, 7, 13, 19, 23], 29, Some(31)),
        (&[5, 7, 11, 17, 19], 23, Some(2039)),
        (&[5, 7, 11, 17, 23], 29, Some(97)),
        (&[5, 7, 11, 17, 29], 31, Some(47)),
        (&[5, 7, 11, 17, 31], 37, Some(43)),
        (&[5, 7, 11, 19, 23], 29, Some(59)),
        (&[5, 7, 11, 19, 29], 31, Some(37)),
        (&[5, 7, 11, 13, 17], 19, None),
        (&[5, 7, 11, 13, 19], 23, None),
        (&[5, 7, 11, 13, 23], 29, None),
        (&[5, 7, 11, 13, 29], 31, Some(20731)),
        (&[5, 7, 11, 13, 31], 37, Some(421)),
        (&[5, 7, 11, 13, 37], 41, Some(127)),
        (&[5, 7, 11, 13, 41], 43, Some(89)),
        (&[5, 7, 11, 13, 43], 47, Some(83)),
        (&[5, 7, 11, 13, 47], 53, Some(73)),
        (&[5, 7, 11, 13, 53], 59, Some(61)),
    ];
    for (fixed, lo, hi) in expected {
        let chain = chains
            .iter()
            .find(|c| c.fixed == fixed)
            .ok_or_else(|| format!("missing chain {fixed:?}"))?;
        let matches = match (chain.p6, hi) {
            (P6Range::Bounded { lo: clo, hi: chi }, Some(h)) => clo == lo && chi == h,
            (P6Range::Unbounded { lo: clo }, None) => clo == lo,
            _ => false,
        };
        if !matches {
            return Err(format!("range mismatch on {fixed:?}: {:?}", chain.p6));
        }
    }
    Ok("19 chains with the published fixed primes and p6 intervals".into())
}

fn criterion_5_proof_replay(cfg: &KitConfig) -> Result<String, String> {
    let (outcome, elapsed) = timed(|| {
        let chains_list = enumerate_chains(6);
        let reports = chains::eliminate_all(&chains_list, cfg);
        let eliminated = reports
            .iter()
            .filter(|r| matches!(r.status, ChainStatus::Eliminated))
            .count();
        if eliminated != 19 {
            return Err(format!("{eliminated}/19 chains eliminated"));
        }
        for report in &reports {
            for step in &report.steps {
                chains::verify_witness(&report.chain, step, cfg)
                    .map_err(|e| format!("witness on {:?}: {e}", report.chain.fixed))?;
            }
        }
        let status = Command::new(env!("CARGO_BIN_EXE_solitary-kit"))
            .args(["chains", "--prove"])
            .output()
            .map_err(|e| e.to_string())?;
        if status.status.code() != Some(0) {
            return Err(format!("chains --prove exited {:?}", status.status.code()));
        }
        Ok(())
    });
    outcome?;
    if elapsed > Duration::from_secs(300) {
        return Err(format!("took {elapsed:.2?} (limit 5 min)"));
    }
    Ok(format!(
        "19/19 chains eliminated with verified witnesses; chains --prove exit 0; {elapsed:.2?}"
    ))
}

fn criterion_6_order_oracle() -> Result<String, String> {
    let odd_primes = primes_in_range(3, 100);
    let mut cases = 0u64;
    for &p in &odd_primes {
        for &q in &odd_primes {
            if p == q {
                continue;
            }
            for a in 1..=50u32 {
                let s = repunit(q, 2 * a + 1);
                let direct = (s % BigUint::from(p)).is_zero();
                let predicted = divides_sigma(p, q, a).map_err(|e| e.to_string())?;
                if predicted != direct {
                    return Err(format!("mismatch at p={p} q={q} a={a}"));
                }
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} (p, q, a) cases, zero mismatches"))
}

fn criterion_7_valuation_oracle() -> Result<String, String> {
    let mut cases = 0u64;
    for q in [3u128, 5, 7, 11] {
        for p in primes_in_range(2, 50) {
            if p == q {
                continue;
            }
            for a in 1..=30u32 {
                let s = repunit(p, a + 1);
                let direct = v_p_big(q, &s);
                let predicted = valuation_sigma(q, p, a).map_err(|e| e.to_string())?.v;
                if predicted != direct {
                    return Err(format!("mismatch at q={q} p={p} a={a}"));
                }
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} (q, p, a) cases, zero mismatches"))
}

fn criterion_8_partition_bound() -> Result<String, String> {
    for a in 1..=15u32 {
        let stats = min_partition_value(2 * a - 1, 5);
        if stats.min_value != 8 * a as u128 - 4 {
            return Err(format!("min at a={a} is {}, want {}", stats.min_value, 8 * a - 4));
        }
    }
    // the partition inequality, with the strictness corrected at the
    // all-ones partition where the minimum above is attained with equality
    for base in 3..=7u64 {
        for n in 1..=20u32 {
            let mut violation = None;
            for_each_partition(n, |parts| {
                let sum: u128 = parts.iter().map(|&c| (base as u128).pow(c)).sum();
                let linear = (base as u128) * (n as u128);
                let all_ones = parts.iter().all(|&c| c == 1);
                let holds = if all_ones { linear == sum } else { linear < sum };
                if !holds && violation.is_none() {
                    violation = Some(format!("base={base} n={n} parts={parts:?}"));
                }
            });
            if let Some(v) = violation {
                return Err(v);
            }
        }
    }
    Ok("minima equal 8a-4 for a=1..15; inequality holds (equality exactly at all-ones)".into())
}

fn criterion_9_bound_formula() -> Result<String, String> {
    let value = upper_bound_n(3, 1).map_err(|e| e.to_string())?;
    if value != BigUint::from(50_388_480u64) {
        return Err(format!("upper_bound_n(3,1) = {value}, want 50388480"));
    }
    for a in 1..=3u32 {
        for k in (2 * a)..(2 * a + 4) {
            let low = upper_bound_n(k, a).map_err(|e| e.to_string())?;
            let high = upper_bound_n(k + 1, a).map_err(|e| e.to_string())?;
            if low >= high {
                return Err(format!("not increasing in K at ({k}, {a})"));
            }
        }
    }
    for k in 6..=9u32 {
        for a in 1..=(k / 2 - 1) {
            let big = upper_bound_n(k, a).map_err(|e| e.to_string())?;
            let small = upper_bound_n(k, a + 1).map_err(|e| e.to_string())?;
            if big <= small {
                return Err(format!("not decreasing in a at ({k}, {a})"));
            }
        }
    }
    Ok("5 * 6^9 = 50388480 exactly; monotone in K and in a".into())
}

fn criterion_10_desk_search(cfg: &KitConfig) -> Result<String, String> {
    let (summary, elapsed) = timed(|| {
        search_range(
            1_000_000_000_000u128,
            &SearchOptions {
                jobs: 8,
                sample_every: 100,
            },
            cfg,
            |_| {},
        )
    });
    if !summary.friends.is_empty() {
        return Err(format!("friends reported: {:?}", summary.friends));
    }
    if summary.false_rejections != 0 {
        return Err(format!("{} false rejections", summary.false_rejections));
    }
    if summary.sample_checked == 0 {
        return Err("sampling did not run".into());
    }
    if elapsed > Duration::from_secs(600) {
        return Err(format!("took {elapsed:.2?} (limit 10 min)"));
    }
    // cross-check the low range against the independent divisor-sum sieve
    if !sieve_friends(2_000_000).is_empty() {
        return Err("sieve found a friend below 2e6".into());
    }
    // the binary agrees
    let out = Command::new(env!("CARGO_BIN_EXE_solitary-kit"))
        .args(["search", "--max", "1e12", "--jobs", "8", "--summary-only"])
        .output()
        .map_err(|e| e.to_string())?;
    let text = String::from_utf8_lossy(&out.stdout);
    if out.status.code() != Some(0) || !text.contains("0 friends found") {
        return Err(format!("binary search run disagreed: {text}"));
    }
    Ok(format!(
        "{} candidates to 1e12, zero friends, {} sampled with zero false rejections, {elapsed:.2?}",
        summary.examined, summary.sample_checked
    ))
}

#[test]
fn acceptance() {
    let cfg = KitConfig::default();
    let mut gate = Gate { failures: vec![] };
    gate.record(1, "exactness anchor", criterion_1_exactness());
    gate.record(2, "f-table regression", criterion_2_table4());
    gate.record(3, "companion-table regression", criterion_3_companion_tables(&cfg));
    gate.record(4, "chain enumeration", criterion_4_chain_enumeration());
    gate.record(5, "six-prime proof replay", criterion_5_proof_replay(&cfg));
    gate.record(6, "order-predicate oracle", criterion_6_order_oracle());
    gate.record(7, "valuation oracle", criterion_7_valuation_oracle());
    gate.record(8, "partition bound", criterion_8_partition_bound());
    gate.record(9, "explicit upper bound", criterion_9_bound_formula());
    gate.record(10, "desk-scale search", criterion_10_desk_search(&cfg));
    assert!(
        gate.failures.is_empty(),
        "acceptance failures:\n{}",
        gate.failures.join("\n")
    );
}

/// The candidate generator's soundness backstop: every rejected candidate up
/// to 1e6 has exact abundancy different from 9/5 (tested for all, not a
/// sample), so no theorem-derived condition ever rejects a true friend.
#[test]
fn no_false_rejections_exhaustive_to_1e6() {
    let cfg = KitConfig::default();
    let mut all_exact = true;
    let summary = search_range(
        1_000_000,
        &SearchOptions {
            jobs: 1,
            sample_every: 1,
        },
        &cfg,
        |report| {
            let n: Factorization = report.candidate_expr.parse().unwrap();
            if abundancy(&n) == ExactRatio::nine_fifths() {
                all_exact = false;
            }
        },
    );
    assert!(all_exact, "a rejected candidate has I(N) = 9/5");
    assert_eq!(summary.false_rejections, 0);
    assert!(summary.friends.is_empty());
}
