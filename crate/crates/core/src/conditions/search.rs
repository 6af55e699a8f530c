//! Bounded search harness: enumerate candidates N = 5^{2a} m^2 up to a bound,
//! run the filter pipeline on each, and reduce into a summary.  Candidates
//! are generated directly from (a, m) pairs, never by factoring consecutive
//! integers, and reports always stream in ascending-N order no matter how
//! many workers run.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{check_candidate, FilterReport, Verdict};
use crate::abundancy::abundancy;
use crate::arith::{factorize_with, ExactRatio, Factorization};
use crate::config::KitConfig;

#[derive(Debug, Clone)]
pub struct SearchOptions {
    /// Worker threads; 1 means fully sequential.
    pub jobs: usize,
    /// Double-check every k-th candidate by the exact abundancy test
    /// (0 disables sampling).
    pub sample_every: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            jobs: 1,
            sample_every: 100,
        }
    }
}

/// Order-independent reduction of a search run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchSummary {
    pub max_n: String,
    pub examined: u64,
    pub rejected: u64,
    /// Rejection counts per condition name; one candidate may count under
    /// several conditions.
    pub rejections_by_condition: BTreeMap<String, u64>,
    /// Survivors of the exact test (expected to stay empty).
    pub friends: Vec<String>,
    /// Candidates double-checked by the exact test.
    pub sample_checked: u64,
    /// Rejected candidates whose exact abundancy turned out to be 9/5
    /// (must stay zero: the filters are sound).
    pub false_rejections: u64,
}

/// One enumerated candidate: N = 5^{2a} m^2 with m coprime to 10.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct Candidate {
    value: u128,
    a: u32,
    m: u64,
}

fn enumerate_candidates(max_n: u128) -> Vec<Candidate> {
    let mut out = Vec::new();
    let mut five_2a: u128 = 1;
    let mut a = 0u32;
    loop {
        five_2a = five_2a.saturating_mul(25);
        a += 1;
        if five_2a > max_n {
            break;
        }
        let mut m: u64 = 1;
        loop {
            if !m.is_multiple_of(5) {
                let n = five_2a.saturating_mul(m as u128).saturating_mul(m as u128);
                if n > max_n {
                    break;
                }
                out.push(Candidate { value: n, a, m });
            }
            m += 2;
        }
    }
    out.sort_unstable();
    out
}

fn candidate_factorization(c: &Candidate, cfg: &KitConfig) -> Factorization {
    let mut n = Factorization::from_raw_unchecked(vec![(5, 2 * c.a)]);
    if c.m > 1 {
        let m = factorize_with(c.m as u128, cfg.factor_budget, cfg.mr_rounds)
            .expect("m is far below the factoring budget");
        for &(p, e) in m.pairs() {
            n = n.with_factor(p, 2 * e).expect("prime factor of m");
        }
    }
    n
}

fn process(
    c: &Candidate,
    index: u64,
    opts: &SearchOptions,
    cfg: &KitConfig,
) -> (FilterReport, bool, bool) {
    let n = candidate_factorization(c, cfg);
    let report = check_candidate(&n, cfg);
    let sampled = opts.sample_every > 0 && index.is_multiple_of(opts.sample_every);
    let mut false_rejection = false;
    if sampled && report.verdict == Verdict::Reject {
        false_rejection = abundancy(&n) == ExactRatio::nine_fifths();
    }
    (report, sampled, false_rejection)
}

/// Enumerate and filter every candidate up to `max_n`, streaming each
/// report to `sink` in ascending-N order and returning the summary.
pub fn search_range<F>(
    max_n: u128,
    opts: &SearchOptions,
    cfg: &KitConfig,
    mut sink: F,
) -> SearchSummary
where
    F: FnMut(&FilterReport),
{
    assert!(max_n >= 25, "search bound must be at least 25");
    let candidates = enumerate_candidates(max_n);
    let jobs = opts.jobs.max(1).min(candidates.len().max(1));

    let results: Vec<(FilterReport, bool, bool)> = if jobs <= 1 {
        candidates
            .iter()
            .enumerate()
            .map(|(i, c)| process(c, i as u64, opts, cfg))
            .collect()
    } else {
        let chunk = candidates.len().div_ceil(jobs);
        let mut slots: Vec<Vec<(FilterReport, bool, bool)>> = Vec::new();
        std::thread::scope(|scope| {
            let handles: Vec<_> = candidates
                .chunks(chunk)
                .enumerate()
                .map(|(slot, part)| {
                    let base = slot * chunk;
                    scope.spawn(move || {
                        part.iter()
                            .enumerate()
                            .map(|(i, c)| process(c, (base + i) as u64, opts, cfg))
                            .collect::<Vec<_>>()
                    })
                })
                .collect();
            for h in handles {
                slots.push(h.join().expect("search worker panicked"));
            }
        });
        slots.into_iter().flatten().collect()
    };

    let mut summary = SearchSummary {
        max_n: max_n.to_string(),
        examined: 0,
        rejected: 0,
        rejections_by_condition: BTreeMap::new(),
        friends: Vec::new(),
        sample_checked: 0,
        false_rejections: 0,
    };
    for (report, sampled, false_rejection) in &results {
        summary.examined += 1;
        match report.verdict {
            Verdict::Reject => {
                summary.rejected += 1;
                for (name, _) in &report.rejections {
                    *summary
                        .rejections_by_condition
                        .entry(name.clone())
                        .or_insert(0) += 1;
                }
            }
            Verdict::Pass => summary.friends.push(report.candidate_value.clone()),
        }
        if *sampled {
            summary.sample_checked += 1;
            if *false_rejection {
                summary.false_rejections += 1;
            }
        }
        sink(report);
    }
    summary
}

/// Independent ground truth used by tests: scan every integer in (10, limit]
/// with a divisor-sum sieve and return those with I(N) = 9/5.
pub fn sieve_friends(limit: u64) -> Vec<u64> {
    let n = limit as usize;
    let mut divisor_sum = vec![0u64; n + 1];
    for d in 1..=n {
        let mut m = d;
        while m <= n {
            divisor_sum[m] += d as u64;
            m += d;
        }
    }
    (11..=n)
        .filter(|&k| 5 * divisor_sum[k] == 9 * k as u64)
        .map(|k| k as u64)
        .collect()
}
