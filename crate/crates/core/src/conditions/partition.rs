//! Partition-sum minima: the quantity min over partitions (c_1..c_r) of n of
//! sum a^{c_i} - r, which drives the lower bound on Omega(N).

use serde::{Deserialize, Serialize};

/// Exact minimum over the partition family, with a witness partition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionStats {
    pub n: u32,
    pub base: u64,
    pub min_value: u128,
    pub witness_partition: Vec<u32>,
}

/// Visit every partition of n (parts in non-increasing order).
pub fn for_each_partition<F: FnMut(&[u32])>(n: u32, mut f: F) {
    let mut parts = Vec::new();
    fn rec<F: FnMut(&[u32])>(remaining: u32, max_part: u32, parts: &mut Vec<u32>, f: &mut F) {
        if remaining == 0 {
            f(parts);
            return;
        }
        let cap = remaining.min(max_part);
        for next in (1..=cap).rev() {
            parts.push(next);
            rec(remaining - next, next, parts, f);
            parts.pop();
        }
    }
    rec(n, n, &mut parts, &mut f);
    let _ = &mut parts;
}

/// Minimum of sum base^{c_i} - r over all partitions (c_1..c_r) of n.
///
/// Brute-force enumeration up to n = 30; beyond that the all-ones partition
/// is returned directly, justified by the strict inequality
/// base * n < sum base^{c_i} for every partition when base >= 3, which makes
/// (base - 1) * n the minimum.
pub fn min_partition_value(n: u32, base: u64) -> PartitionStats {
    assert!(n >= 1, "n must be positive");
    assert!(base >= 3, "base must be at least 3");
    if n > 30 {
        return PartitionStats {
            n,
            base,
            min_value: (base as u128 - 1) * n as u128,
            witness_partition: vec![1; n as usize],
        };
    }
    let mut best: Option<(u128, Vec<u32>)> = None;
    for_each_partition(n, |parts| {
        let value: u128 = parts
            .iter()
            .map(|&c| (base as u128).pow(c))
            .sum::<u128>()
            - parts.len() as u128;
        if best.as_ref().is_none_or(|(b, _)| value < *b) {
            best = Some((value, parts.to_vec()));
        }
    });
    let (min_value, witness_partition) = best.expect("n >= 1 has partitions");
    PartitionStats {
        n,
        base,
        min_value,
        witness_partition,
    }
}
