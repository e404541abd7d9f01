use num_bigint::BigInt;
use rayon::prelude::*;

use super::ReliabilityPolynomial;
use crate::error::{HammockError, Result};
use crate::lattice::HammockNetwork;
use crate::limits::{Limits, MASK_EDGES_MAX};

/// Subsets per work unit of the parallel scan.
const SHARD_BITS: usize = 14;

/// `N_i` by testing every one of the `2^n` edge subsets.
pub fn pathset_counts_bruteforce(net: &HammockNetwork, max_edges: usize) -> Result<Vec<u64>> {
    let n = net.edge_count();
    let limit = max_edges.min(MASK_EDGES_MAX);
    if n > limit {
        return Err(HammockError::EdgeCeiling {
            method: "brute-force reliability",
            edges: n,
            limit,
        });
    }
    let graph = net.graph();
    let shard_bits = SHARD_BITS.min(n);
    let shards = 1u64 << (n - shard_bits);
    let per_shard: Vec<Vec<u64>> = (0..shards)
        .into_par_iter()
        .map(|shard| {
            let mut counts = vec![0u64; n + 1];
            let mut scratch = Vec::with_capacity(graph.vertex_count);
            let base = shard << shard_bits;
            for low in 0..(1u64 << shard_bits) {
                let mask = base | low;
                if graph.connects_mask(mask, &mut scratch) {
                    counts[mask.count_ones() as usize] += 1;
                }
            }
            counts
        })
        .collect();
    let mut total = vec![0u64; n + 1];
    for counts in &per_shard {
        for (t, c) in total.iter_mut().zip(counts) {
            *t += c;
        }
    }
    Ok(total)
}

pub fn reliability_bruteforce(net: &HammockNetwork, limits: &Limits) -> Result<ReliabilityPolynomial> {
    let counts = pathset_counts_bruteforce(net, limits.brute_max_edges)?;
    Ok(ReliabilityPolynomial::from_pathset_counts(
        net,
        counts.into_iter().map(BigInt::from).collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{build_hammock, Kind};

    #[test]
    fn single_edge() {
        let net = build_hammock(1, 1, Kind::First).unwrap();
        assert_eq!(pathset_counts_bruteforce(&net, 24).unwrap(), vec![0, 1]);
    }

    #[test]
    fn two_by_two_kinds_differ() {
        let first = build_hammock(2, 2, Kind::First).unwrap();
        let second = build_hammock(2, 2, Kind::Second).unwrap();
        assert_eq!(pathset_counts_bruteforce(&first, 24).unwrap(), vec![0, 0, 4, 4, 1]);
        assert_eq!(pathset_counts_bruteforce(&second, 24).unwrap(), vec![0, 0, 2, 4, 1]);
    }

    #[test]
    fn ceiling_is_enforced() {
        let net = build_hammock(5, 5, Kind::First).unwrap();
        let err = pathset_counts_bruteforce(&net, 24).unwrap_err();
        assert_eq!(
            err,
            HammockError::EdgeCeiling { method: "brute-force reliability", edges: 25, limit: 24 }
        );
        assert!(err.is_resource_limit());
    }
}
