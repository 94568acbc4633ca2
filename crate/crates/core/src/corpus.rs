//! Seeded test corpora shared by the self-test command and the acceptance suite.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::partition::Partition;

pub const DEFAULT_SEED: u64 = 0x5eed_1c0d;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple {
    pub lambda: Partition,
    pub mu: Partition,
    pub nu: Partition,
}

impl std::fmt::Display for Triple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}) x ({}) -> ({})", self.lambda, self.mu, self.nu)
    }
}

/// All partitions of rank `r` with parts in `[lo, hi]`, lexicographically decreasing.
pub fn partitions_in_box(r: usize, lo: i64, hi: i64) -> Vec<Partition> {
    fn go(r: usize, lo: i64, cap: i64, prefix: &mut Vec<i64>, out: &mut Vec<Partition>) {
        if prefix.len() == r {
            out.push(Partition::new(prefix.clone()).expect("weakly decreasing"));
            return;
        }
        for x in (lo..=cap).rev() {
            prefix.push(x);
            go(r, lo, x, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if r > 0 && lo <= hi {
        go(r, lo, hi, &mut Vec::with_capacity(r), &mut out);
    }
    out
}

/// Every balanced rank-2 triple with `λ`, `μ` in `[0, 3]` and `ν` any
/// nonnegative partition of the right size.
pub fn rank2_exhaustive() -> Vec<Triple> {
    let ps = partitions_in_box(2, 0, 3);
    let targets = partitions_in_box(2, 0, 6);
    let mut out = Vec::new();
    for lambda in &ps {
        for mu in &ps {
            for nu in targets
                .iter()
                .filter(|nu| nu.size() == lambda.size() + mu.size())
            {
                out.push(Triple {
                    lambda: lambda.clone(),
                    mu: mu.clone(),
                    nu: nu.clone(),
                });
            }
        }
    }
    out
}

/// Balanced triples: `λ`, `μ` uniform among partitions of rank `r` with parts
/// in `[lo, hi]`, then `ν` uniform among those of matching size (pairs with no
/// such `ν` are redrawn).
pub fn sampled_triples(r: usize, lo: i64, hi: i64, count: usize, seed: u64) -> Vec<Triple> {
    let ps = partitions_in_box(r, lo, hi);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let lambda = ps.choose(&mut rng).expect("nonempty box");
        let mu = ps.choose(&mut rng).expect("nonempty box");
        let size = lambda.size() + mu.size();
        let targets: Vec<&Partition> = ps.iter().filter(|nu| nu.size() == size).collect();
        if let Some(nu) = targets.choose(&mut rng) {
            out.push(Triple {
                lambda: lambda.clone(),
                mu: mu.clone(),
                nu: (*nu).clone(),
            });
        }
    }
    out
}

/// The rank-3 oracle corpus: parts in `[-2, 4]`.
pub fn rank3_sampled(count: usize, seed: u64) -> Vec<Triple> {
    sampled_triples(3, -2, 4, count, seed)
}

/// A uniformly random partition of random rank in `ranks` with parts in `[lo, hi]`.
pub fn random_partition(
    rng: &mut impl Rng,
    ranks: std::ops::RangeInclusive<usize>,
    lo: i64,
    hi: i64,
) -> Partition {
    let r = rng.gen_range(ranks);
    let mut parts: Vec<i64> = (0..r).map(|_| rng.gen_range(lo..=hi)).collect();
    parts.sort_unstable_by(|a, b| b.cmp(a));
    Partition::new(parts).expect("sorted")
}

/// `λ` for the Pieri suite: rank 1 to 4, parts in `[0, 4]`.
pub fn pieri_lambdas(count: usize, seed: u64) -> Vec<Partition> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| random_partition(&mut rng, 1..=4, 0, 4))
        .collect()
}

/// Pairs for the dimension identity: rank 1 to 3, parts in `[-1, 3]`.
pub fn dimension_pairs(count: usize, seed: u64) -> Vec<(Partition, Partition)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let a = random_partition(&mut rng, 1..=3, -1, 3);
            let b = random_partition(&mut rng, a.rank()..=a.rank(), -1, 3);
            (a, b)
        })
        .collect()
}

/// Three factors of rank 2 with parts in `[0, 2]`.
pub fn factor_triples(count: usize, seed: u64) -> Vec<[Partition; 3]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| std::array::from_fn(|_| random_partition(&mut rng, 2..=2, 0, 2)))
        .collect()
}

/// `count` triples spread evenly through `pool`.
pub fn spread_sample(pool: &[Triple], count: usize) -> Vec<Triple> {
    if pool.is_empty() {
        return Vec::new();
    }
    let step = (pool.len() / count.max(1)).max(1);
    pool.iter().step_by(step).take(count).cloned().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn box_enumeration() {
        assert_eq!(partitions_in_box(2, 0, 3).len(), 10);
        assert_eq!(partitions_in_box(3, -2, 4).len(), 84);
        assert_eq!(partitions_in_box(1, 2, 1).len(), 0);
        let b = partitions_in_box(2, 0, 1);
        let shown: Vec<String> = b.iter().map(ToString::to_string).collect();
        assert_eq!(shown, ["1,1", "1,0", "0,0"]);
    }

    #[test]
    fn rank2_corpus_is_balanced_and_sizeable() {
        let c = rank2_exhaustive();
        assert_eq!(c.len(), 278);
        assert!(c
            .iter()
            .all(|t| t.lambda.size() + t.mu.size() == t.nu.size()));
    }

    #[test]
    fn sampling_is_seeded() {
        assert_eq!(rank3_sampled(20, 7), rank3_sampled(20, 7));
        assert_ne!(rank3_sampled(20, 7), rank3_sampled(20, 8));
        for t in rank3_sampled(50, DEFAULT_SEED) {
            assert_eq!(t.lambda.size() + t.mu.size(), t.nu.size());
            for p in [&t.lambda, &t.mu, &t.nu] {
                assert!(p.first() <= 4 && p.last() >= -2);
            }
        }
        assert!(dimension_pairs(30, 1)
            .iter()
            .all(|(a, b)| a.rank() == b.rank()));
        assert!(pieri_lambdas(30, 1)
            .iter()
            .all(|l| (1..=4).contains(&l.rank()) && l.is_nonnegative()));
    }

    #[test]
    fn spread_sample_takes_requested_count() {
        let pool = rank2_exhaustive();
        let s = spread_sample(&pool, 25);
        assert_eq!(s.len(), 25);
        assert_eq!(s[0], pool[0]);
    }
}
