//! Test-only oracles, independent of the implementation paths they check.

/// Brute-force closed frequent subsequence oracle.
///
/// Enumerates every distinct subsequence of every database sequence (via
/// position bitmasks), counts support by containment against each sequence,
/// keeps those at or above `min_support`, and drops any pattern that has an
/// equal-support proper super-pattern. Output sorted lexicographically.
///
/// Only feasible for small databases; the acceptance bounds (sequences <= 8,
/// length <= 10) keep it exact and fast.
pub fn closed_frequent_oracle(db: &[Vec<u32>], min_support: usize) -> Vec<(Vec<u32>, usize)> {
    use std::collections::BTreeSet;

    let mut candidates: BTreeSet<Vec<u32>> = BTreeSet::new();
    for seq in db {
        assert!(seq.len() <= 16, "oracle uses bitmask enumeration");
        for mask in 1u32..(1 << seq.len()) {
            let sub: Vec<u32> = (0..seq.len())
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| seq[i])
                .collect();
            candidates.insert(sub);
        }
    }

    fn contained(needle: &[u32], haystack: &[u32]) -> bool {
        let mut it = haystack.iter();
        needle.iter().all(|n| it.any(|h| h == n))
    }

    let frequent: Vec<(Vec<u32>, usize)> = candidates
        .into_iter()
        .map(|sub| {
            let support = db.iter().filter(|seq| contained(&sub, seq)).count();
            (sub, support)
        })
        .filter(|(_, support)| *support >= min_support)
        .collect();

    let mut closed: Vec<(Vec<u32>, usize)> = frequent
        .iter()
        .filter(|(sub, support)| {
            !frequent.iter().any(|(other, other_support)| {
                other.len() > sub.len() && other_support == support && contained(sub, other)
            })
        })
        .cloned()
        .collect();
    closed.sort_by(|a, b| a.0.cmp(&b.0));
    closed
}

/// Deterministic random databases within the oracle-feasible bounds.
pub fn random_databases(count: usize, seed: u64) -> Vec<(Vec<Vec<u32>>, usize)> {
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    let mut rng = StdRng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let sequences = rng.gen_range(2..=8);
        let alphabet = rng.gen_range(2..=6u32);
        let db: Vec<Vec<u32>> = (0..sequences)
            .map(|_| {
                let len = rng.gen_range(1..=10);
                (0..len).map(|_| rng.gen_range(0..alphabet)).collect()
            })
            .collect();
        let min_support = rng.gen_range(2..=3usize).min(db.len());
        out.push((db, min_support));
    }
    out
}
