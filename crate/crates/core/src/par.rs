//! Data-parallel helpers for seeded sampling loops.
//!
//! Every sampled item derives its own seed from its index, so the
//! sequential and parallel paths produce identical results in identical
//! order.

/// How batch work is scheduled.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// Uses rayon when the `parallel` feature is enabled, otherwise
    /// falls back to sequential.
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

impl Execution {
    /// `(0..count).map(f)`, collected in index order.
    pub fn map<T, F>(self, count: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        match self {
            Execution::Sequential => (0..count).map(f).collect(),
            Execution::Parallel => parallel_map(count, f),
        }
    }
}

#[cfg(feature = "parallel")]
fn parallel_map<T, F>(count: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    (0..count).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn parallel_map<T, F>(count: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..count).map(f).collect()
}

/// Seed for item `index` of a batch started from `seed`.
pub fn item_seed(seed: u64, index: usize) -> u64 {
    // SplitMix64 finalizer over (seed, index).
    let mut z = seed
        ^ (index as u64)
            .wrapping_add(1)
            .wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seeded generator for item `index` of a batch.
pub fn item_rng(seed: u64, index: usize) -> rand_chacha::ChaCha8Rng {
    use rand::SeedableRng;
    rand_chacha::ChaCha8Rng::seed_from_u64(item_seed(seed, index))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn paths_agree() {
        let f = |i: usize| item_seed(42, i) % 1000;
        assert_eq!(
            Execution::Sequential.map(100, f),
            Execution::Parallel.map(100, f)
        );
    }

    #[test]
    fn seeds_differ_by_index() {
        assert_ne!(item_seed(0, 0), item_seed(0, 1));
        assert_ne!(item_seed(0, 0), item_seed(1, 0));
    }
}
