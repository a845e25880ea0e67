//! Sample-loop execution: rayon by default, sequential behind the
//! `parallel` feature gate being off.
//!
//! Randomized loops key every sample to `(seed, index)` so results do not
//! depend on thread scheduling; the sequential and parallel paths produce
//! bit-identical output.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Per-sample generator, independent of scheduling order.
pub fn rng_for(seed: u64, index: u64) -> ChaCha8Rng {
    // splitmix64 on the pair, so neighbouring indices decorrelate
    let mut s = seed ^ index.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    s = (s ^ (s >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    s = (s ^ (s >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    s ^= s >> 31;
    ChaCha8Rng::seed_from_u64(s)
}

/// Map over sample indices; parallel when the `parallel` feature is on.
#[cfg(feature = "parallel")]
pub fn map_samples<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_samples<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..n).map(f).collect()
}

/// Always-sequential variant, kept for benchmarking against the
/// parallel path.
pub fn map_samples_seq<T, F>(n: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T,
{
    (0..n).map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn parallel_and_sequential_agree() {
        let f = |i: usize| {
            let mut rng = rng_for(42, i as u64);
            rng.random::<f64>()
        };
        let a = map_samples(64, f);
        let b = map_samples_seq(64, f);
        assert_eq!(a, b);
    }
}
