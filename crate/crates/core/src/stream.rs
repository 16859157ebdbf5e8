//! Deterministic random sub-streams.
//!
//! Every random draw in the crate comes from a [`Stream`] keyed by
//! `(seed, label, counter)`. The key is folded into a 64-bit stream seed with
//! the SplitMix64 finalizer:
//!
//! ```text
//! mix(z)  = z ^= z >> 30; z *= 0xbf58476d1ce4e5b9;
//!           z ^= z >> 27; z *= 0x94d049bb133111eb; z ^ (z >> 31)
//! derive(seed, label, counter)
//!         = mix(mix(mix(seed + 0x9e3779b97f4a7c15) ^ label) + counter)
//! ```
//!
//! (all arithmetic wrapping). The stream seed expands to a 256-bit ChaCha8
//! key as four consecutive SplitMix64 outputs in little-endian order. Bounded
//! integers use Lemire's multiply-and-reject method and unit floats take the
//! top 53 bits of a word, so the streams depend only on ChaCha8 itself.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

pub const LABEL_RED: u64 = 0x5245_4400;
pub const LABEL_BLUE: u64 = 0x424c_5545;
pub const LABEL_LEFT: u64 = 0x4c45_4654;
pub const LABEL_RIGHT: u64 = 0x5249_4748;
pub const LABEL_TRIAL: u64 = 0x5452_4941;
pub const LABEL_GRID: u64 = 0x4752_4944;

const GOLDEN: u64 = 0x9e37_79b9_7f4a_7c15;

pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub fn derive(seed: u64, label: u64, counter: u64) -> u64 {
    mix64(mix64(mix64(seed.wrapping_add(GOLDEN)) ^ label).wrapping_add(counter))
}

pub struct Stream {
    rng: ChaCha8Rng,
}

impl Stream {
    pub fn new(stream_seed: u64) -> Self {
        let mut key = [0u8; 32];
        let mut state = stream_seed;
        for chunk in key.chunks_exact_mut(8) {
            state = state.wrapping_add(GOLDEN);
            chunk.copy_from_slice(&mix64(state).to_le_bytes());
        }
        Stream {
            rng: ChaCha8Rng::from_seed(key),
        }
    }

    pub fn keyed(seed: u64, label: u64, counter: u64) -> Self {
        Self::new(derive(seed, label, counter))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    /// Uniform integer in `0..bound`; `bound` must be positive.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "empty range");
        let mut m = u128::from(self.next_u64()) * u128::from(bound);
        if (m as u64) < bound {
            let threshold = bound.wrapping_neg() % bound;
            while (m as u64) < threshold {
                m = u128::from(self.next_u64()) * u128::from(bound);
            }
        }
        (m >> 64) as u64
    }

    /// Uniform in [0, 1).
    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform k-subset of 1..=s (Floyd's algorithm), sorted ascending.
    pub fn subset(&mut self, s: u32, k: u32) -> Vec<u32> {
        assert!(k <= s);
        let mut chosen: Vec<u32> = Vec::with_capacity(k as usize);
        for j in (s - k + 1)..=s {
            let t = self.below(u64::from(j)) as u32 + 1;
            if chosen.contains(&t) {
                chosen.push(j);
            } else {
                chosen.push(t);
            }
        }
        chosen.sort_unstable();
        chosen
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derive_separates_labels_and_counters() {
        let a = derive(7, LABEL_RED, 0);
        assert_ne!(a, derive(7, LABEL_BLUE, 0));
        assert_ne!(a, derive(7, LABEL_RED, 1));
        assert_ne!(a, derive(8, LABEL_RED, 0));
        assert_eq!(a, derive(7, LABEL_RED, 0));
    }

    #[test]
    fn streams_are_reproducible() {
        let mut x = Stream::keyed(42, LABEL_TRIAL, 3);
        let mut y = Stream::keyed(42, LABEL_TRIAL, 3);
        for _ in 0..100 {
            assert_eq!(x.next_u64(), y.next_u64());
        }
    }

    // Pins the documented construction; changing it breaks replay of old runs.
    #[test]
    fn stream_output_is_stable() {
        assert_eq!(mix64(0), 0);
        assert_eq!(mix64(GOLDEN), 0xe220_a839_7b1d_cdaf);
    }

    #[test]
    fn below_stays_in_range_and_hits_every_value() {
        let mut s = Stream::new(1);
        let mut seen = [0usize; 7];
        for _ in 0..7000 {
            seen[s.below(7) as usize] += 1;
        }
        assert!(seen.iter().all(|&c| c > 800 && c < 1200), "{seen:?}");
    }

    #[test]
    fn subset_is_a_sorted_k_subset() {
        let mut s = Stream::new(9);
        for _ in 0..200 {
            let sub = s.subset(10, 4);
            assert_eq!(sub.len(), 4);
            assert!(sub.windows(2).all(|w| w[0] < w[1]));
            assert!(sub.iter().all(|&v| (1..=10).contains(&v)));
        }
        assert_eq!(s.subset(5, 5), vec![1, 2, 3, 4, 5]);
    }
}
