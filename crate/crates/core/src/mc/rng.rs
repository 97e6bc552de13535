//! Counter-based random streams.
//!
//! A stream is keyed by `(seed, domain, a, b)` (for instance master seed,
//! estimator, node id, walk index) and its `i`-th output is a pure function of
//! the key and `i`, so results do not depend on how work is scheduled.

use rand_core::RngCore;

const GOLDEN: u64 = 0x9e37_79b9_7f4a_7c15;

#[inline]
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Stream domains, kept distinct so estimators never share randomness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u64)]
pub enum Domain {
    BubbleRadius = 1,
    Centrality = 2,
    Restart = 3,
    Target = 4,
    Iteration = 5,
    Baseline = 6,
}

#[derive(Debug, Clone)]
pub struct WalkRng {
    key: u64,
    counter: u64,
}

impl WalkRng {
    pub fn new(seed: u64, domain: Domain, a: u64, b: u64) -> Self {
        let mut key = mix64(seed.wrapping_add(GOLDEN));
        key = mix64(key ^ (domain as u64).wrapping_mul(GOLDEN));
        key = mix64(key ^ a.wrapping_add(GOLDEN));
        key = mix64(key ^ b.wrapping_add(GOLDEN).rotate_left(17));
        Self { key, counter: 0 }
    }

    /// Uniform real in `[0, 1)` with 53 random bits.
    #[inline]
    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform integer in `0..n`; `n` must be positive.
    #[inline]
    pub fn below(&mut self, n: usize) -> usize {
        ((self.next_u64() as u128 * n as u128) >> 64) as usize
    }
}

/// A 64-bit seed derived from a stream key, for seeding nested computations.
pub fn derive_seed(seed: u64, domain: Domain, a: u64, b: u64) -> u64 {
    WalkRng::new(seed, domain, a, b).next_u64()
}

impl RngCore for WalkRng {
    #[inline]
    fn next_u32(&mut self) -> u32 {
        (self.next_u64() >> 32) as u32
    }

    #[inline]
    fn next_u64(&mut self) -> u64 {
        self.counter = self.counter.wrapping_add(1);
        mix64(self.key.wrapping_add(self.counter.wrapping_mul(GOLDEN)))
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        for chunk in dst.chunks_mut(8) {
            let bytes = self.next_u64().to_le_bytes();
            chunk.copy_from_slice(&bytes[..chunk.len()]);
        }
    }
}
