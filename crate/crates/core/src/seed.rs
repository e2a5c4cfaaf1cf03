//! Sub-seed derivation.
//!
//! Every random stream in the toolkit is a [`ChaCha8Rng`] seeded from
//! `derive(top_seed, component, index)`. The component name is hashed with
//! 64-bit FNV-1a, the index and top-level seed are mixed with SplitMix64:
//!
//! ```text
//! derive(s, name, i) = splitmix64(splitmix64(s ^ fnv1a(name)) ^ splitmix64(i))
//! ```
//!
//! Streams therefore depend only on `(seed, component, index)` and never on
//! the order in which work items are scheduled, so serial and parallel
//! execution draw identical numbers.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub fn fnv1a(bytes: &[u8]) -> u64 {
    bytes
        .iter()
        .fold(FNV_OFFSET, |h, &b| (h ^ b as u64).wrapping_mul(FNV_PRIME))
}

pub fn derive(seed: u64, component: &str, index: u64) -> u64 {
    splitmix64(splitmix64(seed ^ fnv1a(component.as_bytes())) ^ splitmix64(index))
}

pub fn rng(seed: u64, component: &str, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive(seed, component, index))
}
