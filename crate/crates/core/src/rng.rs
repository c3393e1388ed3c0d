//! Seeded random streams.
//!
//! All randomness flows through [`ChaCha8Rng`] so that a run is a pure
//! function of its seed. Sub-streams are keyed by mixing the parent seed with
//! a tuple of indices through SplitMix64.

use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Rng = ChaCha8Rng;

pub fn seeded(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives a child seed from `seed` and a key path. Stable across platforms
/// and releases.
pub fn derive_seed(seed: u64, keys: &[u64]) -> u64 {
    keys.iter().fold(splitmix64(seed), |acc, &k| splitmix64(acc ^ splitmix64(k)))
}

/// Stable 64-bit FNV-1a hash of a string, for keying streams by name.
pub fn hash_str(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3))
}

/// Uniform draw in `[0, 1)`.
pub fn uniform(rng: &mut Rng) -> f64 {
    rng.gen::<f64>()
}

/// `floor(u * max)`, clamped into `0..max`. `max` must be positive.
pub fn random_index(max: usize, u: f64) -> usize {
    debug_assert!(max > 0);
    ((u * max as f64) as usize).min(max - 1)
}
