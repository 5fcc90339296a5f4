//! Seed derivation for reproducible replicate streams.
//!
//! Every random quantity in an experiment is drawn from a [`SimRng`] whose
//! seed is derived from a single master seed with [`mix`]. The mixing
//! function is SplitMix64's finalizer applied to `master + (index + 1) * φ`,
//! and is part of the stable on-disk contract: changing it changes every
//! recorded experiment.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Generator used everywhere in the crate. ChaCha8 has a documented,
/// version-stable output stream, unlike `StdRng`.
pub type SimRng = ChaCha8Rng;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 output function.
pub fn splitmix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives the seed of stream `index` from `master`.
pub fn mix(master: u64, index: u64) -> u64 {
    splitmix64(master.wrapping_add(index.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA)))
}

/// Folds a path of indices into one seed, e.g. `(n, lambda_idx, replicate)`.
pub fn mix_path(master: u64, path: &[u64]) -> u64 {
    path.iter().fold(master, |acc, &i| mix(acc, i))
}

pub fn rng_from_seed(seed: u64) -> SimRng {
    SimRng::seed_from_u64(seed)
}
