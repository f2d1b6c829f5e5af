//! Labeled sub-seed derivation.
//!
//! Every stochastic stage of an experiment (matrix draw, MCMC chains,
//! clustering, trial resampling) owns a sub-seed derived from the master seed
//! and a stage label. The derivation is a fixed FNV-1a / splitmix64 mix with
//! no platform-dependent hashing, so runs are reproducible across machines
//! and versions.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn fnv1a(seed: u64, bytes: &[u8]) -> u64 {
    let mut h = seed ^ FNV_OFFSET;
    for &b in bytes {
        h ^= u64::from(b);
        h = h.wrapping_mul(FNV_PRIME);
    }
    h
}

/// Derive the sub-seed for a named stage.
pub fn subseed(master: u64, label: &str) -> u64 {
    splitmix64(fnv1a(splitmix64(master), label.as_bytes()))
}

/// Derive the sub-seed for the `index`-th instance of a named stage
/// (one MCMC chain per grid point, one draw per trial, ...).
pub fn subseed_indexed(master: u64, label: &str, index: u64) -> u64 {
    splitmix64(subseed(master, label) ^ splitmix64(index.wrapping_add(1)))
}

/// Deterministic RNG for a (sub-)seed. All randomness in the crate goes
/// through this constructor.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
