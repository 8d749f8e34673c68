//! Counter-based seed derivation.
//!
//! Every random stream in an experiment is keyed by `(master, stream, index)`
//! so adding a strategy or a graph never shifts the values another stream
//! sees.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Random-number generator used throughout the crate.
pub type SimRng = ChaCha8Rng;

/// Stream identifiers for [`derive_seed`].
pub mod stream {
    pub const GRAPH: u64 = 1;
    pub const RANDOM_STRATEGY: u64 = 2;
    pub const FALSE_SEEDS: u64 = 3;
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn derive_seed(master: u64, stream: u64, index: u64) -> u64 {
    splitmix64(splitmix64(splitmix64(master) ^ stream) ^ index)
}

pub fn rng_from_seed(seed: u64) -> SimRng {
    SimRng::seed_from_u64(seed)
}
