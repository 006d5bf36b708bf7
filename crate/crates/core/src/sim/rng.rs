//! Reproducible random streams.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A `(seed, stream)` pair naming one ChaCha8 keystream. Equal pairs give
/// bit-identical draws.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RngState {
    pub seed: u64,
    pub stream: u64,
}

impl RngState {
    pub fn new(seed: u64, stream: u64) -> Self {
        RngState { seed, stream }
    }

    /// The stream for block `block` of task `task` under `seed`.
    pub fn for_block(seed: u64, task: u64, block: u64) -> Self {
        RngState { seed, stream: splitmix64(splitmix64(task) ^ block) }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream);
        rng
    }
}

/// The SplitMix64 finalizer, used to spread task and block indices.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
