//! Seeded, stream-split random number generation. One ChaCha12 generator
//! per logical stream: trials use their index, auxiliary consumers use the
//! high ranges. Identical (seed, stream) always reproduces the same draws,
//! independent of worker count.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;

/// Stream ids above this are reserved for non-trial consumers.
pub const STREAM_CHAIN: u64 = 1 << 40;
pub const STREAM_BOOTSTRAP: u64 = (1 << 40) + 1;

pub fn stream_rng(seed: u64, stream: u64) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
