//! Seeded random streams.
//!
//! Every stochastic routine takes a 64-bit master seed. Work that is split
//! into batches derives one ChaCha stream per batch index, so the result of a
//! batched computation does not depend on how batches are scheduled.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Generator for the whole computation.
pub fn master(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent child generator for `(seed, batch)`.
pub fn child(seed: u64, batch: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(batch.wrapping_add(1));
    rng
}
