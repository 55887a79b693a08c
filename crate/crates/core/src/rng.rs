//! Deterministic seed lanes.
//!
//! Every Monte Carlo consumer draws from a ChaCha stream keyed by
//! `(seed, lane)`, so batches can be evaluated in any order or in parallel and
//! still reproduce the same aggregate.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Default seed used when neither a flag nor `QVLBI_SEED` supplies one.
pub const DEFAULT_SEED: u64 = 0x005E_ED0F_0B5E_57A2;

pub fn lane_rng(seed: u64, lane: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(lane);
    rng
}
