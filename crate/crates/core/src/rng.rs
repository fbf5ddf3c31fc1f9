//! Seeded random streams.
//!
//! Every trial draws from its own ChaCha8 stream: the key comes from the
//! 64-bit user seed and the stream id is the trial counter. Results therefore
//! do not depend on how trials are split across threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn substream(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
