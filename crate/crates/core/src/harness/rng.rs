use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Draws per batch (and per stream).
pub const BATCH_SIZE: u64 = 1 << 16;

/// Generator for batch `stream` of a run seeded with `seed`. Streams never
/// overlap.
pub fn batch_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Splits `total` draws into `(stream, count)` batches.
pub(crate) fn batches(total: u64) -> Vec<(u64, u64)> {
    let full = total / BATCH_SIZE;
    let rest = total % BATCH_SIZE;
    let mut out: Vec<(u64, u64)> = (0..full).map(|b| (b, BATCH_SIZE)).collect();
    if rest > 0 {
        out.push((full, rest));
    }
    out
}
