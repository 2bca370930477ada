use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Independent random streams derived from one run seed, so that e.g.
/// changing the subset fraction does not perturb parameter initialization.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stream {
    Split = 1,
    Subset = 2,
    Init = 3,
    Shuffle = 4,
}

pub fn stream_rng(seed: u64, stream: Stream) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream as u64);
    rng
}
