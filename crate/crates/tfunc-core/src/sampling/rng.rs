//! Reproducible, splittable random streams.
//!
//! Every consumer of randomness receives a ChaCha8 stream derived from
//! `(master_seed, purpose, a, b)`. ChaCha is a counter-mode generator, so
//! distinct stream indices give statistically independent sequences, and
//! the derivation is pure: the same key produces the same sequence no
//! matter which worker thread runs it or in which order streams are
//! created.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// What a stream is consumed for; part of the stream key so that adding a
/// new consumer never perturbs existing ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Purpose {
    /// One experiment replicate: `a` = number of points N, `b` = replicate.
    Replicate,
    /// Retry of a degenerate replicate: `a` = N, `b` = replicate ⊕ attempt.
    ReplicateRetry,
    /// Monte Carlo spherical integral.
    SphereIntegral,
    /// Weighted cap measure.
    CapMeasure,
    /// Brute-force simplex moments.
    SimplexMoment,
    /// Blaschke–Petkantschin identity sampling.
    BpIdentity,
    /// Scaled-sphere moment identity sampling.
    ScaledSphere,
    /// Anything else (tests, one-off draws).
    Generic,
}

impl Purpose {
    fn id(self) -> u64 {
        match self {
            Purpose::Replicate => 1,
            Purpose::ReplicateRetry => 2,
            Purpose::SphereIntegral => 3,
            Purpose::CapMeasure => 4,
            Purpose::SimplexMoment => 5,
            Purpose::BpIdentity => 6,
            Purpose::ScaledSphere => 7,
            Purpose::Generic => 8,
        }
    }
}

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derive the ChaCha stream for `(master_seed, purpose, a, b)`.
pub fn stream(master_seed: u64, purpose: Purpose, a: u64, b: u64) -> ChaCha8Rng {
    // 32-byte key from the master seed alone; the rest goes into the
    // stream index so that all streams share one keyed generator.
    let mut key = [0u8; 32];
    let mut s = master_seed;
    for chunk in key.chunks_exact_mut(8) {
        s = splitmix(s);
        chunk.copy_from_slice(&s.to_le_bytes());
    }
    let mut rng = ChaCha8Rng::from_seed(key);
    let idx = splitmix(splitmix(splitmix(purpose.id()) ^ a) ^ b);
    rng.set_stream(idx);
    rng
}
