//! Seeded randomness shared by the generators.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::{FieldSpec, Scalar};

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small integer coefficient in `[-3, 3]`, biased away from zero.
pub fn random_scalar(f: FieldSpec, rng: &mut ChaCha8Rng) -> Scalar {
    const VALUES: [i64; 8] = [0, 1, -1, 2, -2, 3, -3, 1];
    f.from_i64(VALUES[rng.gen_range(0..VALUES.len())])
}
