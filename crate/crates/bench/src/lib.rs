//! Shared inputs for the benchmarks in `benches/`.

use chaoskit::{DnaSequence, Nucleotide};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Uniform random sequence of length `len`.
pub fn random_sequence(len: usize, seed: u64) -> DnaSequence {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..len).map(|_| Nucleotide::from_code(rng.random_range(0..4))).collect()
}
