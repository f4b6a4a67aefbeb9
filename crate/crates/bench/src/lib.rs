//! Benchmark inputs shared by the criterion targets.

use catwalk_core::random;
use catwalk_core::SquareMatrix;

/// Seeded polynomial matrix of size `n`.
pub fn poly_matrix(n: usize, seed: u64) -> SquareMatrix {
    random::poly_matrix(&mut random::rng(seed), n)
}
