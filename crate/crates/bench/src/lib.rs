//! Fixtures shared by the benchmarks.

use multinorm_core::{Int, IntMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A seeded random integer matrix with entries in `-9..=9` at the given density.
pub fn random_matrix(rows: usize, cols: usize, density: f64, seed: u64) -> IntMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut trip = Vec::new();
    for i in 0..rows {
        for j in 0..cols {
            if rng.gen_bool(density) {
                let v: i64 = rng.gen_range(-9..=9);
                if v != 0 {
                    trip.push((i, j, Int::from(v)));
                }
            }
        }
    }
    IntMatrix::from_triplets(rows, cols, trip)
}

/// Groups and degrees used by the cohomology benchmarks.
pub const COHOMOLOGY_CASES: &[(&str, i32)] = &[("V4", 3), ("S3", -3), ("D4", 3), ("A4", 2), ("V4xC2", 3), ("V4xV4", 3)];
