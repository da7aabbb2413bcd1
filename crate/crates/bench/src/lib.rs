//! Fixed inputs shared by the benchmarks.

use coxkit::num::{int, ivec};
use coxkit::{GradingSpec, IntMatrix, InterpolationProblem, Polytope};

/// The triangle whose normal fan is that of P(12,13,17).
pub fn flagship() -> Polytope {
    Polytope::from_i64_points(&[&[11, -26], &[50, 0], &[-1, 34]])
}

/// The seven-vertex polygon with an elliptic curve of multiplicity 7.
pub fn second_polygon() -> Polytope {
    Polytope::from_i64_points(&[&[-1, 6], &[-4, 5], &[-3, 1], &[-2, 8], &[-6, 0], &[-7, 0], &[0, 3]])
}

pub fn flagship_problem(k: u64) -> InterpolationProblem {
    InterpolationProblem::new(flagship(), 1, k).expect("valid problem")
}

/// A dense `n × n` integer matrix with small pseudo-random entries.
pub fn dense_matrix(n: usize, seed: u64) -> IntMatrix {
    let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    let data = (0..n * n)
        .map(|_| {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            int(((state >> 33) % 19) as i64 - 9)
        })
        .collect();
    IntMatrix::new(n, n, data).expect("shape matches")
}

/// A rank-3 grading with six degrees, used for chamber enumeration.
pub fn rank3_grading() -> GradingSpec {
    let cols = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 0], [0, 1, 1], [1, 1, 1]];
    GradingSpec::new(3, Vec::new(), cols.iter().map(|c| ivec(c)).collect()).expect("valid grading")
}
