//! Exact integer and rational linear algebra.
//!
//! Normal forms are computed with explicit unimodular transforms so callers
//! can read off bases of kernels, cokernels and saturations. Ranks are either
//! exact (fraction-free elimination) or multi-modular with a fixed prime list.

mod hermite;
mod kernel;
mod matrix;
mod rank;
mod smith;

pub use hermite::hermite_normal_form;
pub(crate) use kernel::drop_zero_rows;
pub use kernel::{integer_kernel_saturated, rational_kernel, saturate_rows, solve_rational};
pub use matrix::{IntMatrix, RatMatrix};
pub use rank::{
    default_primes, exact_rank, kernel_dimension, modular_rank, nullity_of, rank_of, ModularSource,
    RankMode, PRIME_FLOOR,
};
pub use smith::{smith_normal_form, SmithDecomposition};
