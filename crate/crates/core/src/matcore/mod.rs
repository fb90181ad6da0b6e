//! Dense complex linear algebra: determinants, inverses, the matrix
//! exponential with its Fréchet derivative, direct sums and seeded random
//! sampling of matrix tuples.

mod expm;
mod linalg;
mod matrix;
mod random;
mod tuple;

pub use expm::{expm, expm_frechet};
pub use linalg::{log_det, lu_det, solve, solve_inv, wrap_angle, Inverse, Lu, SINGULAR_PIVOT_RATIO};
pub use matrix::ComplexMatrix;
pub use random::{
    complex_gaussian, random_matrix, random_tuple, random_tuple_with, random_unitary, seeded_rng, NcRng,
};
pub use tuple::MatrixTuple;
