use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::{linalg, ComplexMatrix, MatrixTuple};

/// The generator used everywhere a seed is accepted.
pub type NcRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> NcRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Standard complex Gaussian: real and imaginary parts i.i.d. N(0, 1/2),
/// so `E|z|² = 1`.
pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn random_matrix<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    let data = (0..n * n).map(|_| complex_gaussian(rng)).collect();
    ComplexMatrix::new(n, n, data).expect("gaussian entries are finite")
}

/// `d` independent `n×n` standard complex Gaussian matrices. The same seed
/// always reproduces the same tuple.
pub fn random_tuple(n: usize, d: usize, seed: u64) -> MatrixTuple {
    let mut rng = seeded_rng(seed);
    random_tuple_with(n, d, &mut rng)
}

pub fn random_tuple_with<R: Rng + ?Sized>(n: usize, d: usize, rng: &mut R) -> MatrixTuple {
    let mats = (0..d).map(|_| random_matrix(n, rng)).collect();
    MatrixTuple::new(mats).expect("random tuple is well formed")
}

/// Approximately Haar-distributed unitary from the QR factorization of a
/// complex Gaussian matrix with the phases of `R`'s diagonal fixed.
pub fn random_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    linalg::qr_unitary(&random_matrix(n, rng))
}
