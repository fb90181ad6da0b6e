//! Matrix exponential by scaling and squaring with the degree-13 diagonal
//! Padé approximant, and its Fréchet derivative through the block identity
//!
//! ```text
//! exp([[A, E], [0, A]]) = [[e^A, L(A, E)], [0, e^A]]
//! ```

use num_complex::Complex64;

use super::{linalg, ComplexMatrix};
use crate::error::{NcError, Result};

const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

// Largest 1-norm for which the [13/13] approximant is accurate to unit
// roundoff without scaling.
const THETA_13: f64 = 5.371920351148152;

fn lin_comb(terms: &[(f64, &ComplexMatrix)], n: usize) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(n, n);
    for &(w, m) in terms {
        out += &m.scale_real(w);
    }
    out
}

pub fn expm(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    if !a.is_square() {
        return Err(NcError::Dimension(format!(
            "exp needs a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let n = a.rows();
    let norm = a.norm_1();
    let squarings = if norm > THETA_13 {
        (norm / THETA_13).log2().ceil().max(0.0) as i32
    } else {
        0
    };
    let a = a.scale_real(0.5f64.powi(squarings));
    let b = &PADE13;
    let ident = ComplexMatrix::identity(n);
    let a2 = &a * &a;
    let a4 = &a2 * &a2;
    let a6 = &a4 * &a2;

    let u_inner = &a6 * &lin_comb(&[(b[13], &a6), (b[11], &a4), (b[9], &a2)], n);
    let u_tail = lin_comb(&[(b[7], &a6), (b[5], &a4), (b[3], &a2), (b[1], &ident)], n);
    let u = &a * &(&u_inner + &u_tail);

    let v_inner = &a6 * &lin_comb(&[(b[12], &a6), (b[10], &a4), (b[8], &a2)], n);
    let v_tail = lin_comb(&[(b[6], &a6), (b[4], &a4), (b[2], &a2), (b[0], &ident)], n);
    let v = &v_inner + &v_tail;

    let mut r = linalg::solve(&(&v - &u), &(&v + &u))?;
    for _ in 0..squarings {
        r = &r * &r;
    }
    Ok(r)
}

/// Returns `(e^A, L(A, E))` where `L(A, E)` is the Fréchet derivative of the
/// exponential at `A` in direction `E`.
pub fn expm_frechet(a: &ComplexMatrix, e: &ComplexMatrix) -> Result<(ComplexMatrix, ComplexMatrix)> {
    if !a.is_square() || (a.rows(), a.cols()) != (e.rows(), e.cols()) {
        return Err(NcError::Dimension(format!(
            "exp Fréchet derivative needs square A and E of equal size, got {}x{} and {}x{}",
            a.rows(),
            a.cols(),
            e.rows(),
            e.cols()
        )));
    }
    let n = a.rows();
    // L is linear in E: rescale E so it does not inflate the squaring count.
    let e_norm = e.norm_1();
    let target = a.norm_1().max(1.0);
    let factor = if e_norm > 0.0 { target / e_norm } else { 1.0 };
    let mut block = ComplexMatrix::zeros(2 * n, 2 * n);
    block.set_block(0, 0, a);
    block.set_block(0, n, &e.scale_real(factor));
    block.set_block(n, n, a);
    let big = expm(&block)?;
    let exp_a = big.block(0, 0, n, n);
    let frechet = big.block(0, n, n, n).scale(Complex64::new(1.0 / factor, 0.0));
    Ok((exp_a, frechet))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::random::{random_matrix, seeded_rng};

    #[test]
    fn exp_of_zero_and_derivative_at_zero() {
        let z = ComplexMatrix::zeros(3, 3);
        let (e, l) = expm_frechet(&z, &ComplexMatrix::identity(3)).unwrap();
        assert!(e.max_abs_diff(&ComplexMatrix::identity(3)) < 1e-15);
        assert!(l.max_abs_diff(&ComplexMatrix::identity(3)) < 1e-15);
    }

    #[test]
    fn exp_of_diagonal_zero_direction() {
        let a = ComplexMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, 2.0]]).unwrap();
        let (e, l) = expm_frechet(&a, &ComplexMatrix::zeros(2, 2)).unwrap();
        let want = ComplexMatrix::from_real_rows(&[&[1f64.exp(), 0.0], &[0.0, 2f64.exp()]]).unwrap();
        assert!(e.max_abs_diff(&want) < 1e-14 * 8.0);
        assert_eq!(l, ComplexMatrix::zeros(2, 2));
    }

    #[test]
    fn exp_of_nilpotent_is_exact_polynomial() {
        let a = ComplexMatrix::from_real_rows(&[&[0.0, 3.0], &[0.0, 0.0]]).unwrap();
        let want = ComplexMatrix::from_real_rows(&[&[1.0, 3.0], &[0.0, 1.0]]).unwrap();
        assert!(expm(&a).unwrap().max_abs_diff(&want) < 1e-14);
    }

    #[test]
    fn large_norm_uses_squaring() {
        let mut rng = seeded_rng(11);
        let a = random_matrix(4, &mut rng).scale_real(4.0);
        let e = expm(&a).unwrap();
        let e_neg = expm(&-&a).unwrap();
        let prod = &e * &e_neg;
        assert!(prod.max_abs_diff(&ComplexMatrix::identity(4)) < 1e-8);
    }

    #[test]
    fn frechet_matches_central_difference() {
        let mut rng = seeded_rng(3);
        let a = random_matrix(3, &mut rng);
        let e = random_matrix(3, &mut rng);
        let (_, l) = expm_frechet(&a, &e).unwrap();
        let h = 1e-5;
        let plus = expm(&(&a + &e.scale_real(h))).unwrap();
        let minus = expm(&(&a - &e.scale_real(h))).unwrap();
        let fd = (&plus - &minus).scale_real(0.5 / h);
        assert!(l.max_abs_diff(&fd) < 1e-6, "diff {}", l.max_abs_diff(&fd));
    }

    #[test]
    fn mismatched_sizes_rejected() {
        let a = ComplexMatrix::identity(2);
        let e = ComplexMatrix::identity(3);
        assert!(matches!(expm_frechet(&a, &e), Err(NcError::Dimension(_))));
    }
}
