//! Built-in sampled paths.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;

use super::PathSpec;
use crate::error::{NcError, Result};
use crate::matcore::{random_matrix, random_unitary, ComplexMatrix, MatrixTuple};

/// Default number of nodes for sampled analytic paths.
pub const DEFAULT_SAMPLES: usize = 256;

fn check_samples(samples: usize) -> Result<()> {
    if samples < 3 {
        return Err(NcError::Invalid(format!(
            "a sampled loop needs at least 3 nodes, got {samples}"
        )));
    }
    Ok(())
}

// Samples a 1-periodic map at `samples` equally spaced times; the last node
// reuses t = 0 so the loop closes exactly.
fn sample_loop(samples: usize, f: impl Fn(f64) -> ComplexMatrix) -> Result<Vec<MatrixTuple>> {
    check_samples(samples)?;
    (0..samples)
        .map(|i| {
            let t = if i + 1 == samples { 0.0 } else { i as f64 / (samples - 1) as f64 };
            MatrixTuple::new(vec![f(t)])
        })
        .collect()
}

fn cis(theta: f64) -> Complex64 {
    Complex64::from_polar(1.0, theta)
}

/// `X(t) = diag(center + radius·e^{2πiwt}, center + radius, …)` of size
/// `n`: `det X` runs `w` times around a circle. Based at the scalar
/// `center + radius` (padding `n`).
pub fn circle_det(n: usize, winding: i32, center: Complex64, radius: f64, samples: usize) -> Result<PathSpec> {
    if n == 0 || !(radius > 0.0) {
        return Err(NcError::Invalid("circle-det needs n ≥ 1 and a positive radius".into()));
    }
    let rest = center + radius;
    let points = sample_loop(samples, |t| {
        let mut entries = vec![rest; n];
        entries[0] = center + radius * cis(2.0 * PI * winding as f64 * t);
        ComplexMatrix::diag(&entries)
    })?;
    Ok(PathSpec::uniform(points, n, n)?.with_base(Some(format!("[{rest}]"))))
}

/// `X(t) = diag(e^{2πi·w₁t}, …, e^{2πi·w_nt})` based at `[1]^{⊕n}`.
pub fn diag_rotation(windings: &[i32], samples: usize) -> Result<PathSpec> {
    let n = windings.len();
    if n == 0 {
        return Err(NcError::Invalid("diag-rotation needs at least one winding".into()));
    }
    let points = sample_loop(samples, |t| {
        let entries: Vec<Complex64> = windings.iter().map(|&w| cis(2.0 * PI * w as f64 * t)).collect();
        ComplexMatrix::diag(&entries)
    })?;
    Ok(PathSpec::uniform(points, n, n)?.with_base(Some("[1]".into())))
}

/// `X(t) = [[e^{2πit}, 1], [0, e^{−2πit}]]`, a loop at `[[1, 1], [0, 1]]` in
/// `GL₂` whose determinant is identically one.
pub fn paper_2x2(samples: usize) -> Result<PathSpec> {
    let points = sample_loop(samples, |t| {
        let mut m = ComplexMatrix::zeros(2, 2);
        m[(0, 0)] = cis(2.0 * PI * t);
        m[(0, 1)] = Complex64::new(1.0, 0.0);
        m[(1, 1)] = cis(-2.0 * PI * t);
        m
    })?;
    PathSpec::uniform(points, 1, 1)
}

/// A loop in `GL_n` based at the scalar `x₀`, together with its total
/// winding `Σ wⱼ`.
#[derive(Debug, Clone)]
pub struct RandomLoop {
    pub path: PathSpec,
    pub base: Complex64,
    pub windings: Vec<i32>,
}

impl RandomLoop {
    pub fn total_winding(&self) -> i32 {
        self.windings.iter().sum()
    }
}

/// `x₀·U*(diag(e^{2πi·wⱼt}) + sin(πt)·ε·N)U` with `ε·‖N‖₂ ≤ 0.2`, so every
/// point stays invertible and the loop is homotopic in `GL_n` to the diagonal
/// rotation.
pub fn random_gl_loop<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    base: Complex64,
    max_winding: i32,
    samples: usize,
) -> Result<RandomLoop> {
    if n == 0 || base == Complex64::new(0.0, 0.0) {
        return Err(NcError::Invalid("random loop needs n ≥ 1 and a nonzero base".into()));
    }
    let windings: Vec<i32> = (0..n).map(|_| rng.random_range(-max_winding..=max_winding)).collect();
    let noise = random_matrix(n, rng);
    // Frobenius bounds the spectral norm
    let eps = 0.2 / noise.frobenius_norm().max(1e-300);
    let u = random_unitary(n, rng);
    let ustar = u.conj_transpose();
    let points = sample_loop(samples, |t| {
        let entries: Vec<Complex64> = windings.iter().map(|&w| cis(2.0 * PI * w as f64 * t)).collect();
        let m = &ComplexMatrix::diag(&entries) + &noise.scale_real(eps * (PI * t).sin());
        (&(&ustar * &m) * &u).scale(base)
    })?;
    let path = PathSpec::uniform(points, n, n)?.with_base(Some(format!("[{base}]")));
    Ok(RandomLoop { path, base, windings })
}
