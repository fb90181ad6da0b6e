use std::f64::consts::PI;

use num_complex::Complex64;

use super::ComplexMatrix;
use crate::error::{NcError, Result};

/// Pivots at or below this fraction of the largest absolute row sum mark the
/// matrix as singular.
pub const SINGULAR_PIVOT_RATIO: f64 = 1e-12;

/// Partial-pivot LU factorization `P·M = L·U`, with `L` unit lower
/// triangular and both factors packed into one matrix.
#[derive(Debug, Clone)]
pub struct Lu {
    packed: ComplexMatrix,
    perm: Vec<usize>,
    swaps: usize,
    min_pivot: f64,
    row_scale: f64,
}

impl Lu {
    pub fn factor(m: &ComplexMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(NcError::Dimension(format!(
                "expected a square matrix, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        let n = m.rows();
        let mut a = m.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut swaps = 0;
        let mut min_pivot = f64::INFINITY;
        for k in 0..n {
            let (p, pmag) = (k..n)
                .map(|r| (r, a[(r, k)].norm()))
                .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            min_pivot = min_pivot.min(pmag);
            if p != k {
                for c in 0..n {
                    let tmp = a[(k, c)];
                    a[(k, c)] = a[(p, c)];
                    a[(p, c)] = tmp;
                }
                perm.swap(k, p);
                swaps += 1;
            }
            let pivot = a[(k, k)];
            if pivot == Complex64::new(0.0, 0.0) {
                continue;
            }
            for r in k + 1..n {
                let f = a[(r, k)] / pivot;
                a[(r, k)] = f;
                if f == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for c in k + 1..n {
                    let u = a[(k, c)];
                    a[(r, c)] -= f * u;
                }
            }
        }
        Ok(Self {
            packed: a,
            perm,
            swaps,
            min_pivot: if n == 0 { f64::INFINITY } else { min_pivot },
            row_scale: m.norm_inf(),
        })
    }

    pub fn size(&self) -> usize {
        self.packed.rows()
    }

    pub fn min_pivot(&self) -> f64 {
        self.min_pivot
    }

    pub fn is_singular(&self) -> bool {
        self.size() > 0 && self.min_pivot <= SINGULAR_PIVOT_RATIO * self.row_scale
    }

    fn check_nonsingular(&self) -> Result<()> {
        if self.is_singular() {
            return Err(NcError::Singular {
                pivot: self.min_pivot,
                context: None,
            });
        }
        Ok(())
    }

    pub fn det(&self) -> Complex64 {
        let sign = if self.swaps % 2 == 0 { 1.0 } else { -1.0 };
        (0..self.size())
            .map(|i| self.packed[(i, i)])
            .fold(Complex64::new(sign, 0.0), |acc, u| acc * u)
    }

    /// Principal branch of `log det`, accumulated pivot by pivot so large
    /// or tiny determinants do not overflow.
    pub fn log_det(&self) -> Result<Complex64> {
        self.check_nonsingular()?;
        let mut log_abs = 0.0;
        let mut arg = if self.swaps % 2 == 0 { 0.0 } else { PI };
        for i in 0..self.size() {
            let u = self.packed[(i, i)];
            log_abs += u.norm().ln();
            arg += u.arg();
        }
        Ok(Complex64::new(log_abs, wrap_angle(arg)))
    }

    /// Solves `M·X = B` for a matrix right-hand side.
    pub fn solve(&self, b: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.check_nonsingular()?;
        let n = self.size();
        if b.rows() != n {
            return Err(NcError::Dimension(format!(
                "right-hand side has {} rows, system has {n}",
                b.rows()
            )));
        }
        let k = b.cols();
        let mut x = ComplexMatrix::zeros(n, k);
        for (i, &p) in self.perm.iter().enumerate() {
            for c in 0..k {
                x[(i, c)] = b[(p, c)];
            }
        }
        for c in 0..k {
            for i in 0..n {
                let mut s = x[(i, c)];
                for j in 0..i {
                    s -= self.packed[(i, j)] * x[(j, c)];
                }
                x[(i, c)] = s;
            }
            for i in (0..n).rev() {
                let mut s = x[(i, c)];
                for j in i + 1..n {
                    s -= self.packed[(i, j)] * x[(j, c)];
                }
                x[(i, c)] = s / self.packed[(i, i)];
            }
        }
        Ok(x)
    }

    pub fn inverse(&self) -> Result<ComplexMatrix> {
        self.solve(&ComplexMatrix::identity(self.size()))
    }
}

/// Wraps an angle into `(-π, π]`.
pub fn wrap_angle(a: f64) -> f64 {
    let mut w = a % (2.0 * PI);
    if w <= -PI {
        w += 2.0 * PI;
    } else if w > PI {
        w -= 2.0 * PI;
    }
    w
}

/// Determinant by partial-pivot LU. Singular input yields a zero or tiny
/// determinant rather than an error.
pub fn lu_det(m: &ComplexMatrix) -> Result<Complex64> {
    Ok(Lu::factor(m)?.det())
}

/// Principal-branch `log det`.
pub fn log_det(m: &ComplexMatrix) -> Result<Complex64> {
    Lu::factor(m)?.log_det()
}

/// An inverse together with its 1-norm condition number estimate
/// `‖M‖₁·‖M⁻¹‖₁`.
#[derive(Debug, Clone)]
pub struct Inverse {
    pub inverse: ComplexMatrix,
    pub condition: f64,
}

pub fn solve_inv(m: &ComplexMatrix) -> Result<Inverse> {
    let lu = Lu::factor(m)?;
    let inverse = lu.inverse()?;
    let condition = m.norm_1() * inverse.norm_1();
    Ok(Inverse { inverse, condition })
}

pub fn solve(m: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    Lu::factor(m)?.solve(b)
}

/// Orthonormalizes the columns of a square matrix (modified Gram-Schmidt,
/// run twice) and fixes phases so the implied `R` has a positive diagonal.
pub(crate) fn qr_unitary(g: &ComplexMatrix) -> ComplexMatrix {
    let n = g.rows();
    let mut cols: Vec<Vec<Complex64>> = (0..n).map(|c| (0..n).map(|r| g[(r, c)]).collect()).collect();
    for j in 0..n {
        for _ in 0..2 {
            for i in 0..j {
                let proj: Complex64 = (0..n).map(|r| cols[i][r].conj() * cols[j][r]).sum();
                for r in 0..n {
                    let q = cols[i][r];
                    cols[j][r] -= proj * q;
                }
            }
        }
        let norm = cols[j].iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
        for z in &mut cols[j] {
            *z /= norm;
        }
    }
    let mut q = ComplexMatrix::zeros(n, n);
    for (c, col) in cols.iter().enumerate() {
        for (r, &z) in col.iter().enumerate() {
            q[(r, c)] = z;
        }
    }
    q
}
