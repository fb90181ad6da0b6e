use num_complex::Complex64;

use crate::error::{NcError, Result};
use crate::matcore::ComplexMatrix;

/// Intermediate value of a subexpression: either a bare scalar, which acts
/// as `c·I` on whatever square block it meets, or a concrete matrix.
#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Val {
    Scalar(Complex64),
    Mat(ComplexMatrix),
}

impl Val {
    pub(crate) fn zero() -> Self {
        Val::Scalar(Complex64::new(0.0, 0.0))
    }

    pub(crate) fn one() -> Self {
        Val::Scalar(Complex64::new(1.0, 0.0))
    }

    pub(crate) fn to_matrix(&self, n: usize) -> ComplexMatrix {
        match self {
            Val::Scalar(s) => ComplexMatrix::scalar(n, *s),
            Val::Mat(m) => m.clone(),
        }
    }

    pub(crate) fn add(&self, other: &Val) -> Result<Val> {
        Ok(match (self, other) {
            (Val::Scalar(a), Val::Scalar(b)) => Val::Scalar(a + b),
            (Val::Scalar(s), Val::Mat(m)) | (Val::Mat(m), Val::Scalar(s)) => {
                if !m.is_square() {
                    return Err(NcError::Dimension(format!(
                        "cannot add a scalar to a {}x{} matrix",
                        m.rows(),
                        m.cols()
                    )));
                }
                Val::Mat(m.add_scalar(*s))
            }
            (Val::Mat(a), Val::Mat(b)) => Val::Mat(a.try_add(b)?),
        })
    }

    pub(crate) fn mul(&self, other: &Val) -> Result<Val> {
        Ok(match (self, other) {
            (Val::Scalar(a), Val::Scalar(b)) => Val::Scalar(a * b),
            (Val::Scalar(s), Val::Mat(m)) | (Val::Mat(m), Val::Scalar(s)) => Val::Mat(m.scale(*s)),
            (Val::Mat(a), Val::Mat(b)) => Val::Mat(a.matmul(b)?),
        })
    }

    pub(crate) fn neg(&self) -> Val {
        match self {
            Val::Scalar(s) => Val::Scalar(-s),
            Val::Mat(m) => Val::Mat(-m),
        }
    }

    /// Frobenius norm as it would appear inside an `n×n` block.
    pub(crate) fn norm_in_block(&self, n: usize) -> f64 {
        match self {
            Val::Scalar(s) => s.norm() * (n as f64).sqrt(),
            Val::Mat(m) => m.frobenius_norm(),
        }
    }
}
