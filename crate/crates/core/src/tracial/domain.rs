use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{NcError, Result};
use crate::matcore::{Lu, MatrixTuple};

/// `G_Λ = {X : det(X₁ − λ) ≠ 0 for all λ ∈ Λ}`; an empty `Λ` is unrestricted
/// and `Λ = {0}` is `GL`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct DomainSpec {
    #[serde(default)]
    pub forbidden_dets: Vec<Complex64>,
}

impl DomainSpec {
    pub fn unrestricted() -> Self {
        Self::default()
    }

    pub fn gl() -> Self {
        Self::avoiding(&[Complex64::new(0.0, 0.0)])
    }

    pub fn avoiding(lambdas: &[Complex64]) -> Self {
        Self {
            forbidden_dets: lambdas.to_vec(),
        }
    }

    /// Errors with [`NcError::DomainExit`] at `t` when `x` is outside.
    pub fn check(&self, x: &MatrixTuple, t: f64) -> Result<()> {
        if self.forbidden_dets.is_empty() {
            return Ok(());
        }
        if x.d() == 0 {
            return Err(NcError::Invalid("domain membership needs at least one variable".into()));
        }
        let x1 = x.get(0);
        for &lambda in &self.forbidden_dets {
            let lu = Lu::factor(&x1.add_scalar(-lambda))?;
            if lu.is_singular() {
                return Err(NcError::DomainExit {
                    t,
                    reason: format!("x1 - ({lambda}) is singular (pivot {:.3e})", lu.min_pivot()),
                });
            }
        }
        Ok(())
    }
}
