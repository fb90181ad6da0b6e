use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::ComplexMatrix;
use crate::error::{NcError, Result};

/// A point `X = (X₁, …, X_d)` of `d` square matrices of one common size `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixTuple {
    n: usize,
    mats: Vec<ComplexMatrix>,
}

impl MatrixTuple {
    pub fn new(mats: Vec<ComplexMatrix>) -> Result<Self> {
        let Some(first) = mats.first() else {
            return Err(NcError::Invalid("a matrix tuple needs at least one variable".into()));
        };
        let n = first.rows();
        if let Some((i, m)) = mats
            .iter()
            .enumerate()
            .find(|(_, m)| m.rows() != n || m.cols() != n)
        {
            return Err(NcError::Dimension(format!(
                "component {} is {}x{}, expected {n}x{n}",
                i + 1,
                m.rows(),
                m.cols()
            )));
        }
        Ok(Self { n, mats })
    }

    /// The size-0 tuple in `d` variables, neutral for [`MatrixTuple::direct_sum`].
    pub fn empty(d: usize) -> Self {
        Self {
            n: 0,
            mats: vec![ComplexMatrix::zeros(0, 0); d.max(1)],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.mats.len()
    }

    pub fn mats(&self) -> &[ComplexMatrix] {
        &self.mats
    }

    /// Component `i`, zero-based.
    pub fn get(&self, i: usize) -> &ComplexMatrix {
        &self.mats[i]
    }

    pub fn into_mats(self) -> Vec<ComplexMatrix> {
        self.mats
    }

    pub fn map(&self, f: impl Fn(&ComplexMatrix) -> ComplexMatrix) -> Self {
        let mats: Vec<_> = self.mats.iter().map(f).collect();
        let n = mats[0].rows();
        Self { n, mats }
    }

    pub fn zip_map(
        &self,
        other: &Self,
        f: impl Fn(&ComplexMatrix, &ComplexMatrix) -> ComplexMatrix,
    ) -> Result<Self> {
        self.check_compatible(other)?;
        let mats: Vec<_> = self.mats.iter().zip(&other.mats).map(|(a, b)| f(a, b)).collect();
        Ok(Self { n: self.n, mats })
    }

    pub fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.d() != other.d() || self.n != other.n {
            return Err(NcError::Dimension(format!(
                "tuples of shape (n={}, d={}) and (n={}, d={}) differ",
                self.n,
                self.d(),
                other.n,
                other.d()
            )));
        }
        Ok(())
    }

    /// Componentwise block-diagonal sum `X ⊕ Y`.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.d() != other.d() {
            return Err(NcError::Dimension(format!(
                "direct sum of tuples with {} and {} variables",
                self.d(),
                other.d()
            )));
        }
        let mats = self
            .mats
            .iter()
            .zip(&other.mats)
            .map(|(a, b)| a.direct_sum(b))
            .collect();
        Ok(Self {
            n: self.n + other.n,
            mats,
        })
    }

    /// `X^{⊕k}`.
    pub fn direct_power(&self, k: usize) -> Self {
        (0..k).fold(Self::empty(self.d()), |acc, _| {
            acc.direct_sum(self).expect("same variable count")
        })
    }

    /// Simultaneous conjugation `U*·Xᵢ·U`.
    pub fn conjugate_by(&self, u: &ComplexMatrix) -> Self {
        let ustar = u.conj_transpose();
        self.map(|m| &(&ustar * m) * u)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.mats.iter().map(|m| m.frobenius_norm().powi(2)).sum::<f64>().sqrt()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.mats
            .iter()
            .zip(&other.mats)
            .map(|(a, b)| a.max_abs_diff(b))
            .fold(0.0, f64::max)
    }

    /// Entry-wise affine combination `(1-s)·self + s·other`.
    pub fn lerp(&self, other: &Self, s: f64) -> Self {
        let mats = self
            .mats
            .iter()
            .zip(&other.mats)
            .map(|(a, b)| &a.scale_real(1.0 - s) + &b.scale_real(s))
            .collect();
        Self { n: self.n, mats }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.map(|m| m.scale_real(s))
    }
}

#[derive(Serialize, Deserialize)]
struct TupleJson {
    n: usize,
    d: usize,
    mats: Vec<ComplexMatrix>,
}

impl Serialize for MatrixTuple {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TupleJson {
            n: self.n,
            d: self.d(),
            mats: self.mats.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MatrixTuple {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error;
        let json = TupleJson::deserialize(d)?;
        if json.mats.len() != json.d {
            return Err(D::Error::custom(format!(
                "declared d = {} but {} matrices given",
                json.d,
                json.mats.len()
            )));
        }
        let t = MatrixTuple::new(json.mats).map_err(D::Error::custom)?;
        if t.n != json.n {
            return Err(D::Error::custom(format!(
                "declared n = {} but matrices are {}x{}",
                json.n, t.n, t.n
            )));
        }
        Ok(t)
    }
}
