//! Evaluation of expressions on matrix tuples, directional derivatives, and
//! principal divisors.
//!
//! The divisor of a square (possibly matricial) free function `f` at `X` is
//! the tuple `g = (g₁, …, g_d)` of `n×n` matrices characterized by
//!
//! ```text
//! tr(Σᵢ Hᵢ·gᵢ) = tr(Df(X)[H]·f(X)⁻¹)   for every direction H,
//! ```
//!
//! i.e. the free gradient of `log det f`. The reverse method gets it from a
//! single adjoint sweep seeded with `f(X)⁻¹`; the forward method assembles it
//! entry by entry from `d·n²` directional derivatives and serves as an oracle.

mod tape;
mod value;

use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{NcError, Result};
use crate::matcore::{log_det, solve_inv, ComplexMatrix, MatrixTuple};
use crate::ncexpr::NcExpr;

pub use tape::CANCELLATION_RATIO;
use tape::{adjoint, tangent, Recorder, Tape};

#[derive(Debug, Clone)]
pub struct EvalResult {
    /// `f(X)`, matricial values flattened to `n·rows × n·cols`.
    pub value: ComplexMatrix,
    /// Largest 1-norm condition number among the inverses taken (1 if none).
    pub condition: f64,
}

/// Value of a principal divisor at a point: one `n×n` matrix per variable.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DivisorValue {
    pub n: usize,
    pub components: Vec<ComplexMatrix>,
}

impl DivisorValue {
    pub fn zeros(n: usize, d: usize) -> Self {
        Self {
            n,
            components: vec![ComplexMatrix::zeros(n, n); d],
        }
    }

    pub fn d(&self) -> usize {
        self.components.len()
    }

    /// `tr(Σᵢ Hᵢ·gᵢ)`.
    pub fn pair(&self, h: &MatrixTuple) -> Complex64 {
        self.components
            .iter()
            .zip(h.mats())
            .map(|(g, hi)| (hi * g).trace())
            .sum()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.max_abs_diff(b))
            .fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.components
            .iter()
            .map(|m| m.frobenius_norm().powi(2))
            .sum::<f64>()
            .sqrt()
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a - b)
    }

    fn zip(&self, other: &Self, f: impl Fn(&ComplexMatrix, &ComplexMatrix) -> ComplexMatrix) -> Self {
        assert_eq!((self.n, self.d()), (other.n, other.d()), "divisor shapes differ");
        Self {
            n: self.n,
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DivisorMethod {
    Reverse,
    Forward,
}

impl fmt::Display for DivisorMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DivisorMethod::Reverse => "reverse",
            DivisorMethod::Forward => "forward",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TracialKind {
    Trace,
    LogDet,
}

fn check_arity(e: &NcExpr, x: &MatrixTuple) -> Result<()> {
    if e.d() != x.d() {
        return Err(NcError::Dimension(format!(
            "expression has {} variables, point has {}",
            e.d(),
            x.d()
        )));
    }
    if x.n() == 0 {
        return Err(NcError::Invalid("cannot evaluate at a size-0 point".into()));
    }
    Ok(())
}

fn record(e: &NcExpr, x: &MatrixTuple) -> Result<(Tape, f64)> {
    check_arity(e, x)?;
    let mut rec = Recorder::new(x);
    let tape = rec.record(e.root())?;
    Ok((tape, rec.worst_condition))
}

/// Evaluates `e` at `X`.
pub fn eval(e: &NcExpr, x: &MatrixTuple) -> Result<EvalResult> {
    let (tape, condition) = record(e, x)?;
    Ok(EvalResult {
        value: tape.val.to_matrix(x.n()),
        condition,
    })
}

/// Directional derivative `Df(X)[H]` by forward propagation of tangents.
pub fn dir_deriv(e: &NcExpr, x: &MatrixTuple, h: &MatrixTuple) -> Result<ComplexMatrix> {
    x.check_compatible(h)?;
    let (tape, _) = record(e, x)?;
    let value = tape.val.to_matrix(x.n());
    let dv = tangent(e.root(), &tape, h)?.to_matrix(x.n());
    Ok(fit_shape(dv, &value))
}

/// `(f(X), Df(X)[H])` from a single recorded evaluation.
pub fn value_and_deriv(e: &NcExpr, x: &MatrixTuple, h: &MatrixTuple) -> Result<(ComplexMatrix, ComplexMatrix)> {
    x.check_compatible(h)?;
    let (tape, _) = record(e, x)?;
    let value = tape.val.to_matrix(x.n());
    let dv = tangent(e.root(), &tape, h)?.to_matrix(x.n());
    let dv = fit_shape(dv, &value);
    Ok((value, dv))
}

// A constant expression has a scalar tangent; give it the value's shape.
fn fit_shape(dv: ComplexMatrix, value: &ComplexMatrix) -> ComplexMatrix {
    if dv.rows() == value.rows() && dv.cols() == value.cols() {
        dv
    } else {
        ComplexMatrix::zeros(value.rows(), value.cols())
    }
}

fn inverse_off_zero_set(value: &ComplexMatrix) -> Result<ComplexMatrix> {
    if !value.is_square() {
        return Err(NcError::Dimension(format!(
            "divisor needs a square value, got {}x{}",
            value.rows(),
            value.cols()
        )));
    }
    solve_inv(value).map(|i| i.inverse).map_err(|err| match err {
        NcError::Singular { pivot, .. } => NcError::OnZeroSet(format!(
            "f(X) is singular (pivot {pivot:.3e}); the divisor is only defined off the zero set"
        )),
        other => other,
    })
}

/// Principal divisor of `e` at `X`.
pub fn divisor(e: &NcExpr, x: &MatrixTuple, method: DivisorMethod) -> Result<DivisorValue> {
    let (tape, _) = record(e, x)?;
    let n = x.n();
    let value = tape.val.to_matrix(n);
    let finv = inverse_off_zero_set(&value)?;
    match method {
        DivisorMethod::Reverse => {
            let mut grads = vec![ComplexMatrix::zeros(n, n); e.d()];
            adjoint(e.root(), &tape, &finv, &mut grads)?;
            Ok(DivisorValue { n, components: grads })
        }
        DivisorMethod::Forward => {
            let mut out = DivisorValue::zeros(n, e.d());
            for i in 0..e.d() {
                for k in 0..n {
                    for l in 0..n {
                        let mut h = MatrixTuple::new(vec![ComplexMatrix::zeros(n, n); e.d()])?.into_mats();
                        h[i][(k, l)] = Complex64::new(1.0, 0.0);
                        let h = MatrixTuple::new(h)?;
                        let dv = fit_shape(tangent(e.root(), &tape, &h)?.to_matrix(n), &value);
                        out.components[i][(l, k)] = (&dv * &finv).trace();
                    }
                }
            }
            Ok(out)
        }
    }
}

/// Tracial wrappers: `tr f(X)` or the principal branch of `log det f(X)`.
pub fn tracial_eval(e: &NcExpr, x: &MatrixTuple, kind: TracialKind) -> Result<Complex64> {
    let value = eval(e, x)?.value;
    if !value.is_square() {
        return Err(NcError::Dimension(format!(
            "tracial functions need a square value, got {}x{}",
            value.rows(),
            value.cols()
        )));
    }
    match kind {
        TracialKind::Trace => Ok(value.trace()),
        TracialKind::LogDet => log_det(&value).map_err(|err| match err {
            NcError::Singular { pivot, .. } => {
                NcError::OnZeroSet(format!("det f(X) vanishes (pivot {pivot:.3e})"))
            }
            other => other,
        }),
    }
}

/// Mixed absolute/relative tolerance scale: `1 + Σ ‖operand‖_F`.
pub fn tol_scale<'a>(operands: impl IntoIterator<Item = &'a ComplexMatrix>) -> f64 {
    1.0 + operands.into_iter().map(ComplexMatrix::frobenius_norm).sum::<f64>()
}
