use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::path::essentially_equal;
use super::{continue_germ, loop_phi, DomainSpec, GermSpec, PathSpec, DEFAULT_INTEGRATION_TOL};
use crate::error::{NcError, Result};

/// Default tolerance for integrality and quantization assertions.
pub const DEFAULT_ASSERT_TOL: f64 = 1e-6;

fn two_pi_i() -> Complex64 {
    Complex64::new(0.0, 2.0 * PI)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `z` compared against the nearest integer.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IntegerFit {
    pub value: Complex64,
    pub nearest: i64,
    pub residual: f64,
}

impl IntegerFit {
    pub fn of(value: Complex64) -> Self {
        let nearest = value.re.round();
        Self {
            value,
            nearest: nearest as i64,
            residual: (value - nearest).norm(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuantizationEntry {
    pub c: Complex64,
    pub n: usize,
    /// `n·c/(2πi)`, expected to be an integer `w`.
    pub winding: IntegerFit,
    /// `c/(2πi) = w/n` in lowest terms.
    pub ratio: String,
    pub ratio_value: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuantizationReport {
    pub passed: bool,
    pub tol: f64,
    pub entries: Vec<QuantizationEntry>,
}

/// Checks `n·c ∈ 2πi·ℤ` for each `(c, n)`; violations are reported, not
/// raised.
pub fn quantization_check(values: &[(Complex64, usize)], tol: f64) -> QuantizationReport {
    let entries: Vec<QuantizationEntry> = values
        .iter()
        .map(|&(c, n)| {
            let winding = IntegerFit::of(c * n as f64 / two_pi_i());
            let w = winding.nearest;
            let g = gcd(w.unsigned_abs(), n as u64).max(1);
            let (num, den) = (w / g as i64, n as u64 / g);
            QuantizationEntry {
                c,
                n,
                winding,
                ratio: if den == 1 { num.to_string() } else { format!("{num}/{den}") },
                ratio_value: if n == 0 { f64::NAN } else { w as f64 / n as f64 },
                passed: n > 0 && winding.residual <= tol,
            }
        })
        .collect();
    QuantizationReport {
        passed: entries.iter().all(|e| e.passed),
        tol,
        entries,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IntegralityVerdict {
    DivisorCandidate,
    Obstructed,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IntegralityEntry {
    pub n: usize,
    pub phi: Complex64,
    /// `n·φ/(2πi)`.
    pub ratio: IntegerFit,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IntegralityReport {
    pub verdict: IntegralityVerdict,
    pub tol: f64,
    pub entries: Vec<IntegralityEntry>,
    /// Indices of loops whose periods are not integral.
    pub witnesses: Vec<usize>,
}

/// Necessary condition for `g` to be a divisor: every sampled loop period
/// `n·φ_g(γ)/(2πi)` is an integer. With no loops the verdict is vacuously
/// a candidate.
pub fn integrality_test(g: &GermSpec, loops: &[PathSpec], dom: &DomainSpec, tol: f64) -> Result<IntegralityReport> {
    let mut entries = Vec::with_capacity(loops.len());
    for path in loops {
        let phi = loop_phi(g, path, dom, DEFAULT_INTEGRATION_TOL)?;
        let ratio = IntegerFit::of(phi * path.n() as f64 / two_pi_i());
        entries.push(IntegralityEntry {
            n: path.n(),
            phi,
            ratio,
            passed: ratio.residual <= tol,
        });
    }
    let witnesses: Vec<usize> = entries
        .iter()
        .enumerate()
        .filter(|(_, e)| !e.passed)
        .map(|(i, _)| i)
        .collect();
    Ok(IntegralityReport {
        verdict: if witnesses.is_empty() {
            IntegralityVerdict::DivisorCandidate
        } else {
            IntegralityVerdict::Obstructed
        },
        tol,
        entries,
        witnesses,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TraceEquivVerdict {
    /// No supplied germ separates the paths; this says nothing about germs
    /// outside the family.
    IndistinguishableBySuppliedGerms,
    Distinguished,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GermComparison {
    pub germ: GermSpec,
    pub normalized_increment_1: Complex64,
    pub normalized_increment_2: Complex64,
    pub difference: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceEquivReport {
    pub verdict: TraceEquivVerdict,
    pub tol: f64,
    pub comparisons: Vec<GermComparison>,
    /// Index of the first germ that separates the paths.
    pub separating_germ: Option<usize>,
}

/// Compares the size-normalized increments of each germ along two paths
/// that essentially join the same endpoints.
pub fn trace_equiv_check(
    g1: &PathSpec,
    g2: &PathSpec,
    germs: &[GermSpec],
    dom: &DomainSpec,
    tol: f64,
) -> Result<TraceEquivReport> {
    let same_start = essentially_equal(&g1.essential_start()?, &g2.essential_start()?);
    let same_end = essentially_equal(&g1.essential_end()?, &g2.essential_end()?);
    if !same_start || !same_end {
        return Err(NcError::EndpointMismatch(
            "paths must essentially share both endpoints".into(),
        ));
    }
    let mut comparisons = Vec::with_capacity(germs.len());
    for germ in germs {
        let a = continue_germ(germ, g1, dom, DEFAULT_INTEGRATION_TOL)?.normalized_increment;
        let b = continue_germ(germ, g2, dom, DEFAULT_INTEGRATION_TOL)?.normalized_increment;
        let difference = (a - b).norm();
        comparisons.push(GermComparison {
            germ: germ.clone(),
            normalized_increment_1: a,
            normalized_increment_2: b,
            difference,
            passed: difference <= tol,
        });
    }
    let separating_germ = comparisons.iter().position(|c| !c.passed);
    Ok(TraceEquivReport {
        verdict: if separating_germ.is_none() {
            TraceEquivVerdict::IndistinguishableBySuppliedGerms
        } else {
            TraceEquivVerdict::Distinguished
        },
        tol,
        comparisons,
        separating_germ,
    })
}
