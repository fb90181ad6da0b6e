//! Acceptance checks shared by the `acceptance` test target and `nc suite`.
//!
//! Each criterion draws its own seeded samples, compares library results
//! against independently computed reference values and reports the worst
//! residual next to the tolerance it was held to.

mod criteria;
pub mod gen;

use std::time::{Duration, Instant};

use serde::Serialize;

pub use criteria::RATIONAL_CORPUS;

#[derive(Debug, Clone, Serialize)]
pub struct CriterionReport {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    /// Upper bound on residuals, or a lower bound when `lower_bound` is set.
    pub tolerance: f64,
    pub lower_bound: bool,
    /// Worst residual (largest, or smallest for lower bounds).
    pub worst: f64,
    pub checked: usize,
    pub detail: String,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl CriterionReport {
    /// One line, e.g. `[PASS]  7 linearization: worst 3.1e-14 <= 1e-9 (500 checks)`.
    pub fn line(&self) -> String {
        format!(
            "[{}] {:>2} {}: worst {:.3e} {} {:.0e} ({} checks){}{}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.worst,
            if self.lower_bound { ">=" } else { "<=" },
            self.tolerance,
            self.checked,
            if self.detail.is_empty() { "" } else { "; " },
            self.detail
        )
    }
}

/// Running maximum of residuals plus any hard failures.
pub(crate) struct Tracker {
    tolerance: f64,
    lower_bound: bool,
    worst: f64,
    checked: usize,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Tracker {
    pub fn new(tolerance: f64) -> Self {
        Self {
            tolerance,
            lower_bound: false,
            worst: 0.0,
            checked: 0,
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    /// Residuals must stay at or above `threshold` instead of below.
    pub fn at_least(threshold: f64) -> Self {
        Self {
            lower_bound: true,
            worst: f64::INFINITY,
            ..Self::new(threshold)
        }
    }

    pub fn residual(&mut self, r: f64) {
        self.checked += 1;
        // NaN must count as a failure
        self.worst = match (r.is_nan(), self.lower_bound) {
            (true, false) => f64::INFINITY,
            (true, true) => f64::NEG_INFINITY,
            (false, false) => self.worst.max(r),
            (false, true) => self.worst.min(r),
        };
    }

    pub fn require(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn fail(&mut self, what: impl Into<String>) {
        self.failures.push(what.into());
    }

    pub fn note(&mut self, what: impl Into<String>) {
        self.notes.push(what.into());
    }

    fn finish(self, id: usize, name: &'static str, elapsed: Duration) -> CriterionReport {
        let within = if self.lower_bound {
            self.worst >= self.tolerance
        } else {
            self.worst <= self.tolerance
        };
        let passed = self.failures.is_empty() && within && self.checked > 0;
        let mut parts = self.notes;
        if let Some(first) = self.failures.first() {
            parts.push(format!("{} failure(s), first: {first}", self.failures.len()));
        }
        CriterionReport {
            id,
            name,
            passed,
            tolerance: self.tolerance,
            lower_bound: self.lower_bound,
            worst: self.worst,
            checked: self.checked,
            detail: parts.join("; "),
            elapsed,
        }
    }
}

type CriterionFn = fn(u64) -> Tracker;

const CRITERIA: [(&str, CriterionFn); 14] = [
    ("weinstein-aronszajn", criteria::weinstein_aronszajn),
    ("divisor-closed-form", criteria::divisor_closed_form),
    ("reverse-equals-forward", criteria::reverse_equals_forward),
    ("jacobi-pairing", criteria::jacobi_pairing),
    ("divisor-additivity", criteria::divisor_additivity),
    ("exponential-identities", criteria::exponential_identities),
    ("linearization", criteria::linearization),
    ("divisor-split", criteria::divisor_split_corpus),
    ("schur-block-inverse", criteria::schur_block_inverse),
    ("monodromy-quantization", criteria::monodromy_quantization),
    ("upper-triangular-loop", criteria::upper_triangular_loop),
    ("loop-arithmetic", criteria::loop_arithmetic),
    ("integrality", criteria::integrality),
    ("two-point-separation", criteria::two_point_separation),
];

pub fn criterion_count() -> usize {
    CRITERIA.len()
}

pub fn criterion_name(id: usize) -> Option<&'static str> {
    CRITERIA.get(id.checked_sub(1)?).map(|c| c.0)
}

/// Runs criterion `id` (1-based).
pub fn run_criterion(id: usize, seed: u64) -> Option<CriterionReport> {
    let (name, f) = CRITERIA.get(id.checked_sub(1)?)?;
    let start = Instant::now();
    let tracker = f(seed);
    Some(tracker.finish(id, name, start.elapsed()))
}

pub fn run_all(seed: u64) -> Vec<CriterionReport> {
    (1..=CRITERIA.len()).filter_map(|id| run_criterion(id, seed)).collect()
}
