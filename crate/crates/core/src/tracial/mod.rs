//! Tracial analytic continuation along paths of matrix tuples.
//!
//! A path `γ` runs from `X^{⊕k}` to `Y^{⊕l}` in `Mₙ(ℂ)^d`. A tracial germ is
//! continued along `γ` by integrating its exact differential, so branches are
//! tracked without ever taking a principal logarithm mid-path. Around a loop
//! the size-normalized increment `φ(γ) = (f(γ) − f(γ_X))/n` is additive
//! under concatenation and invariant under direct-sum padding.

mod continuation;
mod domain;
pub mod gen;
mod germ;
mod monodromy;
mod path;

pub use continuation::{continue_germ, loop_phi, ContinuationResult, DEFAULT_INTEGRATION_TOL};
pub use domain::DomainSpec;
pub use germ::{GermSpec, CLOSEDNESS_TOL};
pub use monodromy::{
    integrality_test, quantization_check, trace_equiv_check, GermComparison, IntegerFit, IntegralityEntry,
    IntegralityReport, IntegralityVerdict, QuantizationEntry, QuantizationReport, TraceEquivReport,
    TraceEquivVerdict, DEFAULT_ASSERT_TOL,
};
pub use path::{concatenate, essentially_equal, PathNode, PathSpec, ENDPOINT_TOL};

#[cfg(test)]
mod tests;
