use thiserror::Error;

/// Errors raised by the library.
///
/// Variants fall into three families which the CLI maps onto exit codes:
/// numerical failures (singular matrices, leaving a domain), input
/// validation problems, and unsupported requests.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum NcError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is singular to working precision (pivot magnitude {pivot:.3e}){}", context_suffix(.context))]
    Singular { pivot: f64, context: Option<String> },

    #[error("value is on the zero set of the function: {0}")]
    OnZeroSet(String),

    #[error("pencil is singular at this point (outside the domain of the realization): {0}")]
    PencilSingular(String),

    #[error("path leaves the domain at t = {t}: {reason}")]
    DomainExit { t: f64, reason: String },

    #[error("integration did not converge near t = {t}")]
    NonConvergence { t: f64 },

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("variable x{index} out of range (expression has {d} variables)")]
    VarOutOfRange { index: usize, d: usize },

    #[error("malformed expression structure: {0}")]
    Structure(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("expression looks degenerate: {0}")]
    Degenerate(String),

    #[error("germ is not closed: {0}")]
    NotClosed(String),

    #[error("endpoint mismatch: {0}")]
    EndpointMismatch(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

fn context_suffix(ctx: &Option<String>) -> String {
    match ctx {
        Some(c) => format!(" in `{c}`"),
        None => String::new(),
    }
}

impl NcError {
    /// True for failures caused by the numbers (singularity, leaving the
    /// domain, non-convergence) rather than by malformed input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            NcError::Singular { .. }
                | NcError::OnZeroSet(_)
                | NcError::PencilSingular(_)
                | NcError::DomainExit { .. }
                | NcError::NonConvergence { .. }
        )
    }

    pub(crate) fn with_context(self, ctx: impl Into<String>) -> Self {
        match self {
            NcError::Singular {
                pivot,
                context: None,
            } => NcError::Singular {
                pivot,
                context: Some(ctx.into()),
            },
            other => other,
        }
    }
}

pub type Result<T> = std::result::Result<T, NcError>;
