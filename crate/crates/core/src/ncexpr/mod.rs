//! Syntax for noncommutative polynomial and rational expressions, scalar and
//! square matricial.

mod ast;
mod classify;
mod parser;
mod probe;

pub use ast::{NcExpr, Node};
pub use classify::{classify, ExprClass};
pub use parser::parse;
pub use probe::{probe_nondegenerate, ProbeVerdict, DEFAULT_PROBE_SIZES, DEFAULT_PROBE_TRIALS};
