//! Computation with free noncommutative functions.
//!
//! * [`matcore`]: dense complex linear algebra (LU, inverse, `expm` with its
//!   Fréchet derivative, direct sums, seeded sampling).
//! * [`ncexpr`]: parser and AST for noncommutative polynomial/rational
//!   expressions, including square matricial ones.
//! * [`evalad`]: evaluation on matrix tuples, directional derivatives and
//!   principal divisors by reverse-mode sweeps.
//! * [`realize`]: linear pencil realizations `r = b*·L⁻¹·c` and the
//!   determinant-ratio split `det r = det p / det q`.
//! * [`tracial`]: paths in matrix-tuple space, continuation of tracial germs
//!   and monodromy increments.
//! * [`suite`]: the acceptance checks, shared by the test target and the CLI.

pub mod error;
pub mod evalad;
pub mod matcore;
pub mod ncexpr;
pub mod realize;
pub mod suite;
pub mod tracial;

pub use error::{NcError, Result};
pub use matcore::{ComplexMatrix, MatrixTuple};
pub use ncexpr::NcExpr;
