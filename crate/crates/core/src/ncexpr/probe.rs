use serde::Serialize;

use super::NcExpr;
use crate::evalad::eval;
use crate::matcore::{random_tuple_with, seeded_rng, MatrixTuple};

pub const DEFAULT_PROBE_SIZES: [usize; 4] = [1, 2, 3, 4];
pub const DEFAULT_PROBE_TRIALS: usize = 32;

/// Outcome of sampling an expression at random points.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum ProbeVerdict {
    /// Every `inv` node met a nonsingular argument at `witness`.
    Ok { witness: MatrixTuple },
    /// No sampled point worked. Evidence only, never a proof.
    DegenerateSuspect { attempts: usize, last_error: String },
}

impl ProbeVerdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, ProbeVerdict::Ok { .. })
    }
}

/// Evaluates `e` at standard complex Gaussian tuples of each size in
/// `sizes`, `trials` rounds, and returns the first point where evaluation
/// succeeds.
pub fn probe_nondegenerate(e: &NcExpr, sizes: &[usize], trials: usize, seed: u64) -> ProbeVerdict {
    let mut rng = seeded_rng(seed);
    let mut attempts = 0;
    let mut last_error = String::from("no sizes to probe");
    for _ in 0..trials.max(1) {
        for &n in sizes.iter().filter(|&&n| n > 0) {
            let x = random_tuple_with(n, e.d(), &mut rng);
            attempts += 1;
            match eval(e, &x) {
                Ok(_) => return ProbeVerdict::Ok { witness: x },
                Err(err) => last_error = err.to_string(),
            }
        }
    }
    ProbeVerdict::DegenerateSuspect { attempts, last_error }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn probe(s: &str, d: usize) -> ProbeVerdict {
        let e = NcExpr::parse(s, d).unwrap();
        probe_nondegenerate(&e, &DEFAULT_PROBE_SIZES, DEFAULT_PROBE_TRIALS, 0)
    }

    #[test]
    fn generic_inverse_is_fine_at_size_one() {
        let e = NcExpr::parse("inv(x1)", 1).unwrap();
        match probe_nondegenerate(&e, &[1], 1, 3) {
            ProbeVerdict::Ok { witness } => assert_eq!(witness.n(), 1),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn identically_zero_argument_is_degenerate() {
        match probe("inv(x1*x2 - x1*x2)", 2) {
            ProbeVerdict::DegenerateSuspect { attempts, .. } => assert_eq!(attempts, 4 * 32),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn push_through_difference_is_degenerate() {
        // y(1-xy)^{-1} - (1-yx)^{-1}y vanishes identically
        let v = probe("inv(x2*inv(1-x1*x2) - inv(1-x2*x1)*x2)", 2);
        assert!(!v.is_ok(), "{v:?}");
    }

    #[test]
    fn deterministic_given_seed() {
        let e = NcExpr::parse("inv(x1 - x2)", 2).unwrap();
        let a = probe_nondegenerate(&e, &[2, 3], 4, 17);
        let b = probe_nondegenerate(&e, &[2, 3], 4, 17);
        assert_eq!(a, b);
    }
}
