//! Seeded generators for random expressions and evaluation points.

use num_complex::Complex64;
use rand::Rng;

use crate::matcore::{random_matrix, MatrixTuple, NcRng};
use crate::ncexpr::{NcExpr, Node};

fn small_const(rng: &mut NcRng) -> Node {
    let re = (rng.random_range(-8i32..=8) as f64) / 4.0;
    let im = if rng.random_bool(0.3) {
        (rng.random_range(-4i32..=4) as f64) / 4.0
    } else {
        0.0
    };
    Node::Const(Complex64::new(if re == 0.0 && im == 0.0 { 1.0 } else { re }, im))
}

fn random_node(rng: &mut NcRng, d: usize, depth: usize, allow_exp: bool) -> Node {
    if depth <= 1 || rng.random_bool(0.25) {
        return if rng.random_bool(0.8) {
            Node::Var(rng.random_range(1..=d))
        } else {
            small_const(rng)
        };
    }
    let sub = |rng: &mut NcRng| random_node(rng, d, depth - 1, allow_exp);
    let choices = if allow_exp { 6 } else { 5 };
    match rng.random_range(0..choices) {
        0 | 1 => {
            let k = rng.random_range(2..=3);
            Node::Sum((0..k).map(|_| sub(rng)).collect())
        }
        2 => {
            let k = rng.random_range(2..=3);
            Node::Prod((0..k).map(|_| sub(rng)).collect())
        }
        3 => Node::neg(sub(rng)),
        4 => Node::inv(sub(rng)),
        _ => Node::exp(Node::Prod(vec![Node::real(0.5), sub(rng)])),
    }
}

/// Random scalar expression in `d` variables of depth at most `max_depth`
/// that mentions at least one variable.
pub fn random_expr(rng: &mut NcRng, d: usize, max_depth: usize, allow_exp: bool) -> NcExpr {
    loop {
        let root = random_node(rng, d, max_depth, allow_exp);
        if root.max_var() > 0 && root.depth() <= max_depth {
            return NcExpr::new(root, d).expect("generated variables are in range");
        }
    }
}

/// Tuple of `n×n` complex Gaussian matrices scaled so each component has
/// expected Frobenius norm `scale`.
pub fn random_point(rng: &mut NcRng, n: usize, d: usize, scale: f64) -> MatrixTuple {
    let s = scale / (n as f64).sqrt();
    let mats = (0..d).map(|_| random_matrix(n, rng).scale_real(s)).collect();
    MatrixTuple::new(mats).expect("well-formed tuple")
}
