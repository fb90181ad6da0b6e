//! Evaluation tape: one recorded value per AST node, reused by the tangent
//! (forward-mode) and adjoint (reverse-mode) passes.

use num_complex::Complex64;

use super::value::Val;
use crate::error::{NcError, Result};
use crate::matcore::{expm, expm_frechet, solve_inv, ComplexMatrix, MatrixTuple};
use crate::ncexpr::Node;

/// An `inv` argument whose norm has cancelled below this fraction of the
/// magnitude of its constituent terms is treated as numerically zero.
pub const CANCELLATION_RATIO: f64 = 1e-10;

#[derive(Debug, Clone)]
pub(crate) struct Tape {
    pub val: Val,
    /// Size of the terms that produced `val`, before any cancellation.
    pub mag: f64,
    pub kids: Vec<Tape>,
}

pub(crate) struct Recorder<'a> {
    x: &'a MatrixTuple,
    pub worst_condition: f64,
}

impl<'a> Recorder<'a> {
    pub fn new(x: &'a MatrixTuple) -> Self {
        Self {
            x,
            worst_condition: 1.0,
        }
    }

    fn n(&self) -> usize {
        self.x.n()
    }

    pub fn record(&mut self, node: &Node) -> Result<Tape> {
        let n = self.n();
        match node {
            Node::Var(i) => {
                let m = self.x.get(i - 1).clone();
                Ok(Tape {
                    mag: m.frobenius_norm(),
                    val: Val::Mat(m),
                    kids: vec![],
                })
            }
            Node::Const(c) => Ok(Tape {
                val: Val::Scalar(*c),
                mag: c.norm(),
                kids: vec![],
            }),
            Node::Sum(children) => {
                let kids = children.iter().map(|c| self.record(c)).collect::<Result<Vec<_>>>()?;
                let mut val = Val::zero();
                for k in &kids {
                    val = val.add(&k.val)?;
                }
                let rows_scale = match &val {
                    Val::Mat(m) => (m.rows() as f64).sqrt(),
                    Val::Scalar(_) => 1.0,
                };
                let mag = kids
                    .iter()
                    .map(|k| match k.val {
                        Val::Scalar(_) => k.mag * rows_scale,
                        Val::Mat(_) => k.mag,
                    })
                    .sum();
                Ok(Tape { val, mag, kids })
            }
            Node::Prod(children) => {
                let kids = children.iter().map(|c| self.record(c)).collect::<Result<Vec<_>>>()?;
                let mut val = Val::one();
                for k in &kids {
                    val = val.mul(&k.val)?;
                }
                let mag = kids.iter().map(|k| k.mag).product();
                Ok(Tape { val, mag, kids })
            }
            Node::Neg(c) => {
                let kid = self.record(c)?;
                Ok(Tape {
                    val: kid.val.neg(),
                    mag: kid.mag,
                    kids: vec![kid],
                })
            }
            Node::Inv(c) => {
                let kid = self.record(c)?;
                let val = self.invert(&kid, c)?;
                Ok(Tape {
                    mag: val.norm_in_block(1),
                    val,
                    kids: vec![kid],
                })
            }
            Node::Exp(c) => {
                let kid = self.record(c)?;
                let val = match &kid.val {
                    Val::Scalar(s) => Val::Scalar(s.exp()),
                    Val::Mat(m) => Val::Mat(expm(m)?),
                };
                Ok(Tape {
                    mag: val.norm_in_block(1),
                    val,
                    kids: vec![kid],
                })
            }
            Node::Mat(grid) => {
                let rows = grid.len();
                let cols = grid.first().map_or(0, Vec::len);
                if rows == 0 || cols == 0 || grid.iter().any(|r| r.len() != cols) {
                    return Err(NcError::Structure("ragged or empty matricial literal".into()));
                }
                let mut out = ComplexMatrix::zeros(rows * n, cols * n);
                let mut kids = Vec::with_capacity(rows * cols);
                let mut mag2 = 0.0;
                for (r, row) in grid.iter().enumerate() {
                    for (c, entry) in row.iter().enumerate() {
                        let kid = self.record(entry)?;
                        let block = kid.val.to_matrix(n);
                        if block.rows() != n || block.cols() != n {
                            return Err(NcError::Dimension(format!(
                                "matricial entry `{entry}` is {}x{}, expected {n}x{n}",
                                block.rows(),
                                block.cols()
                            )));
                        }
                        out.set_block(r * n, c * n, &block);
                        mag2 += match kid.val {
                            Val::Scalar(_) => (kid.mag * (n as f64).sqrt()).powi(2),
                            Val::Mat(_) => kid.mag.powi(2),
                        };
                        kids.push(kid);
                    }
                }
                Ok(Tape {
                    val: Val::Mat(out),
                    mag: mag2.sqrt(),
                    kids,
                })
            }
        }
    }

    fn invert(&mut self, arg: &Tape, arg_node: &Node) -> Result<Val> {
        let ctx = || format!("inv({arg_node})");
        match &arg.val {
            Val::Scalar(s) => {
                if s.norm() <= CANCELLATION_RATIO * arg.mag || *s == Complex64::new(0.0, 0.0) {
                    return Err(NcError::Singular {
                        pivot: s.norm(),
                        context: Some(ctx()),
                    });
                }
                Ok(Val::Scalar(1.0 / s))
            }
            Val::Mat(m) => {
                if !m.is_square() {
                    return Err(NcError::Dimension(format!(
                        "cannot invert a {}x{} value in {}",
                        m.rows(),
                        m.cols(),
                        ctx()
                    )));
                }
                let norm = m.frobenius_norm();
                if norm <= CANCELLATION_RATIO * arg.mag {
                    return Err(NcError::Singular {
                        pivot: norm,
                        context: Some(ctx()),
                    });
                }
                let inv = solve_inv(m).map_err(|e| e.with_context(ctx()))?;
                self.worst_condition = self.worst_condition.max(inv.condition);
                Ok(Val::Mat(inv.inverse))
            }
        }
    }
}

/// Tangent of `node` in direction `h`, given the recorded values.
pub(crate) fn tangent(node: &Node, tape: &Tape, h: &MatrixTuple) -> Result<Val> {
    let n = h.n();
    match node {
        Node::Var(i) => Ok(Val::Mat(h.get(i - 1).clone())),
        Node::Const(_) => Ok(Val::zero()),
        Node::Sum(children) => {
            let mut acc = Val::zero();
            for (c, t) in children.iter().zip(&tape.kids) {
                acc = acc.add(&tangent(c, t, h)?)?;
            }
            Ok(acc)
        }
        Node::Prod(children) => {
            let (mut p, mut dp) = (Val::one(), Val::zero());
            for (c, t) in children.iter().zip(&tape.kids) {
                let dc = tangent(c, t, h)?;
                dp = dp.mul(&t.val)?.add(&p.mul(&dc)?)?;
                p = p.mul(&t.val)?;
            }
            Ok(dp)
        }
        Node::Neg(c) => Ok(tangent(c, &tape.kids[0], h)?.neg()),
        Node::Inv(c) => {
            let da = tangent(c, &tape.kids[0], h)?;
            Ok(tape.val.mul(&da)?.mul(&tape.val)?.neg())
        }
        Node::Exp(c) => {
            let da = tangent(c, &tape.kids[0], h)?;
            match &tape.kids[0].val {
                Val::Scalar(s) => Ok(Val::Scalar(s.exp()).mul(&da)?),
                Val::Mat(a) => Ok(Val::Mat(expm_frechet(a, &da.to_matrix(a.rows()))?.1)),
            }
        }
        Node::Mat(grid) => {
            let cols = grid[0].len();
            let mut out = ComplexMatrix::zeros(grid.len() * n, cols * n);
            for (k, (entry, t)) in grid.iter().flatten().zip(&tape.kids).enumerate() {
                let block = tangent(entry, t, h)?.to_matrix(n);
                out.set_block((k / cols) * n, (k % cols) * n, &block);
            }
            Ok(Val::Mat(out))
        }
    }
}

/// Reverse pass. `w` is the cotangent of `node`'s value in the trace
/// pairing `tr(w·dV)`; contributions land in `grads[i]` for variable `i+1`.
pub(crate) fn adjoint(node: &Node, tape: &Tape, w: &ComplexMatrix, grads: &mut [ComplexMatrix]) -> Result<()> {
    if matches!(tape.val, Val::Scalar(_)) {
        // constant subtree
        return Ok(());
    }
    match node {
        Node::Var(i) => {
            grads[i - 1] += w;
            Ok(())
        }
        Node::Const(_) => Ok(()),
        Node::Sum(children) => {
            for (c, t) in children.iter().zip(&tape.kids) {
                adjoint(c, t, w, grads)?;
            }
            Ok(())
        }
        Node::Prod(children) => {
            let k = children.len();
            let mut prefix = vec![Val::one()];
            for t in &tape.kids {
                let next = prefix.last().unwrap().mul(&t.val)?;
                prefix.push(next);
            }
            let mut suffix = vec![Val::one(); k + 1];
            for j in (0..k).rev() {
                suffix[j] = tape.kids[j].val.mul(&suffix[j + 1])?;
            }
            let wv = Val::Mat(w.clone());
            for j in 0..k {
                if matches!(tape.kids[j].val, Val::Scalar(_)) {
                    continue;
                }
                // tr(W·P·dA·S) = tr((S·W·P)·dA)
                let wj = suffix[j + 1].mul(&wv)?.mul(&prefix[j])?;
                let Val::Mat(wj) = wj else { unreachable!("cotangent of a matrix factor") };
                adjoint(&children[j], &tape.kids[j], &wj, grads)?;
            }
            Ok(())
        }
        Node::Neg(c) => adjoint(c, &tape.kids[0], &-w, grads),
        Node::Inv(c) => {
            let Val::Mat(v) = &tape.val else { unreachable!() };
            let wa = -&(&(v * w) * v);
            adjoint(c, &tape.kids[0], &wa, grads)
        }
        Node::Exp(c) => {
            let Val::Mat(a) = &tape.kids[0].val else { unreachable!() };
            // tr(W·L(A, E)) = tr(L(A, W)·E)
            let (_, wa) = expm_frechet(a, w)?;
            adjoint(c, &tape.kids[0], &wa, grads)
        }
        Node::Mat(grid) => {
            let cols = grid[0].len();
            let n = grads.first().map_or(0, ComplexMatrix::rows);
            for (k, (entry, t)) in grid.iter().flatten().zip(&tape.kids).enumerate() {
                let (r, c) = (k / cols, k % cols);
                let block = w.block(c * n, r * n, n, n);
                adjoint(entry, t, &block, grads)?;
            }
            Ok(())
        }
    }
}
