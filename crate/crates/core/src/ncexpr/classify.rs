use super::ast::{NcExpr, Node};
use crate::error::{NcError, Result};

/// Syntactic classification of an expression.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExprClass {
    pub is_polynomial: bool,
    pub is_rational: bool,
    pub is_matricial: bool,
    /// Block rows and columns of the value, present iff matricial.
    pub block_dims: Option<(usize, usize)>,
}

impl ExprClass {
    pub fn is_square(&self) -> bool {
        self.block_dims.is_none_or(|(r, c)| r == c)
    }
}

/// Block shape of a subexpression. Constants broadcast as multiples of the
/// identity to whatever square shape they meet.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Shape {
    Broadcast,
    Blocks(usize, usize),
}

fn structure(msg: impl Into<String>) -> NcError {
    NcError::Structure(msg.into())
}

fn shape_of(node: &Node) -> Result<Shape> {
    use Shape::*;
    match node {
        Node::Var(_) => Ok(Blocks(1, 1)),
        Node::Const(_) => Ok(Broadcast),
        Node::Sum(children) => {
            let mut acc = Broadcast;
            for c in children {
                acc = match (acc, shape_of(c)?) {
                    (Broadcast, s) | (s, Broadcast) => {
                        if let Blocks(r, c) = s {
                            if r != c {
                                return Err(structure(format!(
                                    "cannot add a scalar to a non-square {r}x{c} block"
                                )));
                            }
                        }
                        s
                    }
                    (a, b) if a == b => a,
                    (a, b) => return Err(structure(format!("sum of mismatched shapes {a:?} and {b:?}"))),
                };
            }
            Ok(acc)
        }
        Node::Prod(children) => {
            let mut acc = Broadcast;
            for c in children {
                acc = match (acc, shape_of(c)?) {
                    (Broadcast, s) | (s, Broadcast) => s,
                    (Blocks(a, b), Blocks(b2, c)) if b == b2 => Blocks(a, c),
                    (a, b) => {
                        return Err(structure(format!("product of incompatible shapes {a:?} and {b:?}")))
                    }
                };
            }
            Ok(acc)
        }
        Node::Neg(c) => shape_of(c),
        Node::Inv(c) | Node::Exp(c) => match shape_of(c)? {
            Blocks(r, k) if r != k => Err(structure(format!(
                "inv/exp of a non-square {r}x{k} block in `{node}`"
            ))),
            s => Ok(s),
        },
        Node::Mat(grid) => {
            let cols = grid.first().map_or(0, Vec::len);
            if grid.is_empty() || cols == 0 {
                return Err(structure("empty matricial literal"));
            }
            if let Some(r) = grid.iter().position(|row| row.len() != cols) {
                return Err(structure(format!(
                    "ragged matricial literal: row {} has {} entries, row 1 has {cols}",
                    r + 1,
                    grid[r].len()
                )));
            }
            for e in grid.iter().flatten() {
                if !matches!(shape_of(e)?, Broadcast | Blocks(1, 1)) {
                    return Err(structure(format!("matricial entry `{e}` is itself a block matrix")));
                }
            }
            Ok(Blocks(grid.len(), cols))
        }
    }
}

pub fn classify(e: &NcExpr) -> Result<ExprClass> {
    let shape = shape_of(e.root())?;
    let is_polynomial = e.is_polynomial();
    let is_rational = !e.root().any(&|n| matches!(n, Node::Exp(_)));
    let is_matricial = e.root().any(&|n| matches!(n, Node::Mat(_)));
    let block_dims = is_matricial.then(|| match shape {
        Shape::Broadcast => (1, 1),
        Shape::Blocks(r, c) => (r, c),
    });
    Ok(ExprClass {
        is_polynomial,
        is_rational,
        is_matricial,
        block_dims,
    })
}
