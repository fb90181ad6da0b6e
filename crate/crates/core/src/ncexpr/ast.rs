use std::fmt;

use num_complex::Complex64;
use serde_json::{json, Value};

use crate::error::{NcError, Result};

/// One node of a noncommutative expression tree.
///
/// Products keep their factors in the order written; nothing in the crate
/// ever reorders them.
#[derive(Debug, Clone, PartialEq)]
pub enum Node {
    /// Variable `x_i`, one-based.
    Var(usize),
    Const(Complex64),
    Sum(Vec<Node>),
    Prod(Vec<Node>),
    Neg(Box<Node>),
    Inv(Box<Node>),
    Exp(Box<Node>),
    /// Row-major grid of entries. Grids coming from user input may be
    /// ragged; [`super::classify`] rejects those.
    Mat(Vec<Vec<Node>>),
}

impl Node {
    pub fn var(i: usize) -> Self {
        Node::Var(i)
    }

    pub fn real(x: f64) -> Self {
        Node::Const(Complex64::new(x, 0.0))
    }

    pub fn neg(n: Node) -> Self {
        Node::Neg(Box::new(n))
    }

    pub fn inv(n: Node) -> Self {
        Node::Inv(Box::new(n))
    }

    pub fn exp(n: Node) -> Self {
        Node::Exp(Box::new(n))
    }

    pub fn children(&self) -> Vec<&Node> {
        match self {
            Node::Var(_) | Node::Const(_) => vec![],
            Node::Sum(c) | Node::Prod(c) => c.iter().collect(),
            Node::Neg(c) | Node::Inv(c) | Node::Exp(c) => vec![c],
            Node::Mat(grid) => grid.iter().flatten().collect(),
        }
    }

    pub fn depth(&self) -> usize {
        1 + self.children().into_iter().map(Node::depth).max().unwrap_or(0)
    }

    pub fn max_var(&self) -> usize {
        match self {
            Node::Var(i) => *i,
            _ => self.children().into_iter().map(Node::max_var).max().unwrap_or(0),
        }
    }

    pub fn any(&self, pred: &impl Fn(&Node) -> bool) -> bool {
        pred(self) || self.children().into_iter().any(|c| c.any(pred))
    }

    /// JSON export of the tree: `{"kind": ..., "children": [...]}` plus
    /// `index`, `value` or `rows`/`cols` where relevant.
    pub fn to_json(&self) -> Value {
        let kids = |c: &[Node]| Value::Array(c.iter().map(Node::to_json).collect());
        match self {
            Node::Var(i) => json!({"kind": "var", "index": i, "children": []}),
            Node::Const(z) => json!({"kind": "const", "value": [z.re, z.im], "children": []}),
            Node::Sum(c) => json!({"kind": "sum", "children": kids(c)}),
            Node::Prod(c) => json!({"kind": "prod", "children": kids(c)}),
            Node::Neg(c) => json!({"kind": "neg", "children": [c.to_json()]}),
            Node::Inv(c) => json!({"kind": "inv", "children": [c.to_json()]}),
            Node::Exp(c) => json!({"kind": "exp", "children": [c.to_json()]}),
            Node::Mat(grid) => json!({
                "kind": "mat",
                "rows": grid.len(),
                "cols": grid.first().map_or(0, Vec::len),
                "children": grid.iter().map(|r| kids(r)).collect::<Vec<_>>(),
            }),
        }
    }
}

/// A parsed or constructed expression together with its variable count.
#[derive(Debug, Clone, PartialEq)]
pub struct NcExpr {
    root: Node,
    d: usize,
}

impl NcExpr {
    pub fn new(root: Node, d: usize) -> Result<Self> {
        if d == 0 {
            return Err(NcError::Invalid("expressions need at least one variable".into()));
        }
        check_vars(&root, d)?;
        Ok(Self { root, d })
    }

    pub fn parse(text: &str, d: usize) -> Result<Self> {
        super::parser::parse(text, d)
    }

    /// Parses with `d` taken as the largest variable index that appears
    /// (at least 1).
    pub fn parse_infer(text: &str) -> Result<Self> {
        let root = super::parser::parse_node(text)?;
        let d = root.max_var().max(1);
        Self::new(root, d)
    }

    pub fn root(&self) -> &Node {
        &self.root
    }

    pub fn into_root(self) -> Node {
        self.root
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn depth(&self) -> usize {
        self.root.depth()
    }

    /// Same tree over a larger variable set.
    pub fn with_vars(&self, d: usize) -> Result<Self> {
        Self::new(self.root.clone(), d)
    }

    pub fn is_polynomial(&self) -> bool {
        !self.root.any(&|n| matches!(n, Node::Inv(_) | Node::Exp(_)))
    }

    pub fn to_json(&self) -> Value {
        json!({"d": self.d, "depth": self.depth(), "root": self.root.to_json()})
    }
}

fn check_vars(node: &Node, d: usize) -> Result<()> {
    if let Node::Var(i) = node {
        if *i == 0 || *i > d {
            return Err(NcError::VarOutOfRange { index: *i, d });
        }
    }
    node.children().into_iter().try_for_each(|c| check_vars(c, d))
}

fn fmt_real(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    if x == 0.0 || (1e-5..1e15).contains(&x.abs()) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

fn fmt_const(z: Complex64, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if z.im == 0.0 && z.re >= 0.0 {
        write!(f, "{}", fmt_real(z.re))
    } else if z.re == 0.0 && z.im >= 0.0 {
        write!(f, "{}i", fmt_real(z.im))
    } else if z.im == 0.0 {
        write!(f, "(-{})", fmt_real(-z.re))
    } else if z.re == 0.0 {
        write!(f, "(-{}i)", fmt_real(-z.im))
    } else {
        let (op, im) = if z.im < 0.0 { ('-', -z.im) } else { ('+', z.im) };
        write!(f, "({} {op} {}i)", fmt_real(z.re), fmt_real(im))
    }
}

// Writes `node` so that it parses back as a single unary-level operand.
fn fmt_atom(node: &Node, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match node {
        Node::Sum(_) | Node::Prod(_) => write!(f, "({node})"),
        _ => write!(f, "{node}"),
    }
}

// Writes `node` so that it parses back as a single term of a sum.
fn fmt_term(node: &Node, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match node {
        Node::Sum(_) => write!(f, "({node})"),
        _ => write!(f, "{node}"),
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::Var(i) => write!(f, "x{i}"),
            Node::Const(z) => fmt_const(*z, f),
            Node::Sum(children) => {
                for (k, c) in children.iter().enumerate() {
                    match (k, c) {
                        (0, _) => fmt_term(c, f)?,
                        (_, Node::Neg(inner)) => {
                            write!(f, " - ")?;
                            fmt_term(inner, f)?;
                        }
                        _ => {
                            write!(f, " + ")?;
                            fmt_term(c, f)?;
                        }
                    }
                }
                Ok(())
            }
            Node::Prod(children) => {
                for (k, c) in children.iter().enumerate() {
                    if k > 0 {
                        write!(f, "*")?;
                    }
                    match c {
                        Node::Neg(_) if k > 0 => write!(f, "({c})")?,
                        _ => fmt_atom(c, f)?,
                    }
                }
                Ok(())
            }
            Node::Neg(c) => {
                write!(f, "-")?;
                fmt_atom(c, f)
            }
            Node::Inv(c) => write!(f, "inv({c})"),
            Node::Exp(c) => write!(f, "exp({c})"),
            Node::Mat(grid) => {
                write!(f, "[")?;
                for (r, row) in grid.iter().enumerate() {
                    if r > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "[")?;
                    for (c, e) in row.iter().enumerate() {
                        if c > 0 {
                            write!(f, ", ")?;
                        }
                        write!(f, "{e}")?;
                    }
                    write!(f, "]")?;
                }
                write!(f, "]")
            }
        }
    }
}

impl fmt::Display for NcExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.root.fmt(f)
    }
}
