use serde::{Deserialize, Serialize};

use crate::error::{NcError, Result};
use crate::matcore::MatrixTuple;

/// Tolerance used when comparing essential endpoints.
pub const ENDPOINT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathNode {
    pub t: f64,
    #[serde(rename = "X")]
    pub x: MatrixTuple,
}

/// Piecewise-linear path in `Mₙ(ℂ)^d` with `γ(0) = X^{⊕k}` and
/// `γ(1) = Y^{⊕l}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PathJson", into = "PathJson")]
pub struct PathSpec {
    d: usize,
    n: usize,
    pad_start: usize,
    pad_end: usize,
    nodes: Vec<PathNode>,
    base: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct PathJson {
    d: usize,
    n: usize,
    pad_start: usize,
    pad_end: usize,
    nodes: Vec<PathNode>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    base: Option<String>,
}

impl TryFrom<PathJson> for PathSpec {
    type Error = NcError;

    fn try_from(j: PathJson) -> Result<Self> {
        let p = PathSpec::new(j.nodes, j.pad_start, j.pad_end)?;
        if (p.d, p.n) != (j.d, j.n) {
            return Err(NcError::Invalid(format!(
                "declared (d, n) = ({}, {}) but nodes have ({}, {})",
                j.d, j.n, p.d, p.n
            )));
        }
        Ok(p.with_base(j.base))
    }
}

impl From<PathSpec> for PathJson {
    fn from(p: PathSpec) -> Self {
        PathJson {
            d: p.d,
            n: p.n,
            pad_start: p.pad_start,
            pad_end: p.pad_end,
            nodes: p.nodes,
            base: p.base,
        }
    }
}

fn essential_block(x: &MatrixTuple, k: usize, which: &str) -> Result<MatrixTuple> {
    let n = x.n();
    if k == 0 || n % k != 0 {
        return Err(NcError::Invalid(format!(
            "{which} padding {k} does not divide the path size {n}"
        )));
    }
    let b = n / k;
    let block = MatrixTuple::new(x.mats().iter().map(|m| m.block(0, 0, b, b)).collect())?;
    let scale = 1.0 + x.frobenius_norm();
    if x.max_abs_diff(&block.direct_power(k)) > ENDPOINT_TOL * scale {
        return Err(NcError::Invalid(format!(
            "{which} point is not a {k}-fold direct sum of a {b}x{b} tuple"
        )));
    }
    Ok(block)
}

impl PathSpec {
    pub fn new(nodes: Vec<PathNode>, pad_start: usize, pad_end: usize) -> Result<Self> {
        if nodes.len() < 2 {
            return Err(NcError::Invalid("a path needs at least two nodes".into()));
        }
        let (d, n) = (nodes[0].x.d(), nodes[0].x.n());
        if n == 0 {
            return Err(NcError::Invalid("path points must have positive size".into()));
        }
        for node in &nodes {
            node.x.check_compatible(&nodes[0].x)?;
            if !node.t.is_finite() {
                return Err(NcError::Invalid("node times must be finite".into()));
            }
        }
        if nodes[0].t != 0.0 || nodes[nodes.len() - 1].t != 1.0 {
            return Err(NcError::Invalid("node times must start at 0 and end at 1".into()));
        }
        if nodes.windows(2).any(|w| w[1].t <= w[0].t) {
            return Err(NcError::Invalid("node times must be strictly increasing".into()));
        }
        let p = Self {
            d,
            n,
            pad_start,
            pad_end,
            nodes,
            base: None,
        };
        p.essential_start()?;
        p.essential_end()?;
        Ok(p)
    }

    /// Path through `points` at equally spaced times.
    pub fn uniform(points: Vec<MatrixTuple>, pad_start: usize, pad_end: usize) -> Result<Self> {
        let last = points.len().saturating_sub(1).max(1) as f64;
        let nodes = points
            .into_iter()
            .enumerate()
            .map(|(i, x)| PathNode { t: i as f64 / last, x })
            .collect();
        Self::new(nodes, pad_start, pad_end)
    }

    /// Constant path at `x` (padding 1 at both ends).
    pub fn constant(x: MatrixTuple) -> Self {
        Self::uniform(vec![x.clone(), x], 1, 1).expect("constant path is valid")
    }

    pub fn with_base(mut self, base: Option<String>) -> Self {
        self.base = base;
        self
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn pad_start(&self) -> usize {
        self.pad_start
    }

    pub fn pad_end(&self) -> usize {
        self.pad_end
    }

    pub fn nodes(&self) -> &[PathNode] {
        &self.nodes
    }

    pub fn base(&self) -> Option<&str> {
        self.base.as_deref()
    }

    pub fn start(&self) -> &MatrixTuple {
        &self.nodes[0].x
    }

    pub fn end(&self) -> &MatrixTuple {
        &self.nodes[self.nodes.len() - 1].x
    }

    /// `X` with `γ(0) = X^{⊕k}`.
    pub fn essential_start(&self) -> Result<MatrixTuple> {
        essential_block(self.start(), self.pad_start, "start")
    }

    /// `Y` with `γ(1) = Y^{⊕l}`.
    pub fn essential_end(&self) -> Result<MatrixTuple> {
        essential_block(self.end(), self.pad_end, "end")
    }

    pub fn is_loop(&self) -> bool {
        match (self.essential_start(), self.essential_end()) {
            (Ok(a), Ok(b)) => essentially_equal(&a, &b),
            _ => false,
        }
    }

    /// `γ(t)` by linear interpolation.
    pub fn at(&self, t: f64) -> MatrixTuple {
        let t = t.clamp(0.0, 1.0);
        let i = self.nodes.partition_point(|nd| nd.t <= t).clamp(1, self.nodes.len() - 1);
        let (a, b) = (&self.nodes[i - 1], &self.nodes[i]);
        a.x.lerp(&b.x, (t - a.t) / (b.t - a.t))
    }

    /// Same path with midpoints inserted `times` times; the geometry is
    /// unchanged.
    pub fn refined(&self, times: usize) -> Self {
        let mut nodes = self.nodes.clone();
        for _ in 0..times {
            let mut next = Vec::with_capacity(2 * nodes.len());
            for w in nodes.windows(2) {
                next.push(w[0].clone());
                next.push(PathNode {
                    t: 0.5 * (w[0].t + w[1].t),
                    x: w[0].x.lerp(&w[1].x, 0.5),
                });
            }
            next.push(nodes[nodes.len() - 1].clone());
            nodes = next;
        }
        Self { nodes, ..self.clone() }
    }

    /// Monotone reparametrization `t ↦ φ(t)` of the node times.
    pub fn retimed(&self, phi: impl Fn(f64) -> f64) -> Result<Self> {
        let nodes = self
            .nodes
            .iter()
            .map(|nd| PathNode {
                t: phi(nd.t),
                x: nd.x.clone(),
            })
            .collect();
        Ok(Self::new(nodes, self.pad_start, self.pad_end)?.with_base(self.base.clone()))
    }

    /// Pointwise `γ^{⊕m}`.
    pub fn direct_power(&self, m: usize) -> Self {
        assert!(m > 0, "direct power needs at least one copy");
        Self {
            n: self.n * m,
            pad_start: self.pad_start * m,
            pad_end: self.pad_end * m,
            nodes: self
                .nodes
                .iter()
                .map(|nd| PathNode {
                    t: nd.t,
                    x: nd.x.direct_power(m),
                })
                .collect(),
            ..self.clone()
        }
    }

    /// Pointwise `γ₁ ⊕ γ₂` over the union of both node grids. Both paths
    /// must essentially start at the same point and end at the same point.
    pub fn direct_sum(&self, other: &PathSpec) -> Result<Self> {
        check_same_d(self, other)?;
        let (s1, s2) = (self.essential_start()?, other.essential_start()?);
        let (e1, e2) = (self.essential_end()?, other.essential_end()?);
        if !essentially_equal(&s1, &s2) || !essentially_equal(&e1, &e2) {
            return Err(NcError::EndpointMismatch(
                "direct summands must share essential endpoints".into(),
            ));
        }
        let mut times: Vec<f64> = self.nodes.iter().chain(&other.nodes).map(|nd| nd.t).collect();
        times.sort_by(f64::total_cmp);
        times.dedup();
        let nodes = times
            .into_iter()
            .map(|t| {
                Ok(PathNode {
                    t,
                    x: self.at(t).direct_sum(&other.at(t))?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(nodes, self.pad_start + other.pad_start, self.pad_end + other.pad_end)?
            .with_base(self.base.clone()))
    }

    /// Simultaneous conjugation `U*·γ(t)·U` at every node.
    pub fn conjugate_by(&self, u: &crate::matcore::ComplexMatrix) -> Result<Self> {
        let nodes = self
            .nodes
            .iter()
            .map(|nd| PathNode {
                t: nd.t,
                x: nd.x.conjugate_by(u),
            })
            .collect();
        Ok(Self::new(nodes, self.pad_start, self.pad_end)?.with_base(self.base.clone()))
    }
}

fn check_same_d(a: &PathSpec, b: &PathSpec) -> Result<()> {
    if a.d != b.d {
        return Err(NcError::Dimension(format!(
            "paths have {} and {} variables",
            a.d, b.d
        )));
    }
    Ok(())
}

/// Same size and equal entries up to [`ENDPOINT_TOL`] (relative).
pub fn essentially_equal(a: &MatrixTuple, b: &MatrixTuple) -> bool {
    a.n() == b.n()
        && a.d() == b.d()
        && a.max_abs_diff(b) <= ENDPOINT_TOL * (1.0 + a.frobenius_norm().max(b.frobenius_norm()))
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Concatenation: `γ₁` on `[0, ½]`, then `γ₂` on `[½, 1]`, each inflated by
/// a direct-sum power so both run at size `lcm(n₁, n₂)`.
pub fn concatenate(g1: &PathSpec, g2: &PathSpec) -> Result<PathSpec> {
    check_same_d(g1, g2)?;
    let y1 = g1.essential_end()?;
    let x2 = g2.essential_start()?;
    if !essentially_equal(&y1, &x2) {
        return Err(NcError::EndpointMismatch(format!(
            "first path essentially ends at a size-{} point that differs from the size-{} start of the second",
            y1.n(),
            x2.n()
        )));
    }
    let size = g1.n / gcd(g1.n, g2.n) * g2.n;
    let (m1, m2) = (size / g1.n, size / g2.n);
    let a = g1.direct_power(m1);
    let b = g2.direct_power(m2);
    let mut nodes: Vec<PathNode> = a
        .nodes
        .into_iter()
        .map(|nd| PathNode { t: 0.5 * nd.t, x: nd.x })
        .collect();
    nodes.extend(b.nodes.into_iter().skip(1).map(|nd| PathNode {
        t: 0.5 + 0.5 * nd.t,
        x: nd.x,
    }));
    Ok(PathSpec::new(nodes, a.pad_start, b.pad_end)?.with_base(g1.base.clone()))
}
