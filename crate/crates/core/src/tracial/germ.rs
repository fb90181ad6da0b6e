use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{NcError, Result};
use crate::evalad::{dir_deriv, eval, value_and_deriv};
use crate::matcore::{random_tuple_with, seeded_rng, ComplexMatrix, Lu, MatrixTuple};
use crate::ncexpr::NcExpr;

/// Relative tolerance of the closedness symmetry test.
pub const CLOSEDNESS_TOL: f64 = 1e-5;

const CLOSEDNESS_SEED: u64 = 0x5eed_c105;
const CLOSEDNESS_NODES: usize = 5;

/// A tracial germ to continue along a path.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "GermJson", into = "GermJson")]
pub enum GermSpec {
    /// `log det e`, whose differential is `tr(De(X)[dX]·e(X)⁻¹)`.
    LogDet(NcExpr),
    /// A free 1-form `g = (g₁, …, g_d)` integrated as `Σ tr(dXᵢ·gᵢ(X))`.
    ClosedForm(Vec<NcExpr>),
}

#[derive(Serialize, Deserialize)]
struct GermJson {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    expr: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    g: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    d: Option<usize>,
}

impl TryFrom<GermJson> for GermSpec {
    type Error = NcError;

    fn try_from(j: GermJson) -> Result<Self> {
        match j.kind.as_str() {
            "logdet" => {
                let text = j
                    .expr
                    .ok_or_else(|| NcError::Invalid("logdet germ needs \"expr\"".into()))?;
                let e = match j.d {
                    Some(d) => NcExpr::parse(&text, d)?,
                    None => NcExpr::parse_infer(&text)?,
                };
                Ok(GermSpec::LogDet(e))
            }
            "closed_form" => {
                let g = j
                    .g
                    .ok_or_else(|| NcError::Invalid("closed_form germ needs \"g\"".into()))?;
                GermSpec::closed_form_from_strs(&g)
            }
            other => Err(NcError::Invalid(format!(
                "unknown germ kind `{other}` (expected logdet or closed_form)"
            ))),
        }
    }
}

impl From<GermSpec> for GermJson {
    fn from(g: GermSpec) -> Self {
        match g {
            GermSpec::LogDet(e) => GermJson {
                kind: "logdet".into(),
                d: Some(e.d()),
                expr: Some(e.to_string()),
                g: None,
            },
            GermSpec::ClosedForm(gs) => GermJson {
                kind: "closed_form".into(),
                expr: None,
                g: Some(gs.iter().map(ToString::to_string).collect()),
                d: None,
            },
        }
    }
}

impl GermSpec {
    pub fn logdet(text: &str) -> Result<Self> {
        Ok(GermSpec::LogDet(NcExpr::parse_infer(text)?))
    }

    /// One expression per variable, in order.
    pub fn closed_form_from_strs<S: AsRef<str>>(g: &[S]) -> Result<Self> {
        if g.is_empty() {
            return Err(NcError::Invalid("closed_form germ needs at least one component".into()));
        }
        let d = g.len();
        Ok(GermSpec::ClosedForm(
            g.iter().map(|s| NcExpr::parse(s.as_ref(), d)).collect::<Result<_>>()?,
        ))
    }

    pub fn d(&self) -> usize {
        match self {
            GermSpec::LogDet(e) => e.d(),
            GermSpec::ClosedForm(g) => g.len(),
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            GermSpec::LogDet(_) => "logdet",
            GermSpec::ClosedForm(_) => "closed_form",
        }
    }

    /// The germ over `d` variables; a log-det germ in fewer variables is
    /// lifted, a closed form must match exactly.
    pub(crate) fn for_vars(&self, d: usize) -> Result<Self> {
        match self {
            GermSpec::LogDet(e) if e.d() <= d => Ok(GermSpec::LogDet(e.with_vars(d)?)),
            GermSpec::ClosedForm(g) if g.len() == d => Ok(self.clone()),
            _ => Err(NcError::Dimension(format!(
                "germ has {} variables, path has {d}",
                self.d()
            ))),
        }
    }

    /// Value of the germ at the start point: the principal `log det` for
    /// log-det germs, zero for closed forms (defined up to a constant).
    pub fn start_value(&self, x: &MatrixTuple) -> Result<Complex64> {
        match self {
            GermSpec::LogDet(e) => {
                let v = eval(e, x)?.value;
                Lu::factor(&v)?.log_det().map_err(|_| NcError::DomainExit {
                    t: 0.0,
                    reason: "germ is singular at the start point".into(),
                })
            }
            GermSpec::ClosedForm(_) => Ok(Complex64::new(0.0, 0.0)),
        }
    }

    /// The differential paired with `dx` at `x`, plus the principal
    /// `log det` for log-det germs (used to cross-check branches).
    pub(crate) fn integrand(&self, x: &MatrixTuple, dx: &MatrixTuple, t: f64) -> Result<(Complex64, Option<Complex64>)> {
        let exit = |err: NcError| match err {
            NcError::Singular { pivot, context } => NcError::DomainExit {
                t,
                reason: format!(
                    "singular value encountered (pivot {pivot:.3e}){}",
                    context.map(|c| format!(" in `{c}`")).unwrap_or_default()
                ),
            },
            other => other,
        };
        match self {
            GermSpec::LogDet(e) => {
                let (value, dv) = value_and_deriv(e, x, dx).map_err(exit)?;
                let lu = Lu::factor(&value)?;
                if lu.is_singular() {
                    return Err(NcError::DomainExit {
                        t,
                        reason: format!("det f vanishes (pivot {:.3e})", lu.min_pivot()),
                    });
                }
                let w = lu.solve(&dv)?.trace();
                Ok((w, Some(lu.log_det()?)))
            }
            GermSpec::ClosedForm(g) => {
                let mut acc = Complex64::new(0.0, 0.0);
                for (gi, dxi) in g.iter().zip(dx.mats()) {
                    let v = eval(gi, x).map_err(exit)?.value;
                    check_square_n(&v, x.n())?;
                    acc += (dxi * &v).trace();
                }
                Ok((acc, None))
            }
        }
    }

    /// Symmetry test `Σ tr(Kᵢ·Dgᵢ[H]) = Σ tr(Hᵢ·Dgᵢ[K])` at a few nodes of
    /// `points`; log-det germs are exact and always pass.
    pub fn check_closed(&self, points: &[&MatrixTuple]) -> Result<()> {
        let GermSpec::ClosedForm(g) = self else {
            return Ok(());
        };
        let mut rng = seeded_rng(CLOSEDNESS_SEED);
        let stride = points.len().div_ceil(CLOSEDNESS_NODES).max(1);
        for x in points.iter().step_by(stride) {
            let h = random_tuple_with(x.n(), x.d(), &mut rng);
            let k = random_tuple_with(x.n(), x.d(), &mut rng);
            let mut lhs = Complex64::new(0.0, 0.0);
            let mut rhs = Complex64::new(0.0, 0.0);
            let mut size = 0.0;
            for (i, gi) in g.iter().enumerate() {
                let dh = dir_deriv(gi, x, &h)?;
                let dk = dir_deriv(gi, x, &k)?;
                check_square_n(&dh, x.n())?;
                let a = (k.get(i) * &dh).trace();
                let b = (h.get(i) * &dk).trace();
                lhs += a;
                rhs += b;
                size += a.norm() + b.norm();
            }
            if (lhs - rhs).norm() > CLOSEDNESS_TOL * (1.0 + size) {
                return Err(NcError::NotClosed(format!(
                    "mixed pairings differ by {:.3e} at a size-{} node",
                    (lhs - rhs).norm(),
                    x.n()
                )));
            }
        }
        Ok(())
    }
}

fn check_square_n(v: &ComplexMatrix, n: usize) -> Result<()> {
    if v.rows() != n || v.cols() != n {
        return Err(NcError::Dimension(format!(
            "1-form components must be {n}x{n}, got {}x{}",
            v.rows(),
            v.cols()
        )));
    }
    Ok(())
}
