//! Linear pencil realizations of rational expressions.
//!
//! A scalar rational expression `r` is written as `r = b*·L⁻¹·c` where
//! `L(x) = A₀ + Σ Aᵢ·xᵢ` is an affine matrix pencil and `b`, `c` are constant
//! columns. On a tuple `X` of `n×n` matrices the pencil becomes
//! `A₀⊗I + Σ Aᵢ⊗Xᵢ`, and
//!
//! ```text
//! det r(X) = det [[L(X), c], [-b*, 0]] / det L(X),
//! ```
//!
//! which splits the divisor of `r` into the difference of the divisors of two
//! matricial polynomials.

mod build;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{NcError, Result};
use crate::evalad::{divisor, DivisorMethod, DivisorValue};
use crate::matcore::{lu_det, solve, ComplexMatrix, Lu, MatrixTuple};
use crate::ncexpr::{classify, probe_nondegenerate, NcExpr, Node, ProbeVerdict};
use crate::ncexpr::{DEFAULT_PROBE_SIZES, DEFAULT_PROBE_TRIALS};

pub use build::affine_coefficients;

/// `r = b*·L⁻¹·c` with `L = A₀ + Σ Aᵢ·xᵢ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RealizationJson", into = "RealizationJson")]
pub struct Realization {
    m: usize,
    d: usize,
    k: usize,
    coefficients: Vec<ComplexMatrix>,
    b: ComplexMatrix,
    c: ComplexMatrix,
}

#[derive(Serialize, Deserialize)]
struct RealizationJson {
    m: usize,
    d: usize,
    k: usize,
    #[serde(rename = "A")]
    a: Vec<ComplexMatrix>,
    b: ComplexMatrix,
    c: ComplexMatrix,
}

impl TryFrom<RealizationJson> for Realization {
    type Error = NcError;

    fn try_from(j: RealizationJson) -> Result<Self> {
        let r = Realization::new(j.a, j.b, j.c)?;
        if (r.m, r.d, r.k) != (j.m, j.d, j.k) {
            return Err(NcError::Invalid(format!(
                "declared (m, d, k) = ({}, {}, {}) but data has ({}, {}, {})",
                j.m, j.d, j.k, r.m, r.d, r.k
            )));
        }
        Ok(r)
    }
}

impl From<Realization> for RealizationJson {
    fn from(r: Realization) -> Self {
        RealizationJson {
            m: r.m,
            d: r.d,
            k: r.k,
            a: r.coefficients,
            b: r.b,
            c: r.c,
        }
    }
}

impl Realization {
    /// `coefficients` holds `A₀, A₁, …, A_d`.
    pub fn new(coefficients: Vec<ComplexMatrix>, b: ComplexMatrix, c: ComplexMatrix) -> Result<Self> {
        if coefficients.len() < 2 {
            return Err(NcError::Invalid(
                "a realization needs A0 and at least one variable coefficient".into(),
            ));
        }
        let m = coefficients[0].rows();
        if coefficients.iter().any(|a| a.rows() != m || a.cols() != m) {
            return Err(NcError::Dimension("pencil coefficients must all be m×m".into()));
        }
        let k = b.cols();
        if b.rows() != m || c.rows() != m || c.cols() != k {
            return Err(NcError::Dimension(format!(
                "b is {}x{} and c is {}x{}, expected both {m}x{k}",
                b.rows(),
                b.cols(),
                c.rows(),
                c.cols()
            )));
        }
        Ok(Self {
            m,
            d: coefficients.len() - 1,
            k,
            coefficients,
            b,
            c,
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn coefficients(&self) -> &[ComplexMatrix] {
        &self.coefficients
    }

    pub fn b(&self) -> &ComplexMatrix {
        &self.b
    }

    pub fn c(&self) -> &ComplexMatrix {
        &self.c
    }

    fn check_point(&self, x: &MatrixTuple) -> Result<()> {
        if x.d() != self.d {
            return Err(NcError::Dimension(format!(
                "realization has {} variables, point has {}",
                self.d,
                x.d()
            )));
        }
        Ok(())
    }

    /// `L(X) = A₀⊗I + Σ Aᵢ⊗Xᵢ`.
    pub fn pencil_at(&self, x: &MatrixTuple) -> Result<ComplexMatrix> {
        self.check_point(x)?;
        let ident = ComplexMatrix::identity(x.n());
        let mut l = self.coefficients[0].kron(&ident);
        for (a, xi) in self.coefficients[1..].iter().zip(x.mats()) {
            l += &a.kron(xi);
        }
        Ok(l)
    }

    /// The bordered pencil `[[L(X), c⊗I], [-b*⊗I, 0]]`.
    pub fn bordered_at(&self, x: &MatrixTuple) -> Result<ComplexMatrix> {
        let n = x.n();
        let l = self.pencil_at(x)?;
        let ident = ComplexMatrix::identity(n);
        let mn = self.m * n;
        let kn = self.k * n;
        let mut p = ComplexMatrix::zeros(mn + kn, mn + kn);
        p.set_block(0, 0, &l);
        p.set_block(0, mn, &self.c.kron(&ident));
        p.set_block(mn, 0, &(-&self.b.conj_transpose()).kron(&ident));
        Ok(p)
    }

    /// The two square matricial polynomials of the determinant-ratio split.
    pub fn det_ratio_pair(&self) -> DetRatioPair {
        let q = build::pencil_grid(&self.coefficients);
        let mut p_coeffs = Vec::with_capacity(self.d + 1);
        let size = self.m + self.k;
        for (i, a) in self.coefficients.iter().enumerate() {
            let mut big = ComplexMatrix::zeros(size, size);
            big.set_block(0, 0, a);
            if i == 0 {
                big.set_block(0, self.m, &self.c);
                big.set_block(self.m, 0, &-&self.b.conj_transpose());
            }
            p_coeffs.push(big);
        }
        let p = build::pencil_grid(&p_coeffs);
        DetRatioPair {
            p: NcExpr::new(p, self.d).expect("pencil variables in range"),
            q: NcExpr::new(q, self.d).expect("pencil variables in range"),
        }
    }
}

/// `det r = det p / det q` with `p` the bordered pencil and `q` the pencil.
#[derive(Debug, Clone, PartialEq)]
pub struct DetRatioPair {
    pub p: NcExpr,
    pub q: NcExpr,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DetRatio {
    pub det_bordered: Complex64,
    pub det_pencil: Complex64,
    pub ratio: Complex64,
}

/// Builds a realization of a scalar rational expression, after probing it
/// for nondegeneracy with the default sizes and trial count.
pub fn linearize(e: &NcExpr) -> Result<Realization> {
    linearize_with_probe(e, &DEFAULT_PROBE_SIZES, DEFAULT_PROBE_TRIALS, 0)
}

pub fn linearize_with_probe(e: &NcExpr, sizes: &[usize], trials: usize, seed: u64) -> Result<Realization> {
    let class = classify(e)?;
    if !class.is_rational {
        return Err(NcError::Unsupported(
            "expressions containing exp have no pencil realization".into(),
        ));
    }
    if class.is_matricial {
        return Err(NcError::Unsupported(
            "matricial expressions must be linearized entrywise".into(),
        ));
    }
    match probe_nondegenerate(e, sizes, trials, seed) {
        ProbeVerdict::Ok { .. } => {}
        ProbeVerdict::DegenerateSuspect { attempts, last_error } => {
            return Err(NcError::Degenerate(format!(
                "no well-defined value in {attempts} random points (last failure: {last_error})"
            )))
        }
    }
    Ok(build::realize(e.root(), e.d()))
}

fn pencil_singular(err: NcError) -> NcError {
    match err {
        NcError::Singular { pivot, .. } => {
            NcError::PencilSingular(format!("L(X) has pivot {pivot:.3e}"))
        }
        other => other,
    }
}

/// `(b⊗I)*·L(X)⁻¹·(c⊗I)`.
pub fn realization_eval(r: &Realization, x: &MatrixTuple) -> Result<ComplexMatrix> {
    let l = r.pencil_at(x)?;
    let ident = ComplexMatrix::identity(x.n());
    let z = solve(&l, &r.c.kron(&ident)).map_err(pencil_singular)?;
    Ok(&r.b.kron(&ident).conj_transpose() * &z)
}

pub fn det_ratio(r: &Realization, x: &MatrixTuple) -> Result<DetRatio> {
    let l = r.pencil_at(x)?;
    let lu = Lu::factor(&l)?;
    if lu.is_singular() {
        return Err(pencil_singular(NcError::Singular {
            pivot: lu.min_pivot(),
            context: None,
        }));
    }
    let det_pencil = lu.det();
    let det_bordered = lu_det(&r.bordered_at(x)?)?;
    Ok(DetRatio {
        det_bordered,
        det_pencil,
        ratio: det_bordered / det_pencil,
    })
}

/// `(div p(X), div q(X))`; their difference is the divisor of `r` at `X`.
pub fn divisor_split(r: &Realization, x: &MatrixTuple) -> Result<(DivisorValue, DivisorValue)> {
    let pair = r.det_ratio_pair();
    let q = divisor(&pair.q, x, DivisorMethod::Reverse).map_err(|e| match e {
        NcError::OnZeroSet(msg) => NcError::PencilSingular(msg),
        other => other,
    })?;
    let p = divisor(&pair.p, x, DivisorMethod::Reverse)?;
    Ok((p, q))
}

/// Grid expression `[[A, B], [C, D]]` in four variables, used by the Schur
/// complement identities.
pub fn block_2x2_expr() -> NcExpr {
    let grid = vec![
        vec![Node::Var(1), Node::Var(2)],
        vec![Node::Var(3), Node::Var(4)],
    ];
    NcExpr::new(Node::Mat(grid), 4).expect("four variables")
}

#[cfg(test)]
mod tests;
