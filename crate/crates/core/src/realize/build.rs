//! Structural construction of pencils by the sum/product/inverse calculus.
//!
//! Internally a pencil carries a row `u` and a column `v` with
//! `r = u·L⁻¹·v`; the public [`Realization`] stores `b = u*` and `c = v`.

use num_complex::Complex64;

use super::Realization;
use crate::matcore::ComplexMatrix;
use crate::ncexpr::Node;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

struct Pencil {
    /// `A₀..A_d`, each `m×m`.
    a: Vec<ComplexMatrix>,
    /// `1×m`
    u: ComplexMatrix,
    /// `m×1`
    v: ComplexMatrix,
}

impl Pencil {
    fn m(&self) -> usize {
        self.u.cols()
    }

    /// `[[1, -ℓ], [0, 1]]` with `u = e₁`, `v = e₂`, giving `u·L⁻¹·v = ℓ`.
    fn seed(ell: &[Complex64]) -> Self {
        let a = ell
            .iter()
            .enumerate()
            .map(|(i, &coef)| {
                let mut m = if i == 0 {
                    ComplexMatrix::identity(2)
                } else {
                    ComplexMatrix::zeros(2, 2)
                };
                m[(0, 1)] = -coef;
                m
            })
            .collect();
        let mut u = ComplexMatrix::zeros(1, 2);
        u[(0, 0)] = ONE;
        let mut v = ComplexMatrix::zeros(2, 1);
        v[(1, 0)] = ONE;
        Self { a, u, v }
    }

    /// `L = [ℓ]` with `u = v = 1`, giving `ℓ⁻¹`.
    fn inverse_of_affine(ell: &[Complex64]) -> Self {
        Self {
            a: ell.iter().map(|&coef| ComplexMatrix::diag(&[coef])).collect(),
            u: ComplexMatrix::diag(&[ONE]),
            v: ComplexMatrix::diag(&[ONE]),
        }
    }

    fn sum(self, other: Pencil) -> Self {
        let a = self.a.iter().zip(&other.a).map(|(x, y)| x.direct_sum(y)).collect();
        let mut u = ComplexMatrix::zeros(1, self.m() + other.m());
        u.set_block(0, 0, &self.u);
        u.set_block(0, self.m(), &other.u);
        let mut v = ComplexMatrix::zeros(self.m() + other.m(), 1);
        v.set_block(0, 0, &self.v);
        v.set_block(self.m(), 0, &other.v);
        Self { a, u, v }
    }

    /// `[[L₁, -v₁u₂], [0, L₂]]` with `u = [u₁, 0]`, `v = [0; v₂]`.
    fn product(self, other: Pencil) -> Self {
        let (m1, m2) = (self.m(), other.m());
        let coupling = -&(&self.v * &other.u);
        let a = self
            .a
            .iter()
            .zip(&other.a)
            .enumerate()
            .map(|(i, (x, y))| {
                let mut blk = x.direct_sum(y);
                if i == 0 {
                    blk.set_block(0, m1, &coupling);
                }
                blk
            })
            .collect();
        let mut u = ComplexMatrix::zeros(1, m1 + m2);
        u.set_block(0, 0, &self.u);
        let mut v = ComplexMatrix::zeros(m1 + m2, 1);
        v.set_block(m1, 0, &other.v);
        Self { a, u, v }
    }

    fn negate(mut self) -> Self {
        self.u = -&self.u;
        self
    }

    /// Bordered inverse `[[0, u], [v, -L]]` with `u' = v' = e₁`: the Schur
    /// complement of `-L` is `u·L⁻¹·v = r`, so the corner of the inverse is
    /// `r⁻¹`.
    fn inverse(self) -> Self {
        let m = self.m();
        let a = self
            .a
            .iter()
            .enumerate()
            .map(|(i, x)| {
                let mut blk = ComplexMatrix::zeros(m + 1, m + 1);
                blk.set_block(1, 1, &-x);
                if i == 0 {
                    blk.set_block(0, 1, &self.u);
                    blk.set_block(1, 0, &self.v);
                }
                blk
            })
            .collect();
        let mut u = ComplexMatrix::zeros(1, m + 1);
        u[(0, 0)] = ONE;
        let mut v = ComplexMatrix::zeros(m + 1, 1);
        v[(0, 0)] = ONE;
        Self { a, u, v }
    }
}

/// Coefficients `(c₀, c₁, …, c_d)` when `node = c₀ + Σ cᵢ·xᵢ`, else `None`.
pub fn affine_coefficients(node: &Node, d: usize) -> Option<Vec<Complex64>> {
    let mut out = vec![ZERO; d + 1];
    match node {
        Node::Const(c) => out[0] = *c,
        Node::Var(i) => out[*i] = ONE,
        Node::Neg(c) => {
            out = affine_coefficients(c, d)?.into_iter().map(|z| -z).collect();
        }
        Node::Sum(children) => {
            for c in children {
                for (o, z) in out.iter_mut().zip(affine_coefficients(c, d)?) {
                    *o += z;
                }
            }
        }
        Node::Prod(children) => {
            let parts = children
                .iter()
                .map(|c| affine_coefficients(c, d))
                .collect::<Option<Vec<_>>>()?;
            let is_const = |p: &[Complex64]| p[1..].iter().all(|z| *z == ZERO);
            if parts.iter().filter(|p| !is_const(p)).count() > 1 {
                return None;
            }
            let scale: Complex64 = parts.iter().filter(|p| is_const(p)).map(|p| p[0]).product();
            match parts.iter().find(|p| !is_const(p)) {
                Some(lin) => out = lin.iter().map(|z| z * scale).collect(),
                None => out[0] = scale,
            }
        }
        Node::Inv(c) => {
            let inner = affine_coefficients(c, d)?;
            if inner[1..].iter().any(|z| *z != ZERO) || inner[0] == ZERO {
                return None;
            }
            out[0] = 1.0 / inner[0];
        }
        Node::Exp(_) | Node::Mat(_) => return None,
    }
    Some(out)
}

fn build(node: &Node, d: usize) -> Pencil {
    match node {
        Node::Var(_) | Node::Const(_) => {
            Pencil::seed(&affine_coefficients(node, d).expect("leaves are affine"))
        }
        Node::Sum(children) => children
            .iter()
            .map(|c| build(c, d))
            .reduce(Pencil::sum)
            .expect("sums have children"),
        Node::Prod(children) => children
            .iter()
            .map(|c| build(c, d))
            .reduce(Pencil::product)
            .expect("products have factors"),
        Node::Neg(c) => build(c, d).negate(),
        Node::Inv(c) => match affine_coefficients(c, d) {
            Some(ell) => Pencil::inverse_of_affine(&ell),
            None => build(c, d).inverse(),
        },
        Node::Exp(_) | Node::Mat(_) => unreachable!("rejected before construction"),
    }
}

pub(super) fn realize(node: &Node, d: usize) -> Realization {
    let p = build(node, d);
    Realization::new(p.a, p.u.conj_transpose(), p.v).expect("constructed pencil is consistent")
}

fn linear_entry(coeffs: &[ComplexMatrix], r: usize, c: usize) -> Node {
    let mut terms = Vec::new();
    if coeffs[0][(r, c)] != ZERO {
        terms.push(Node::Const(coeffs[0][(r, c)]));
    }
    for (i, a) in coeffs.iter().enumerate().skip(1) {
        let z = a[(r, c)];
        if z == ONE {
            terms.push(Node::Var(i));
        } else if z == -ONE {
            terms.push(Node::neg(Node::Var(i)));
        } else if z != ZERO {
            terms.push(Node::Prod(vec![Node::Const(z), Node::Var(i)]));
        }
    }
    match terms.len() {
        0 => Node::Const(ZERO),
        1 => terms.pop().unwrap(),
        _ => Node::Sum(terms),
    }
}

/// Square matricial polynomial whose `(r, c)` entry is
/// `A₀[r,c] + Σ Aᵢ[r,c]·xᵢ`.
pub(super) fn pencil_grid(coeffs: &[ComplexMatrix]) -> Node {
    let m = coeffs[0].rows();
    Node::Mat(
        (0..m)
            .map(|r| (0..m).map(|c| linear_entry(coeffs, r, c)).collect())
            .collect(),
    )
}
