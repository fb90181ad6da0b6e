use std::f64::consts::PI;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::Rng;

use super::gen::{random_expr, random_point};
use super::Tracker;
use crate::evalad::{dir_deriv, divisor, eval, DivisorMethod, DivisorValue};
use crate::matcore::{
    expm, log_det, lu_det, random_matrix, seeded_rng, solve, solve_inv, ComplexMatrix, MatrixTuple, NcRng,
};
use crate::ncexpr::{NcExpr, Node};
use crate::realize::{block_2x2_expr, det_ratio, divisor_split, linearize, realization_eval};
use crate::tracial::gen::{circle_det, diag_rotation, paper_2x2, random_gl_loop, DEFAULT_SAMPLES};
use crate::tracial::{
    concatenate, continue_germ, integrality_test, loop_phi, quantization_check, trace_equiv_check, DomainSpec,
    GermSpec, IntegralityVerdict, PathSpec, TraceEquivVerdict, DEFAULT_INTEGRATION_TOL,
};

/// Rational expressions (with their variable counts) used by the
/// linearization checks.
pub const RATIONAL_CORPUS: [(&str, usize); 10] = [
    ("inv(x1)", 1),
    ("x1", 1),
    ("inv(1 - x1*x2)", 2),
    ("x1 + inv(x2)", 2),
    ("inv(x1)*x2*inv(x1)", 2),
    ("x1*inv(1 + x2*x1)*x2", 2),
    ("inv(x1 + inv(x2))", 2),
    ("inv(x1*x2 - x2*x1 + 2)", 2),
    ("(1 + x1)*inv(2 - x2*x3)*(x3 - 1i)", 3),
    ("inv(inv(x1) + inv(x2)) - x1*x2 + 3", 2),
];

/// Sample points whose inverses (inside the expression or of its value) have
/// a larger 1-norm condition number than this are redrawn.
const MAX_CONDITION: f64 = 1e6;

const POINT_ATTEMPTS: usize = 50;

fn rng_for(seed: u64, id: u64) -> NcRng {
    seeded_rng(seed ^ id.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

fn two_pi_i() -> Complex64 {
    Complex64::new(0.0, 2.0 * PI)
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(f64::MIN_POSITIVE)
}

fn rel_mat(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    (a - b).frobenius_norm() / (1.0 + b.frobenius_norm())
}

// Distance from z to 2πi·ℤ.
fn mod_2pi_i(z: Complex64) -> f64 {
    let k = (z.im / (2.0 * PI)).round();
    (z - two_pi_i() * k).norm()
}

fn inv(m: &ComplexMatrix) -> ComplexMatrix {
    solve_inv(m).expect("sampled matrices are invertible").inverse
}

/// Value of `e` at `x` if it and every inverse involved are well conditioned.
fn well_conditioned(e: &NcExpr, x: &MatrixTuple) -> Option<ComplexMatrix> {
    let r = eval(e, x).ok()?;
    if r.condition > MAX_CONDITION {
        return None;
    }
    let c = solve_inv(&r.value).ok()?.condition;
    (c <= MAX_CONDITION).then_some(r.value)
}

fn good_point(rng: &mut NcRng, e: &NcExpr, n: usize, scale: f64) -> Option<(MatrixTuple, ComplexMatrix)> {
    (0..POINT_ATTEMPTS).find_map(|_| {
        let x = random_point(rng, n, e.d(), scale);
        well_conditioned(e, &x).map(|v| (x, v))
    })
}

fn pairing_scale(g: &DivisorValue, h: &MatrixTuple) -> f64 {
    1.0 + g.frobenius_norm() + h.frobenius_norm()
}

pub(super) fn weinstein_aronszajn(seed: u64) -> Tracker {
    let mut t = Tracker::new(1e-10);
    let mut rng = rng_for(seed, 1);
    let start = Instant::now();
    for i in 0..100 {
        let n = 1 + i % 8;
        let x = random_point(&mut rng, n, 2, 1.0);
        let (a, b) = (x.get(0), x.get(1));
        let lhs = lu_det(&(a * b).add_scalar(Complex64::new(1.0, 0.0)));
        let rhs = lu_det(&(b * a).add_scalar(Complex64::new(1.0, 0.0)));
        match (lhs, rhs) {
            (Ok(l), Ok(r)) => t.residual(rel(l, r)),
            (l, r) => t.fail(format!("determinant failed: {l:?} / {r:?}")),
        }
    }
    let elapsed = start.elapsed();
    t.require(elapsed < Duration::from_secs(5), || {
        format!("took {:.2} s, limit 5 s", elapsed.as_secs_f64())
    });
    t
}

pub(super) fn divisor_closed_form(seed: u64) -> Tracker {
    let mut t = Tracker::new(1e-8);
    let mut rng = rng_for(seed, 2);
    let e1 = NcExpr::parse("1 + x1*x2", 2).expect("literal parses");
    let e2 = NcExpr::parse("1 + x2*x1", 2).expect("literal parses");
    let mut drawn = 0;
    for i in 0..100 {
        let n = 1 + i % 6;
        let Some((x, _)) = good_point(&mut rng, &e1, n, 1.0) else {
            t.fail(format!("no well-conditioned point at n = {n}"));
            continue;
        };
        drawn += 1;
        let (a, b) = (x.get(0), x.get(1));
        let m = inv(&(a * b).add_scalar(Complex64::new(1.0, 0.0)));
        let expected = [b * &m, &m * a];
        let scale = 1.0 + expected.iter().map(ComplexMatrix::frobenius_norm).sum::<f64>();
        for e in [&e1, &e2] {
            match divisor(e, &x, DivisorMethod::Reverse) {
                Ok(g) => {
                    for (gi, ei) in g.components.iter().zip(&expected) {
                        t.residual(gi.max_abs_diff(ei) / scale);
                    }
                }
                Err(err) => t.fail(format!("divisor of `{e}` failed: {err}")),
            }
        }
    }
    t.note(format!("{drawn} points"));
    t
}

/// A random expression together with a well-conditioned point for it.
fn random_case(rng: &mut NcRng, d: usize, n: usize, allow_exp: bool) -> (NcExpr, MatrixTuple) {
    loop {
        let e = random_expr(rng, d, 4, allow_exp);
        if let Some((x, _)) = good_point(rng, &e, n, 1.0) {
            return (e, x);
        }
    }
}

pub(super) fn reverse_equals_forward(seed: u64) -> Tracker {
    let mut t = Tracker::new(1e-9);
    let mut rng = rng_for(seed, 3);
    for i in 0..50 {
        let (d, n) = (1 + i % 3, 1 + i % 4);
        let (e, x) = random_case(&mut rng, d, n, true);
        let rev = divisor(&e, &x, DivisorMethod::Reverse);
        let fwd = divisor(&e, &x, DivisorMethod::Forward);
        match (rev, fwd) {
            (Ok(r), Ok(f)) => t.residual(r.max_abs_diff(&f) / (1.0 + f.frobenius_norm())),
            (r, f) => t.fail(format!("`{e}`: {:?} / {:?}", r.err(), f.err())),
        }
    }
    t
}

fn jacobi_rhs(e: &NcExpr, x: &MatrixTuple, value: &ComplexMatrix, h: &MatrixTuple) -> crate::Result<Complex64> {
    let dv = dir_deriv(e, x, h)?;
    Ok(solve(value, &dv)?.trace())
}

pub(super) fn jacobi_pairing(seed: u64) -> Tracker {
    let mut t = Tracker::new(1e-8);
    let mut rng = rng_for(seed, 4);
    for i in 0..10 {
        let (d, n) = (1 + i % 3, 1 + i % 4);
        let (e, x) = random_case(&mut rng, d, n, true);
        let value = eval(&e, &x).expect("point was screened").value;
        let g = match divisor(&e, &x, DivisorMethod::Reverse) {
            Ok(g) => g,
            Err(err) => {
                t.fail(format!("`{e}`: {err}"));
                continue;
            }
        };
        for _ in 0..20 {
            let h = random_point(&mut rng, n, d, 1.0);
            match jacobi_rhs(&e, &x, &value, &h) {
                Ok(rhs) => t.residual((g.pair(&h) - rhs).norm() / pairing_scale(&g, &h)),
                Err(err) => t.fail(format!("`{e}`: {err}")),
            }
        }
    }
    t
}

pub(super) fn divisor_additivity(seed: u64) -> Tracker {
    let mut t = Tracker::new(1e-8);
    let mut rng = rng_for(seed, 5);
    let mut redrawn = 0;
    for i in 0..20 {
        let (d, n) = (1 + i % 3, 1 + i % 4);
        // redraw pairs that have no well-conditioned point (e.g. inv(x1 - x1))
        let (f, g, fg, x) = loop {
            let f = random_expr(&mut rng, d, 3, true);
            let g = random_expr(&mut rng, d, 3, true);
            let fg = NcExpr::new(Node::Prod(vec![f.root().clone(), g.root().clone()]), d).expect("same variables");
            let point = (0..POINT_ATTEMPTS).find_map(|_| {
                let x = random_point(&mut rng, n, d, 1.0);
                let ok = [&f, &g, &fg].iter().all(|e| well_conditioned(e, &x).is_some());
                ok.then_some(x)
            });
            match point {
                Some(x) => break (f, g, fg, x),
                None => redrawn += 1,
            }
        };
        let divs = [&fg, &f, &g].map(|e| divisor(e, &x, DivisorMethod::Reverse));
        let [Ok(dfg), Ok(df), Ok(dg)] = divs else {
            t.fail(format!("divisor failed for `{f}` · `{g}`"));
            continue;
        };
        for _ in 0..5 {
            let h = random_point(&mut rng, n, d, 1.0);
            let scale = 1.0 + dfg.frobenius_norm() + df.frobenius_norm() + dg.frobenius_norm() + h.frobenius_norm();
            t.residual((dfg.pair(&h) - df.pair(&h) - dg.pair(&h)).norm() / scale);
        }
    }
    if redrawn > 0 {
        t.note(format!("{redrawn} expression pair(s) redrawn for lack of a well-conditioned point"));
    }
    t
}

fn unit_ball_matrix(rng: &mut NcRng, n: usize) -> ComplexMatrix {
    let a = random_matrix(n, rng);
    let r: f64 = rng.random_range(0.05..=1.0);
    // the Frobenius norm bounds the operator norm
    a.scale_real(r / a.frobenius_norm())
}

pub(super) fn exponential_identities(seed: u64) -> Tracker {
    let mut t = Tracker::new(1e-8);
    let mut rng = rng_for(seed, 6);
    for i in 0..50 {
        let n = 1 + i % 5;
        let (x, y) = (unit_ball_matrix(&mut rng, n), unit_ball_matrix(&mut rng, n));
        let (ex, ey) = match (expm(&x), expm(&y)) {
            (Ok(a), Ok(b)) => (a, b),
            (a, b) => {
                t.fail(format!("expm failed: {:?} / {:?}", a.err(), b.err()));
                continue;
            }
        };
        match lu_det(&ex) {
            Ok(det) => t.residual(rel(det, x.trace().exp())),
            Err(err) => t.fail(err.to_string()),
        }
        match log_det(&(&ex * &ey)) {
            Ok(ld) => t.residual(mod_2pi_i(ld - x.trace() - y.trace())),
            Err(err) => t.fail(err.to_string()),
        }
    }
    t
}

struct CorpusPoint {
    expr: NcExpr,
    x: MatrixTuple,
    value: ComplexMatrix,
}

// Fifty well-conditioned points per corpus expression, sizes cycling 1..4.
fn corpus_points(seed: u64, id: u64, per_expr: usize, t: &mut Tracker) -> Vec<(usize, Vec<CorpusPoint>)> {
    let mut rng = rng_for(seed, id);
    RATIONAL_CORPUS
        .iter()
        .enumerate()
        .map(|(k, &(text, d))| {
            let expr = NcExpr::parse(text, d).expect("corpus parses");
            let pts = (0..per_expr)
                .filter_map(|j| {
                    let n = 1 + j % 4;
                    match good_point(&mut rng, &expr, n, 1.0) {
                        Some((x, value)) => Some(CorpusPoint {
                            expr: expr.clone(),
                            x,
                            value,
                        }),
                        None => {
                            t.fail(format!("`{text}`: no well-conditioned point at n = {n}"));
                            None
                        }
                    }
                })
                .collect();
            (k, pts)
        })
        .collect()
}

pub(super) fn linearization(seed: u64) -> Tracker {
    let mut t = Tracker::new(1e-9);
    let mut det_worst: f64 = 0.0;
    for (k, pts) in corpus_points(seed, 7, 50, &mut t) {
        let text = RATIONAL_CORPUS[k].0;
        let Some(first) = pts.first() else { continue };
        let r = match linearize(&first.expr) {
            Ok(r) => r,
            Err(err) => {
                t.fail(format!("`{text}`: {err}"));
                continue;
            }
        };
        for p in &pts {
            match realization_eval(&r, &p.x) {
                Ok(v) => t.residual(rel_mat(&v, &p.value)),
                Err(err) => t.fail(format!("`{text}`: {err}")),
            }
            match (det_ratio(&r, &p.x), lu_det(&p.value)) {
                (Ok(dr), Ok(det)) => {
                    let res = (dr.ratio - det).norm() / (1.0 + det.norm());
                    det_worst = det_worst.max(res);
                    t.require(res <= 1e-8, || format!("`{text}`: det ratio residual {res:.3e} > 1e-8"));
                }
                (a, b) => t.fail(format!("`{text}`: {:?} / {:?}", a.err(), b.err())),
            }
        }
    }
    t.note(format!("det ratio worst {det_worst:.3e} (tol 1e-8)"));
    t
}

pub(super) fn divisor_split_corpus(seed: u64) -> Tracker {
    let mut t = Tracker::new(1e-8);
    for (k, pts) in corpus_points(seed, 7, 50, &mut t) {
        let text = RATIONAL_CORPUS[k].0;
        let Some(first) = pts.first() else { continue };
        let r = match linearize(&first.expr) {
            Ok(r) => r,
            Err(err) => {
                t.fail(format!("`{text}`: {err}"));
                continue;
            }
        };
        for p in &pts {
            match (divisor_split(&r, &p.x), divisor(&p.expr, &p.x, DivisorMethod::Reverse)) {
                (Ok((dp, dq)), Ok(direct)) => {
                    t.residual(dp.sub(&dq).max_abs_diff(&direct) / (1.0 + direct.frobenius_norm()))
                }
                (a, b) => t.fail(format!("`{text}`: {:?} / {:?}", a.err(), b.err())),
            }
        }
    }
    t
}

pub(super) fn schur_block_inverse(seed: u64) -> Tracker {
    let mut t = Tracker::new(1e-9);
    let mut rng = rng_for(seed, 9);
    let block = block_2x2_expr();
    let a_only = NcExpr::parse("x1", 4).expect("literal parses");
    let mut done = 0;
    while done < 50 {
        let n = 1 + done % 4;
        let x = random_point(&mut rng, n, 4, 1.0);
        if well_conditioned(&block, &x).is_none() || well_conditioned(&a_only, &x).is_none() {
            continue;
        }
        done += 1;
        let (a, b, c, d) = (x.get(0), x.get(1), x.get(2), x.get(3));
        let m = eval(&block, &x).expect("grid evaluates").value;
        let ai = inv(a);
        let s = d - &(&(c * &ai) * b);
        let Ok(si) = solve_inv(&s).map(|i| i.inverse) else {
            t.fail("Schur complement is singular");
            continue;
        };
        let (Ok(det_m), Ok(det_a), Ok(det_s)) = (lu_det(&m), lu_det(a), lu_det(&s)) else {
            t.fail("determinant failed");
            continue;
        };
        t.residual(rel(det_m, det_a * det_s));
        let ai_b_si = &(&ai * b) * &si;
        let si_c_ai = &(&si * c) * &ai;
        let mut assembled = ComplexMatrix::zeros(2 * n, 2 * n);
        assembled.set_block(0, 0, &(&ai + &(&ai_b_si * &(c * &ai))));
        assembled.set_block(0, n, &-&ai_b_si);
        assembled.set_block(n, 0, &-&si_c_ai);
        assembled.set_block(n, n, &si);
        t.residual(rel_mat(&assembled, &inv(&m)));
    }
    t
}

pub(super) fn monodromy_quantization(seed: u64) -> Tracker {
    let mut t = Tracker::new(1e-6);
    let mut rng = rng_for(seed, 10);
    let gl = DomainSpec::gl();
    let germ = GermSpec::logdet("x1").expect("literal parses");
    // (loop, expected n·c/(2πi))
    let mut family: Vec<(String, PathSpec, i64)> = Vec::new();
    for n in 1..=4 {
        for w in -3..=3 {
            let p = circle_det(n, w, Complex64::new(0.0, 0.0), 1.0, DEFAULT_SAMPLES).expect("valid params");
            family.push((format!("circle-det n={n} w={w}"), p, w as i64));
        }
        let base = Complex64::from_polar(1.0, rng.random_range(0.0..2.0 * PI));
        let lp = random_gl_loop(&mut rng, n, base, 3, DEFAULT_SAMPLES).expect("valid params");
        family.push((format!("random n={n}"), lp.path.clone(), lp.total_winding() as i64));
    }
    let half = diag_rotation(&[1, 0], DEFAULT_SAMPLES).expect("valid params");
    family.push(("diag-rotation [1, 0]".into(), half, 1));
    family.push((
        "diag-rotation [3, -2, 1]".into(),
        diag_rotation(&[3, -2, 1], DEFAULT_SAMPLES).expect("valid params"),
        2,
    ));
    let mut values = Vec::new();
    for (label, path, _) in &family {
        match loop_phi(&germ, path, &gl, DEFAULT_INTEGRATION_TOL) {
            Ok(c) => values.push((c, path.n())),
            Err(err) => {
                t.fail(format!("{label}: {err}"));
                values.push((Complex64::new(f64::NAN, f64::NAN), path.n()));
            }
        }
    }
    let report = quantization_check(&values, 1e-6);
    for ((label, _, expected), entry) in family.iter().zip(&report.entries) {
        t.residual(entry.winding.residual);
        t.require(entry.winding.nearest == *expected, || {
            format!("{label}: winding {} but the loop winds {expected} times", entry.winding.nearest)
        });
    }
    let half = &report.entries[family.len() - 2];
    t.require(half.ratio == "1/2", || format!("diag(e^(2πit), 1) ratio is {}", half.ratio));
    t.note(format!("{} loops, diag(e^(2πit), 1) ratio {}", family.len(), half.ratio));
    t
}

pub(super) fn upper_triangular_loop(_seed: u64) -> Tracker {
    let mut t = Tracker::new(1e-8);
    let gl = DomainSpec::gl();
    let germ = GermSpec::logdet("x1").expect("literal parses");
    let path = paper_2x2(DEFAULT_SAMPLES).expect("valid params");
    match continue_germ(&germ, &path, &gl, DEFAULT_INTEGRATION_TOL) {
        Ok(r) => t.residual(r.increment.norm()),
        Err(err) => t.fail(err.to_string()),
    }
    let trivial = PathSpec::constant(path.start().clone());
    match trace_equiv_check(&path, &trivial, &[germ], &gl, 1e-8) {
        Ok(rep) => t.require(rep.verdict == TraceEquivVerdict::IndistinguishableBySuppliedGerms, || {
            format!("distinguished from the trivial path: {:?}", rep.comparisons)
        }),
        Err(err) => t.fail(err.to_string()),
    }
    t
}

pub(super) fn loop_arithmetic(seed: u64) -> Tracker {
    let mut t = Tracker::new(1e-6);
    let mut rng = rng_for(seed, 12);
    let gl = DomainSpec::gl();
    let germ = GermSpec::logdet("x1").expect("literal parses");
    let phi = |p: &PathSpec| loop_phi(&germ, p, &gl, DEFAULT_INTEGRATION_TOL);
    for _ in 0..6 {
        let base = Complex64::from_polar(rng.random_range(0.5..2.0), rng.random_range(0.0..2.0 * PI));
        let (n1, n2) = (rng.random_range(1..=4), rng.random_range(1..=4));
        let l1 = random_gl_loop(&mut rng, n1, base, 3, DEFAULT_SAMPLES).expect("valid params").path;
        let l2 = random_gl_loop(&mut rng, n2, base, 3, DEFAULT_SAMPLES).expect("valid params").path;
        let run = || -> crate::Result<Vec<f64>> {
            let (p1, p2) = (phi(&l1)?, phi(&l2)?);
            let p12 = phi(&concatenate(&l1, &l2)?)?;
            let p21 = phi(&concatenate(&l2, &l1)?)?;
            let mut res = vec![(p12 - (p1 + p2)).norm(), (p21 - (p1 + p2)).norm(), (p12 - p21).norm()];
            for m in [2, 3] {
                res.push((phi(&l1.direct_power(m))? - p1).norm());
            }
            let base_path = PathSpec::constant(l1.essential_start()?);
            for k in [1, 2] {
                let padded = base_path.direct_power(k).direct_sum(&l1)?;
                // γ_X^{⊕k} ⊕ γ has size k + n₁ but the same increment as γ
                let rescaled = phi(&padded)? * ((k + n1) as f64 / n1 as f64);
                res.push((rescaled - p1).norm());
            }
            let rep = trace_equiv_check(
                &l1.direct_sum(&base_path)?,
                &base_path.direct_sum(&l1)?,
                std::slice::from_ref(&germ),
                &gl,
                1e-6,
            )?;
            res.extend(rep.comparisons.iter().map(|c| c.difference));
            Ok(res)
        };
        match run() {
            Ok(res) => res.into_iter().for_each(|r| t.residual(r)),
            Err(err) => t.fail(err.to_string()),
        }
    }
    t
}

pub(super) fn integrality(_seed: u64) -> Tracker {
    let mut t = Tracker::new(1e-6);
    let gl = DomainSpec::gl();
    let circle = circle_det(1, 1, Complex64::new(0.0, 0.0), 1.0, DEFAULT_SAMPLES).expect("valid params");
    let cases = [
        ("inv(x1)", IntegralityVerdict::DivisorCandidate, 1.0),
        ("0.3333333333333333*inv(x1)", IntegralityVerdict::Obstructed, 1.0 / 3.0),
    ];
    for (g, verdict, ratio) in cases {
        let germ = GermSpec::closed_form_from_strs(&[g]).expect("literal parses");
        match integrality_test(&germ, std::slice::from_ref(&circle), &gl, 1e-6) {
            Ok(rep) => {
                t.require(rep.verdict == verdict, || format!("`{g}`: verdict {:?}", rep.verdict));
                t.residual((rep.entries[0].ratio.value - ratio).norm());
            }
            Err(err) => t.fail(format!("`{g}`: {err}")),
        }
    }
    t
}

fn smallest_singular_value_2x2(m: [[Complex64; 2]; 2]) -> f64 {
    // eigenvalues of the Hermitian M*M
    let col = |j: usize| [m[0][j], m[1][j]];
    let dot = |a: [Complex64; 2], b: [Complex64; 2]| a[0].conj() * b[0] + a[1].conj() * b[1];
    let (c0, c1) = (col(0), col(1));
    let (p, q, r) = (dot(c0, c0).re, dot(c1, c1).re, dot(c0, c1));
    let mid = 0.5 * (p + q);
    let rad = (0.25 * (p - q).powi(2) + r.norm_sqr()).sqrt();
    (mid - rad).max(0.0).sqrt()
}

pub(super) fn two_point_separation(_seed: u64) -> Tracker {
    let mut t = Tracker::at_least(0.1);
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let dom = DomainSpec::avoiding(&[zero, one]);
    let loops = [
        circle_det(1, 1, zero, 0.5, DEFAULT_SAMPLES).expect("valid params"),
        circle_det(1, 1, one, 0.5, DEFAULT_SAMPLES).expect("valid params"),
    ];
    let germs = [
        GermSpec::logdet("x1").expect("literal parses"),
        GermSpec::logdet("x1 - 1").expect("literal parses"),
    ];
    let mut m = [[zero; 2]; 2];
    for (i, g) in germs.iter().enumerate() {
        for (j, l) in loops.iter().enumerate() {
            match loop_phi(g, l, &dom, DEFAULT_INTEGRATION_TOL) {
                Ok(c) => m[i][j] = c,
                Err(err) => t.fail(format!("germ {i}, loop {j}: {err}")),
            }
        }
    }
    t.residual(smallest_singular_value_2x2(m));
    t.note(format!(
        "increments [[{:.3}, {:.3}], [{:.3}, {:.3}]]",
        m[0][0], m[0][1], m[1][0], m[1][1]
    ));
    t
}
