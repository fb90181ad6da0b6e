use num_complex::Complex64;

use super::*;
use crate::evalad::eval;
use crate::matcore::{log_det, random_tuple, seeded_rng, solve_inv};
use crate::suite::gen::random_point;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn expr(s: &str, d: usize) -> NcExpr {
    NcExpr::parse(s, d).unwrap()
}

fn rel_err(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    (a - b).frobenius_norm() / (1.0 + b.frobenius_norm())
}

fn inv(m: &ComplexMatrix) -> ComplexMatrix {
    solve_inv(m).unwrap().inverse
}

#[test]
fn inverse_of_a_variable_is_one_by_one() {
    let r = linearize(&expr("inv(x1)", 1)).unwrap();
    assert_eq!((r.m(), r.d(), r.k()), (1, 1, 1));
    let x = MatrixTuple::new(vec![ComplexMatrix::diag(&[c(2.0)])]).unwrap();
    let v = realization_eval(&r, &x).unwrap();
    assert!((v[(0, 0)] - c(0.5)).norm() < 1e-15);
    let dr = det_ratio(&r, &x).unwrap();
    assert!((dr.det_bordered - c(1.0)).norm() < 1e-14);
    assert!((dr.det_pencil - c(2.0)).norm() < 1e-14);
    assert!((dr.ratio - c(0.5)).norm() < 1e-14);
}

#[test]
fn variable_seed_reproduces_the_variable() {
    let r = linearize(&expr("x1", 1)).unwrap();
    assert_eq!(r.m(), 2);
    let x = random_tuple(3, 1, 4);
    assert!(rel_err(&realization_eval(&r, &x).unwrap(), x.get(0)) < 1e-14);
}

#[test]
fn dimensions_add_up() {
    let cases = [
        ("x1 + x2", 4),
        ("x1*x2", 4),
        ("x1 + inv(x2)", 3),
        ("inv(x1*x2)", 5),
        ("-x1", 2),
        ("inv(1 - x1*x2)", 7),
        ("inv(2*x1 - 3)", 1),
    ];
    for (s, m) in cases {
        assert_eq!(linearize(&expr(s, 2)).unwrap().m(), m, "{s}");
    }
}

#[test]
fn realization_matches_direct_evaluation() {
    let corpus = [
        ("inv(1 - x1*x2)", 2),
        ("x1 + inv(x2)", 2),
        ("inv(x1)*x2*inv(x1)", 2),
        ("x1*inv(1 + x2*x1)*x2", 2),
        ("inv(x1 + inv(x2))", 2),
        ("(1 + x1)*inv(2 - x2*x3)*(x3 - 1i)", 3),
        ("inv(inv(x1) + inv(x2)) - x1*x2 + 3", 2),
    ];
    let mut rng = seeded_rng(11);
    for (s, d) in corpus {
        let e = expr(s, d);
        let r = linearize(&e).unwrap();
        for n in 1..=3 {
            for _ in 0..10 {
                let x = random_point(&mut rng, n, d, 1.0);
                let Ok(direct) = eval(&e, &x) else { continue };
                if direct.condition > 1e8 {
                    continue;
                }
                let via = realization_eval(&r, &x).unwrap();
                assert!(rel_err(&via, &direct.value) < 1e-9, "{s}");
                let dr = det_ratio(&r, &x).unwrap();
                let det = direct.value.clone();
                let expected = crate::matcore::lu_det(&det).unwrap();
                assert!((dr.ratio - expected).norm() <= 1e-8 * (1.0 + expected.norm()), "{s}");
            }
        }
    }
}

#[test]
fn divisor_splits_into_pencil_divisors() {
    let e = expr("x1*inv(1 + x2*x1)*x2 + x1", 2);
    let r = linearize(&e).unwrap();
    let mut rng = seeded_rng(5);
    for n in 1..=3 {
        let x = random_point(&mut rng, n, 2, 1.0);
        let direct = divisor(&e, &x, DivisorMethod::Reverse).unwrap();
        let (p, q) = divisor_split(&r, &x).unwrap();
        let scale = 1.0 + direct.frobenius_norm();
        assert!(p.sub(&q).max_abs_diff(&direct) < 1e-8 * scale);
    }
}

#[test]
fn schur_complement_divisor_and_determinant() {
    let block = block_2x2_expr();
    let a = expr("x1", 4);
    let s = expr("x4 - x3*inv(x1)*x2", 4);
    let mut rng = seeded_rng(2);
    for n in 1..=3 {
        let x = random_point(&mut rng, n, 4, 1.0);
        let m = eval(&block, &x).unwrap().value;
        let sv = eval(&s, &x).unwrap().value;
        let ld = log_det(&m).unwrap() - log_det(x.get(0)).unwrap() - log_det(&sv).unwrap();
        let k = (ld.im / (2.0 * std::f64::consts::PI)).round();
        assert!((ld - Complex64::new(0.0, 2.0 * std::f64::consts::PI * k)).norm() < 1e-9);
        let dm = divisor(&block, &x, DivisorMethod::Reverse).unwrap();
        let da = divisor(&a, &x, DivisorMethod::Reverse).unwrap();
        let ds = divisor(&s, &x, DivisorMethod::Reverse).unwrap();
        assert!(dm.sub(&da).max_abs_diff(&ds) < 1e-8 * (1.0 + dm.frobenius_norm()));
    }
}

#[test]
fn block_inverse_formula() {
    let x = random_tuple(3, 4, 8);
    let (a, b, cc, d) = (x.get(0), x.get(1), x.get(2), x.get(3));
    let m = eval(&block_2x2_expr(), &x).unwrap().value;
    let mi = inv(&m);
    let ai = inv(a);
    let s = d - &(&(cc * &ai) * b);
    let si = inv(&s);
    let tl = &ai + &(&(&(&ai * b) * &si) * &(cc * &ai));
    let tr = -&(&(&ai * b) * &si);
    let bl = -&(&(&si * cc) * &ai);
    assert!(rel_err(&mi.block(0, 0, 3, 3), &tl) < 1e-9);
    assert!(rel_err(&mi.block(0, 3, 3, 3), &tr) < 1e-9);
    assert!(rel_err(&mi.block(3, 0, 3, 3), &bl) < 1e-9);
    assert!(rel_err(&mi.block(3, 3, 3, 3), &si) < 1e-9);
}

#[test]
fn rejects_unsupported_and_degenerate() {
    assert!(matches!(linearize(&expr("exp(x1)", 1)), Err(NcError::Unsupported(_))));
    assert!(matches!(linearize(&expr("[[x1, x2], [1, x1]]", 2)), Err(NcError::Unsupported(_))));
    assert!(matches!(linearize(&expr("inv(x1*x2 - x1*x2)", 2)), Err(NcError::Degenerate(_))));
}

#[test]
fn singular_pencil_is_reported() {
    let r = linearize(&expr("inv(x1)", 1)).unwrap();
    let x = MatrixTuple::new(vec![ComplexMatrix::zeros(2, 2)]).unwrap();
    assert!(matches!(realization_eval(&r, &x), Err(NcError::PencilSingular(_))));
    assert!(matches!(det_ratio(&r, &x), Err(NcError::PencilSingular(_))));
}

#[test]
fn json_roundtrip_and_validation() {
    let r = linearize(&expr("inv(1 - x1*x2)", 2)).unwrap();
    let s = serde_json::to_string(&r).unwrap();
    let back: Realization = serde_json::from_str(&s).unwrap();
    assert_eq!(back, r);
    let mut v: serde_json::Value = serde_json::from_str(&s).unwrap();
    v["m"] = serde_json::json!(99);
    assert!(serde_json::from_value::<Realization>(v).is_err());
}

#[test]
fn det_ratio_pair_evaluates_to_pencils() {
    let r = linearize(&expr("x1 + inv(x2)", 2)).unwrap();
    let pair = r.det_ratio_pair();
    let x = random_tuple(2, 2, 3);
    assert!(rel_err(&eval(&pair.q, &x).unwrap().value, &r.pencil_at(&x).unwrap()) < 1e-14);
    assert!(rel_err(&eval(&pair.p, &x).unwrap().value, &r.bordered_at(&x).unwrap()) < 1e-14);
}

#[test]
fn affine_detection() {
    let e = expr("2*(x1 - 3*x2) + 1i", 2);
    let coeffs = affine_coefficients(e.root(), 2).unwrap();
    assert_eq!(coeffs, vec![Complex64::new(0.0, 1.0), c(2.0), c(-6.0)]);
    assert!(affine_coefficients(expr("x1*x2", 2).root(), 2).is_none());
}
