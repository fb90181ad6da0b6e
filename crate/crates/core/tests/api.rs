use ncfn::evalad::{divisor, eval, DivisorMethod};
use ncfn::matcore::{lu_det, random_tuple};
use ncfn::realize::{det_ratio, divisor_split, linearize, Realization};
use ncfn::tracial::{self, gen, DomainSpec, GermSpec, PathSpec};
use ncfn::NcExpr;
use num_complex::Complex64;

#[test]
fn rational_expression_end_to_end() {
    let e = NcExpr::parse("inv(1 - x1*x2) + x2", 2).unwrap();
    let x = random_tuple(3, 2, 11).scale_real(0.4);
    let r = linearize(&e).unwrap();
    let text = serde_json::to_string(&r).unwrap();
    let r: Realization = serde_json::from_str(&text).unwrap();

    let det = lu_det(&eval(&e, &x).unwrap().value).unwrap();
    let dr = det_ratio(&r, &x).unwrap();
    assert!((dr.ratio - det).norm() <= 1e-8 * (1.0 + det.norm()));

    let g = divisor(&e, &x, DivisorMethod::Reverse).unwrap();
    let (gp, gq) = divisor_split(&r, &x).unwrap();
    assert!(gp.sub(&gq).max_abs_diff(&g) <= 1e-8 * (1.0 + g.frobenius_norm()));
}

#[test]
fn path_files_round_trip_and_keep_monodromy() {
    let loop_ = gen::circle_det(2, 1, Complex64::new(0.0, 0.0), 1.0, 64).unwrap();
    let back: PathSpec = serde_json::from_str(&serde_json::to_string(&loop_).unwrap()).unwrap();
    let germ = GermSpec::logdet("x1").unwrap();
    let phi = tracial::loop_phi(&germ, &back, &DomainSpec::gl(), 1e-9).unwrap();
    let turns = phi * 2.0 / Complex64::new(0.0, 2.0 * std::f64::consts::PI);
    assert!((turns - 1.0).norm() < 1e-6);
}
