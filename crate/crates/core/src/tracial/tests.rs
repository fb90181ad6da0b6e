use std::f64::consts::PI;

use num_complex::Complex64;

use super::gen::{circle_det, diag_rotation, paper_2x2, random_gl_loop, DEFAULT_SAMPLES};
use super::*;
use crate::error::NcError;
use crate::matcore::{seeded_rng, ComplexMatrix, MatrixTuple};

const TOL: f64 = DEFAULT_INTEGRATION_TOL;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn two_pi_i() -> Complex64 {
    c(0.0, 2.0 * PI)
}

fn logdet_x1() -> GermSpec {
    GermSpec::logdet("x1").unwrap()
}

fn unit_circle() -> PathSpec {
    circle_det(1, 1, c(0.0, 0.0), 1.0, DEFAULT_SAMPLES).unwrap()
}

fn scalar(z: Complex64) -> MatrixTuple {
    MatrixTuple::new(vec![ComplexMatrix::diag(&[z])]).unwrap()
}

#[test]
fn unit_circle_winds_once() {
    let r = continue_germ(&logdet_x1(), &unit_circle(), &DomainSpec::gl(), TOL).unwrap();
    assert!((r.increment - two_pi_i()).norm() < 1e-8, "{r:?}");
    assert!((r.end_value - two_pi_i()).norm() < 1e-8);
    assert!(r.steps >= DEFAULT_SAMPLES - 1);
    assert_eq!(loop_phi(&logdet_x1(), &unit_circle(), &DomainSpec::gl(), TOL).unwrap(), r.increment);
}

#[test]
fn windings_of_either_sign() {
    for w in [-3, -1, 2, 3] {
        let p = circle_det(1, w, c(0.0, 0.0), 1.0, DEFAULT_SAMPLES).unwrap();
        let r = continue_germ(&logdet_x1(), &p, &DomainSpec::gl(), TOL).unwrap();
        assert!((r.increment - two_pi_i() * w as f64).norm() < 1e-8, "w = {w}");
    }
}

#[test]
fn circle_not_enclosing_zero_has_no_increment() {
    let p = circle_det(1, 1, c(3.0, 0.0), 1.0, 64).unwrap();
    let r = continue_germ(&logdet_x1(), &p, &DomainSpec::gl(), TOL).unwrap();
    assert!(r.increment.norm() < 1e-9);
}

#[test]
fn upper_triangular_loop_has_zero_increment() {
    let r = continue_germ(&logdet_x1(), &paper_2x2(DEFAULT_SAMPLES).unwrap(), &DomainSpec::gl(), TOL).unwrap();
    assert!(r.increment.norm() <= 1e-8, "{r:?}");
    let x0 = paper_2x2(16).unwrap().start().clone();
    assert_eq!(x0.get(0)[(0, 1)], c(1.0, 0.0));
    assert!(x0.max_abs_diff(paper_2x2(16).unwrap().end()) < 1e-15);
}

#[test]
fn partial_rotation_normalizes_to_one_half() {
    let p = diag_rotation(&[1, 0], DEFAULT_SAMPLES).unwrap();
    let r = continue_germ(&logdet_x1(), &p, &DomainSpec::gl(), TOL).unwrap();
    // eigenvalue args: 2π and 0
    assert!((r.increment - two_pi_i()).norm() < 1e-8);
    assert!((r.normalized_increment - c(0.0, PI)).norm() < 1e-8);
}

#[test]
fn trivial_loop_is_zero() {
    let p = PathSpec::constant(scalar(c(2.0, 1.0)));
    assert_eq!(loop_phi(&logdet_x1(), &p, &DomainSpec::gl(), TOL).unwrap(), c(0.0, 0.0));
}

#[test]
fn open_path_is_not_a_loop() {
    let p = PathSpec::uniform(vec![scalar(c(1.0, 0.0)), scalar(c(2.0, 0.0))], 1, 1).unwrap();
    let r = continue_germ(&logdet_x1(), &p, &DomainSpec::gl(), TOL).unwrap();
    assert!((r.increment - c(2f64.ln(), 0.0)).norm() < 1e-9);
    assert!(matches!(
        loop_phi(&logdet_x1(), &p, &DomainSpec::gl(), TOL),
        Err(NcError::EndpointMismatch(_))
    ));
}

#[test]
fn refinement_and_retiming_leave_increment_unchanged() {
    let mut rng = seeded_rng(3);
    let lp = random_gl_loop(&mut rng, 3, c(0.7, -0.4), 2, 128).unwrap();
    let base = continue_germ(&logdet_x1(), &lp.path, &DomainSpec::gl(), TOL).unwrap();
    let fine = continue_germ(&logdet_x1(), &lp.path.refined(1), &DomainSpec::gl(), TOL).unwrap();
    let slow = lp.path.retimed(|t| t * t).unwrap();
    let slow = continue_germ(&logdet_x1(), &slow, &DomainSpec::gl(), TOL).unwrap();
    assert!((base.increment - fine.increment).norm() < 1e-7);
    assert!((base.increment - slow.increment).norm() < 1e-7);
}

#[test]
fn random_loops_are_quantized() {
    let mut rng = seeded_rng(9);
    for n in 1..=4 {
        for _ in 0..3 {
            let lp = random_gl_loop(&mut rng, n, c(1.3, 0.2), 3, DEFAULT_SAMPLES).unwrap();
            let phi = loop_phi(&logdet_x1(), &lp.path, &DomainSpec::gl(), TOL).unwrap();
            let expected = two_pi_i() * lp.total_winding() as f64 / n as f64;
            assert!((phi - expected).norm() < 1e-6, "n = {n}");
        }
    }
}

#[test]
fn direct_power_keeps_phi() {
    let p = diag_rotation(&[2, -1], 128).unwrap();
    let a = loop_phi(&logdet_x1(), &p, &DomainSpec::gl(), TOL).unwrap();
    let b = loop_phi(&logdet_x1(), &p.direct_power(3), &DomainSpec::gl(), TOL).unwrap();
    assert_eq!(p.direct_power(3).n(), 6);
    assert!((a - b).norm() < 1e-8);
}

#[test]
fn concatenation_pads_to_lcm_and_adds() {
    let mut rng = seeded_rng(21);
    let base = c(0.9, 0.3);
    let l1 = random_gl_loop(&mut rng, 2, base, 2, 128).unwrap();
    let l2 = random_gl_loop(&mut rng, 3, base, 2, 128).unwrap();
    let cat = concatenate(&l1.path, &l2.path).unwrap();
    assert_eq!((cat.n(), cat.pad_start(), cat.pad_end()), (6, 6, 6));
    assert_eq!(cat.nodes().len(), 2 * 128 - 1);
    let rev = concatenate(&l2.path, &l1.path).unwrap();
    let dom = DomainSpec::gl();
    let p1 = loop_phi(&logdet_x1(), &l1.path, &dom, TOL).unwrap();
    let p2 = loop_phi(&logdet_x1(), &l2.path, &dom, TOL).unwrap();
    let p12 = loop_phi(&logdet_x1(), &cat, &dom, TOL).unwrap();
    let p21 = loop_phi(&logdet_x1(), &rev, &dom, TOL).unwrap();
    assert!((p12 - (p1 + p2)).norm() < 1e-6);
    assert!((p12 - p21).norm() < 1e-6);
}

#[test]
fn concatenating_constants_is_constant() {
    let x = scalar(c(2.0, 0.0));
    let cat = concatenate(&PathSpec::constant(x.clone()), &PathSpec::constant(x.clone())).unwrap();
    assert!(cat.nodes().iter().all(|nd| nd.x == x));
}

#[test]
fn concatenation_needs_matching_endpoints() {
    let a = PathSpec::constant(scalar(c(2.0, 0.0)));
    let b = PathSpec::constant(scalar(c(3.0, 0.0)));
    assert!(matches!(concatenate(&a, &b), Err(NcError::EndpointMismatch(_))));
}

#[test]
fn padding_by_the_base_point_keeps_phi() {
    let gamma = diag_rotation(&[1, 1, -1], 128).unwrap();
    let gx = PathSpec::constant(scalar(c(1.0, 0.0)));
    let dom = DomainSpec::gl();
    let phi = loop_phi(&logdet_x1(), &gamma, &dom, TOL).unwrap();
    for k in 1..=3 {
        let padded = gx.direct_power(k).direct_sum(&gamma).unwrap();
        let inc = continue_germ(&logdet_x1(), &padded, &dom, TOL).unwrap().increment;
        // the constant base copies add nothing to the increment
        assert!((inc / gamma.n() as f64 - phi).norm() < 1e-6);
        assert_eq!(padded.pad_start(), k + 3);
    }
}

#[test]
fn rotation_homotopy_is_invisible() {
    let gamma = diag_rotation(&[1], 64).unwrap();
    let gx = PathSpec::constant(scalar(c(1.0, 0.0)));
    let left = gamma.direct_sum(&gx).unwrap();
    let right = gx.direct_sum(&gamma).unwrap();
    let report =
        trace_equiv_check(&left, &right, &[logdet_x1()], &DomainSpec::gl(), DEFAULT_ASSERT_TOL).unwrap();
    assert_eq!(report.verdict, TraceEquivVerdict::IndistinguishableBySuppliedGerms);
    // every intermediate rotation of the two blocks gives the same increment
    for s in [0.1, 0.25, 0.4] {
        let th = 0.5 * PI * s;
        let rot = ComplexMatrix::from_real_rows(&[&[th.cos(), -th.sin()], &[th.sin(), th.cos()]]).unwrap();
        let turned = left.conjugate_by(&rot).unwrap();
        let r = continue_germ(&logdet_x1(), &turned, &DomainSpec::gl(), TOL).unwrap();
        assert!((r.increment - two_pi_i()).norm() < 1e-8);
    }
}

#[test]
fn trace_equivalence_examples() {
    let dom = DomainSpec::gl();
    let germs = [logdet_x1()];
    let p = unit_circle();
    let r = trace_equiv_check(&p, &p.refined(1), &germs, &dom, DEFAULT_ASSERT_TOL).unwrap();
    assert_eq!(r.verdict, TraceEquivVerdict::IndistinguishableBySuppliedGerms);

    let q = paper_2x2(DEFAULT_SAMPLES).unwrap();
    let trivial = PathSpec::constant(q.start().clone());
    let r = trace_equiv_check(&q, &trivial, &germs, &dom, DEFAULT_ASSERT_TOL).unwrap();
    assert_eq!(r.verdict, TraceEquivVerdict::IndistinguishableBySuppliedGerms);

    let trivial = PathSpec::constant(p.start().clone());
    let r = trace_equiv_check(&p, &trivial, &germs, &dom, DEFAULT_ASSERT_TOL).unwrap();
    assert_eq!(r.verdict, TraceEquivVerdict::Distinguished);
    assert_eq!(r.separating_germ, Some(0));

    let other = PathSpec::constant(scalar(c(5.0, 0.0)));
    assert!(matches!(
        trace_equiv_check(&p, &other, &germs, &dom, DEFAULT_ASSERT_TOL),
        Err(NcError::EndpointMismatch(_))
    ));
}

#[test]
fn leaving_the_domain_reports_t() {
    let p = PathSpec::uniform(vec![scalar(c(-1.0, 0.0)), scalar(c(1.0, 0.0))], 1, 1).unwrap();
    match continue_germ(&logdet_x1(), &p, &DomainSpec::unrestricted(), TOL) {
        Err(NcError::DomainExit { t, .. }) => assert!((t - 0.5).abs() < 1e-12),
        other => panic!("expected a domain exit, got {other:?}"),
    }
    let q = circle_det(1, 1, c(0.0, 0.0), 1.0, 32).unwrap();
    let dom = DomainSpec::avoiding(&[c(0.0, 0.0), c(1.0, 0.0)]);
    assert!(matches!(continue_germ(&logdet_x1(), &q, &dom, TOL), Err(NcError::DomainExit { t, .. }) if t == 0.0));
}

#[test]
fn closed_form_germs() {
    let g = GermSpec::closed_form_from_strs(&["inv(x1)"]).unwrap();
    let r = continue_germ(&g, &unit_circle(), &DomainSpec::gl(), TOL).unwrap();
    assert_eq!(r.start_value, c(0.0, 0.0));
    assert!((r.increment - two_pi_i()).norm() < 1e-8);

    let not_closed = GermSpec::closed_form_from_strs(&["x2", "0"]).unwrap();
    let p = PathSpec::uniform(
        vec![
            MatrixTuple::new(vec![ComplexMatrix::identity(2); 2]).unwrap(),
            MatrixTuple::new(vec![ComplexMatrix::identity(2).scale_real(2.0); 2]).unwrap(),
        ],
        2,
        2,
    )
    .unwrap();
    assert!(matches!(
        continue_germ(&not_closed, &p, &DomainSpec::unrestricted(), TOL),
        Err(NcError::NotClosed(_))
    ));
    let gradient = GermSpec::closed_form_from_strs(&["x2", "x1"]).unwrap();
    let r = continue_germ(&gradient, &p, &DomainSpec::unrestricted(), TOL).unwrap();
    // ∇ tr(x1·x2): tr(2·2) − tr(1·1) at size 2
    assert!((r.increment - c(6.0, 0.0)).norm() < 1e-9);
}

#[test]
fn integrality_examples() {
    let dom = DomainSpec::gl();
    let loops = [unit_circle()];
    let g = GermSpec::closed_form_from_strs(&["inv(x1)"]).unwrap();
    let rep = integrality_test(&g, &loops, &dom, DEFAULT_ASSERT_TOL).unwrap();
    assert_eq!(rep.verdict, IntegralityVerdict::DivisorCandidate);
    assert!((rep.entries[0].ratio.value - c(1.0, 0.0)).norm() < 1e-6);

    let third = GermSpec::closed_form_from_strs(&["0.3333333333333333*inv(x1)"]).unwrap();
    let rep = integrality_test(&third, &loops, &dom, DEFAULT_ASSERT_TOL).unwrap();
    assert_eq!(rep.verdict, IntegralityVerdict::Obstructed);
    assert_eq!(rep.witnesses, vec![0]);
    assert!((rep.entries[0].ratio.value - c(1.0 / 3.0, 0.0)).norm() < 1e-6);

    let rep = integrality_test(&third, &[], &dom, DEFAULT_ASSERT_TOL).unwrap();
    assert_eq!(rep.verdict, IntegralityVerdict::DivisorCandidate);
}

#[test]
fn quantization_examples() {
    let rep = quantization_check(&[(two_pi_i(), 1)], DEFAULT_ASSERT_TOL);
    assert!(rep.passed);
    assert_eq!(rep.entries[0].ratio, "1");
    let rep = quantization_check(&[(c(0.0, PI), 2)], DEFAULT_ASSERT_TOL);
    assert!(rep.passed);
    assert_eq!(rep.entries[0].ratio, "1/2");
    let rep = quantization_check(&[(c(0.0, -1.5 * PI), 4), (c(1.0, 0.0), 1)], DEFAULT_ASSERT_TOL);
    assert!(!rep.passed);
    assert!(rep.entries[0].passed);
    assert_eq!(rep.entries[0].ratio, "-3/4");
    assert!(!rep.entries[1].passed);
}

#[test]
fn two_forbidden_values_are_separated() {
    let dom = DomainSpec::avoiding(&[c(0.0, 0.0), c(1.0, 0.0)]);
    let loops = [
        circle_det(1, 1, c(0.0, 0.0), 0.5, 128).unwrap(),
        circle_det(1, 1, c(1.0, 0.0), 0.5, 128).unwrap(),
    ];
    let germs = [GermSpec::logdet("x1").unwrap(), GermSpec::logdet("x1 - 1").unwrap()];
    for (i, g) in germs.iter().enumerate() {
        for (j, l) in loops.iter().enumerate() {
            let phi = loop_phi(g, l, &dom, TOL).unwrap();
            let expected = if i == j { two_pi_i() } else { c(0.0, 0.0) };
            assert!((phi - expected).norm() < 1e-8, "germ {i}, loop {j}");
        }
    }
}

#[test]
fn path_validation() {
    let x = scalar(c(1.0, 0.0));
    let bad_times = vec![
        PathNode { t: 0.0, x: x.clone() },
        PathNode { t: 0.0, x: x.clone() },
        PathNode { t: 1.0, x: x.clone() },
    ];
    assert!(PathSpec::new(bad_times, 1, 1).is_err());
    assert!(PathSpec::uniform(vec![x.clone(), x.clone()], 2, 1).is_err());
    let not_power = MatrixTuple::new(vec![ComplexMatrix::diag(&[c(1.0, 0.0), c(2.0, 0.0)])]).unwrap();
    assert!(PathSpec::uniform(vec![not_power.clone(), not_power.clone()], 2, 2).is_err());
    assert!(PathSpec::uniform(vec![not_power.clone(), not_power], 1, 1).is_ok());
}

#[test]
fn json_roundtrips() {
    let p = diag_rotation(&[1, 0], 8).unwrap();
    let s = serde_json::to_string(&p).unwrap();
    let back: PathSpec = serde_json::from_str(&s).unwrap();
    assert_eq!(back, p);
    assert!(s.contains("\"pad_start\":2"));

    let g: GermSpec = serde_json::from_str(r#"{"kind": "logdet", "expr": "x1 - 1"}"#).unwrap();
    assert_eq!(g.d(), 1);
    let back: GermSpec = serde_json::from_str(&serde_json::to_string(&g).unwrap()).unwrap();
    assert_eq!(back, g);
    let g: GermSpec = serde_json::from_str(r#"{"kind": "closed_form", "g": ["x2", "x1"]}"#).unwrap();
    assert_eq!(g.d(), 2);
    assert!(serde_json::from_str::<GermSpec>(r#"{"kind": "volume"}"#).is_err());

    let d: DomainSpec = serde_json::from_str(r#"{"forbidden_dets": [[0, 0], [1, 0]]}"#).unwrap();
    assert_eq!(d, DomainSpec::avoiding(&[c(0.0, 0.0), c(1.0, 0.0)]));
}
