use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use serde::Serialize;

use super::{DomainSpec, GermSpec, PathSpec};
use crate::error::{NcError, Result};
use crate::matcore::MatrixTuple;

/// Default local error budget for continuation over the whole path.
pub const DEFAULT_INTEGRATION_TOL: f64 = 1e-8;

const MAX_DEPTH: usize = 40;
// Smallest mismatch tolerated between the integrated step and the change of
// the principal log det; below this the two agree to rounding.
const BRANCH_FLOOR: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContinuationResult {
    pub start_value: Complex64,
    pub end_value: Complex64,
    pub increment: Complex64,
    /// `increment / n` with `n = l·size(Y)` the path size.
    pub normalized_increment: Complex64,
    pub n: usize,
    pub steps: usize,
    pub max_step_error: f64,
}

#[derive(Clone, Copy)]
struct Sample {
    w: Complex64,
    log_det: Option<Complex64>,
}

struct Segment<'a> {
    germ: &'a GermSpec,
    dom: &'a DomainSpec,
    xa: &'a MatrixTuple,
    xb: &'a MatrixTuple,
    dx: MatrixTuple,
    ta: f64,
    tb: f64,
}

impl Segment<'_> {
    fn t(&self, s: f64) -> f64 {
        self.ta + s * (self.tb - self.ta)
    }

    fn sample(&self, s: f64) -> Result<Sample> {
        let x = self.xa.lerp(self.xb, s);
        let t = self.t(s);
        self.dom.check(&x, t)?;
        let (w, log_det) = self.germ.integrand(&x, &self.dx, t)?;
        if !w.is_finite() {
            return Err(NcError::DomainExit {
                t,
                reason: "integrand is not finite".into(),
            });
        }
        Ok(Sample { w, log_det })
    }
}

// Samples at a, a + h/4, a + h/2, a + 3h/4, b.
struct Interval {
    a: f64,
    b: f64,
    f: [Sample; 5],
    tol: f64,
    depth: usize,
}

#[derive(Default)]
struct Tally {
    value: Complex64,
    steps: usize,
    max_err: f64,
}

// Distance from z to the nearest point of 2πi·ℤ.
fn mod_2pi_i(z: Complex64) -> f64 {
    let k = (z.im / (2.0 * PI)).round();
    (z - Complex64::new(0.0, 2.0 * PI * k)).norm()
}

fn accepts(iv: &Interval, estimate: Complex64, err: f64) -> bool {
    if err > iv.tol {
        return false;
    }
    match (iv.f[0].log_det, iv.f[4].log_det) {
        (Some(la), Some(lb)) => {
            estimate.im.abs() <= FRAC_PI_2
                && mod_2pi_i(estimate - (lb - la)) <= (100.0 * iv.tol).max(BRANCH_FLOOR)
        }
        _ => true,
    }
}

// Trapezoid sums at steps h, h/2, h/4, combined by two rounds of Richardson
// extrapolation; the difference of the first-round values estimates the error.
fn romberg(iv: &Interval) -> (Complex64, f64) {
    let h = iv.b - iv.a;
    let w: Vec<Complex64> = iv.f.iter().map(|s| s.w).collect();
    let t1 = (w[0] + w[4]) * (0.5 * h);
    let t2 = (w[0] + w[2] * 2.0 + w[4]) * (0.25 * h);
    let t4 = (w[0] + (w[1] + w[2] + w[3]) * 2.0 + w[4]) * (0.125 * h);
    let r1 = t2 + (t2 - t1) / 3.0;
    let r2 = t4 + (t4 - t2) / 3.0;
    (r2 + (r2 - r1) / 15.0, (r2 - r1).norm() / 15.0)
}

fn integrate_segment(seg: &Segment<'_>, tol: f64, tally: &mut Tally) -> Result<()> {
    let f = [
        seg.sample(0.0)?,
        seg.sample(0.25)?,
        seg.sample(0.5)?,
        seg.sample(0.75)?,
        seg.sample(1.0)?,
    ];
    let mut stack = vec![Interval {
        a: 0.0,
        b: 1.0,
        f,
        tol,
        depth: 0,
    }];
    while let Some(iv) = stack.pop() {
        let (estimate, err) = romberg(&iv);
        if accepts(&iv, estimate, err) {
            tally.value += estimate;
            tally.steps += 1;
            tally.max_err = tally.max_err.max(err);
            continue;
        }
        if iv.depth >= MAX_DEPTH {
            return Err(NcError::NonConvergence { t: seg.t(iv.a) });
        }
        let Interval { a, b, f, tol, depth } = iv;
        let h = b - a;
        let m = a + 0.5 * h;
        let [f0, f1, f2, f3, f4] = f;
        let l1 = seg.sample(a + 0.125 * h)?;
        let l3 = seg.sample(a + 0.375 * h)?;
        let r1 = seg.sample(a + 0.625 * h)?;
        let r3 = seg.sample(a + 0.875 * h)?;
        // right half first so the left half is integrated first
        stack.push(Interval {
            a: m,
            b,
            f: [f2, r1, f3, r3, f4],
            tol: 0.5 * tol,
            depth: depth + 1,
        });
        stack.push(Interval {
            a,
            b: m,
            f: [f0, l1, f1, l3, f2],
            tol: 0.5 * tol,
            depth: depth + 1,
        });
    }
    Ok(())
}

/// Continues `germ` along `path` by integrating its exact differential
/// segment by segment with adaptive step-doubling.
pub fn continue_germ(germ: &GermSpec, path: &PathSpec, dom: &DomainSpec, tol: f64) -> Result<ContinuationResult> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(NcError::Invalid(format!("tolerance must be positive, got {tol}")));
    }
    let germ = germ.for_vars(path.d())?;
    for node in path.nodes() {
        dom.check(&node.x, node.t)?;
    }
    let points: Vec<&MatrixTuple> = path.nodes().iter().map(|nd| &nd.x).collect();
    germ.check_closed(&points)?;
    let start_value = germ.start_value(path.start())?;
    let mut tally = Tally::default();
    for w in path.nodes().windows(2) {
        let seg = Segment {
            germ: &germ,
            dom,
            xa: &w[0].x,
            xb: &w[1].x,
            dx: w[1].x.zip_map(&w[0].x, |b, a| b - a)?,
            ta: w[0].t,
            tb: w[1].t,
        };
        integrate_segment(&seg, tol * (w[1].t - w[0].t), &mut tally)?;
    }
    let n = path.n();
    Ok(ContinuationResult {
        start_value,
        end_value: start_value + tally.value,
        increment: tally.value,
        normalized_increment: tally.value / n as f64,
        n,
        steps: tally.steps,
        max_step_error: tally.max_err,
    })
}

/// Size-normalized increment `c = (f(γ) − f(γ_X))/n` of a germ around a
/// loop.
pub fn loop_phi(germ: &GermSpec, path: &PathSpec, dom: &DomainSpec, tol: f64) -> Result<Complex64> {
    if !path.is_loop() {
        return Err(NcError::EndpointMismatch(
            "path does not essentially end where it starts".into(),
        ));
    }
    Ok(continue_germ(germ, path, dom, tol)?.normalized_increment)
}
