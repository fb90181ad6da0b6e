use std::fs;
use std::path::Path;

use ncfn::evalad::{self, DivisorMethod};
use ncfn::matcore::{random_tuple_with, seeded_rng};
use ncfn::ncexpr::NcExpr;
use ncfn::realize::{self, Realization};
use ncfn::suite;
use ncfn::tracial::{self, gen, DomainSpec, GermSpec, PathSpec};
use ncfn::{MatrixTuple, NcError};
use num_complex::Complex64;
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::args::*;
use crate::output;

pub enum Failure {
    Nc(NcError),
    Input(String),
}

impl From<NcError> for Failure {
    fn from(e: NcError) -> Self {
        Failure::Nc(e)
    }
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Nc(e) if e.is_numerical() => 1,
            _ => 2,
        }
    }

    pub fn kind(&self) -> &'static str {
        if self.exit_code() == 1 {
            "numerical"
        } else {
            "input"
        }
    }

    pub fn message(&self) -> String {
        match self {
            Failure::Nc(e) => e.to_string(),
            Failure::Input(s) => s.clone(),
        }
    }
}

type Res<T> = std::result::Result<T, Failure>;

/// What a subcommand produced: its result payload and whether the checks it
/// ran (if any) passed.
pub struct Outcome {
    pub result: Value,
    pub passed: Option<bool>,
    /// Raw document printed instead of a report (gen-path, concat).
    pub raw: Option<Value>,
}

impl Outcome {
    fn ok(result: Value) -> Self {
        Self { result, passed: None, raw: None }
    }

    fn check(result: Value, passed: bool) -> Self {
        Self { result, passed: Some(passed), raw: None }
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn read_text(path: &Path) -> Res<String> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Res<T> {
    let text = read_text(path)?;
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write_json(path: &Path, v: &Value) -> Res<()> {
    fs::write(path, output::to_json(v)).map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))
}

fn parse_expr(text: &str, d: Option<usize>) -> Res<NcExpr> {
    Ok(match d {
        Some(d) => NcExpr::parse(text, d)?,
        None => NcExpr::parse_infer(text)?,
    })
}

fn expr_text(input: &ExprInput) -> Res<String> {
    match (&input.expr, &input.expr_file) {
        (Some(t), None) => Ok(t.clone()),
        (None, Some(p)) => read_text(p),
        _ => Err(Failure::Input("give exactly one of --expr and --expr-file".into())),
    }
}

fn complex_pair(s: &str) -> Res<Complex64> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |p: &str| {
        p.parse::<f64>()
            .map_err(|_| Failure::Input(format!("`{s}` is not a complex number \"re,im\"")))
    };
    match parts.as_slice() {
        [re] => Ok(Complex64::new(num(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(num(re)?, num(im)?)),
        _ => Err(Failure::Input(format!("`{s}` is not a complex number \"re,im\""))),
    }
}

fn domain(input: &DomainInput) -> Res<DomainSpec> {
    match (&input.domain, &input.forbid) {
        (Some(p), _) => read_json(p),
        (None, Some(s)) if s.trim() == "gl" => Ok(DomainSpec::gl()),
        (None, Some(s)) => {
            let lambdas = s.split(';').filter(|p| !p.trim().is_empty()).map(complex_pair).collect::<Res<Vec<_>>>()?;
            Ok(DomainSpec::avoiding(&lambdas))
        }
        (None, None) => Ok(DomainSpec::unrestricted()),
    }
}

fn germ(input: &GermInput) -> Res<GermSpec> {
    match (&input.germ, &input.logdet, input.g.is_empty()) {
        (Some(p), None, true) => read_json(p),
        (None, Some(e), true) => Ok(GermSpec::logdet(e)?),
        (None, None, false) => Ok(GermSpec::closed_form_from_strs(&input.g)?),
        (None, None, true) => Err(Failure::Input("a germ is required: --germ, --logdet or --g".into())),
        _ => Err(Failure::Input("give only one of --germ, --logdet and --g".into())),
    }
}

fn with_point(input: &ExprInput, point: &Path) -> Res<(NcExpr, MatrixTuple)> {
    let x: MatrixTuple = read_json(point)?;
    let e = parse_expr(&expr_text(input)?, Some(input.vars.unwrap_or(x.d())))?;
    Ok((e, x))
}

pub fn eval(a: &EvalArgs) -> Res<Outcome> {
    let (e, x) = with_point(&a.input, &a.point)?;
    let r = evalad::eval(&e, &x)?;
    Ok(Outcome::ok(json!({
        "expr": e.to_string(),
        "n": x.n(),
        "d": x.d(),
        "value": to_value(&r.value),
        "condition": r.condition,
    })))
}

pub fn dderiv(a: &DderivArgs) -> Res<Outcome> {
    let (e, x) = with_point(&a.input, &a.point)?;
    let h: MatrixTuple = read_json(&a.direction)?;
    let (value, deriv) = evalad::value_and_deriv(&e, &x, &h)?;
    Ok(Outcome::ok(json!({
        "expr": e.to_string(),
        "n": x.n(),
        "value": to_value(&value),
        "derivative": to_value(&deriv),
    })))
}

pub fn divisor(a: &DivisorArgs) -> Res<Outcome> {
    let (e, x) = with_point(&a.input, &a.point)?;
    let method = match a.method {
        Method::Reverse => DivisorMethod::Reverse,
        Method::Forward => DivisorMethod::Forward,
    };
    let g = evalad::divisor(&e, &x, method)?;
    Ok(Outcome::ok(json!({
        "expr": e.to_string(),
        "method": method.to_string(),
        "divisor": to_value(&g),
    })))
}

pub fn check_div_eq(a: &CheckDivEqArgs, seed: u64) -> Res<Outcome> {
    let d = match a.vars {
        Some(d) => d,
        None => parse_expr(&a.e1, None)?.d().max(parse_expr(&a.e2, None)?.d()),
    };
    let e1 = parse_expr(&a.e1, Some(d))?;
    let e2 = parse_expr(&a.e2, Some(d))?;
    if a.sizes.contains(&0) {
        return Err(Failure::Input("sizes must be positive".into()));
    }
    let mut rng = seeded_rng(seed);
    let mut worst = 0.0f64;
    let (mut checked, mut skipped) = (0usize, 0usize);
    let mut per_size = Vec::new();
    for &n in &a.sizes {
        let mut size_worst = 0.0f64;
        for _ in 0..a.trials {
            let x = random_tuple_with(n, d, &mut rng);
            let pair = evalad::divisor(&e1, &x, DivisorMethod::Reverse)
                .and_then(|g1| Ok((g1, evalad::divisor(&e2, &x, DivisorMethod::Reverse)?)));
            match pair {
                Ok((g1, g2)) => {
                    let scale = 1.0 + g1.frobenius_norm() + g2.frobenius_norm();
                    let r = g1.max_abs_diff(&g2) / scale;
                    size_worst = size_worst.max(if r.is_nan() { f64::INFINITY } else { r });
                    checked += 1;
                }
                Err(e) if e.is_numerical() => skipped += 1,
                Err(e) => return Err(e.into()),
            }
        }
        worst = worst.max(size_worst);
        per_size.push(json!({ "n": n, "worst": size_worst }));
    }
    let passed = checked > 0 && worst <= a.tol;
    Ok(Outcome::check(
        json!({
            "e1": e1.to_string(),
            "e2": e2.to_string(),
            "tol": a.tol,
            "worst": worst,
            "checked": checked,
            "skipped_singular": skipped,
            "per_size": per_size,
            "passed": passed,
        }),
        passed,
    ))
}

fn realization_report(r: &Realization) -> Value {
    json!({ "m": r.m(), "d": r.d(), "k": r.k(), "realization": to_value(r) })
}

pub fn linearize(a: &LinearizeArgs, seed: u64) -> Res<Outcome> {
    let e = parse_expr(&expr_text(&a.input)?, a.input.vars)?;
    let r = realize::linearize_with_probe(&e, &a.sizes, a.trials, seed)?;
    if let Some(p) = &a.output {
        write_json(p, &to_value(&r))?;
    }
    let mut report = realization_report(&r);
    report["expr"] = json!(e.to_string());
    Ok(Outcome::ok(report))
}

fn realization_and_point(a: &RealizationPointArgs, seed: u64) -> Res<(Realization, Option<NcExpr>, MatrixTuple)> {
    let x: MatrixTuple = read_json(&a.point)?;
    match (&a.realization, &a.expr) {
        (Some(p), None) => Ok((read_json(p)?, None, x)),
        (None, Some(text)) => {
            let e = parse_expr(text, Some(a.vars.unwrap_or(x.d())))?;
            let r = realize::linearize_with_probe(
                &e,
                &ncfn::ncexpr::DEFAULT_PROBE_SIZES,
                ncfn::ncexpr::DEFAULT_PROBE_TRIALS,
                seed,
            )?;
            Ok((r, Some(e), x))
        }
        _ => Err(Failure::Input("give exactly one of --realization and --expr".into())),
    }
}

pub fn realization_eval(a: &RealizationPointArgs, seed: u64) -> Res<Outcome> {
    let (r, e, x) = realization_and_point(a, seed)?;
    let value = realize::realization_eval(&r, &x)?;
    let mut report = json!({ "m": r.m(), "n": x.n(), "value": to_value(&value) });
    if let Some(e) = e {
        let direct = evalad::eval(&e, &x)?.value;
        report["residual_vs_eval"] = json!(value.max_abs_diff(&direct) / (1.0 + direct.frobenius_norm()));
    }
    Ok(Outcome::ok(report))
}

pub fn det_ratio(a: &RealizationPointArgs, seed: u64) -> Res<Outcome> {
    let (r, e, x) = realization_and_point(a, seed)?;
    let dr = realize::det_ratio(&r, &x)?;
    let mut report = json!({ "m": r.m(), "n": x.n(), "det_ratio": to_value(&dr) });
    if let Some(e) = e {
        let direct = ncfn::matcore::lu_det(&evalad::eval(&e, &x)?.value)?;
        report["residual_vs_det"] = json!((dr.ratio - direct).norm() / (1.0 + direct.norm()));
    }
    Ok(Outcome::ok(report))
}

pub fn divisor_split(a: &RealizationPointArgs, seed: u64) -> Res<Outcome> {
    let (r, e, x) = realization_and_point(a, seed)?;
    let (gp, gq) = realize::divisor_split(&r, &x)?;
    let diff = gp.sub(&gq);
    let mut report = json!({
        "m": r.m(),
        "n": x.n(),
        "divisor_bordered": to_value(&gp),
        "divisor_pencil": to_value(&gq),
        "difference": to_value(&diff),
    });
    if let Some(e) = e {
        let direct = evalad::divisor(&e, &x, DivisorMethod::Reverse)?;
        report["residual_vs_divisor"] = json!(diff.max_abs_diff(&direct) / (1.0 + direct.frobenius_norm()));
    }
    Ok(Outcome::ok(report))
}

fn path_summary(p: &PathSpec) -> Value {
    json!({
        "d": p.d(),
        "n": p.n(),
        "pad_start": p.pad_start(),
        "pad_end": p.pad_end(),
        "nodes": p.nodes().len(),
        "is_loop": p.is_loop(),
        "start": to_value(p.start()),
        "end": to_value(p.end()),
    })
}

fn emit_path(p: PathSpec, output: &Option<std::path::PathBuf>) -> Res<Outcome> {
    let doc = to_value(&p);
    match output {
        Some(file) => {
            write_json(file, &doc)?;
            Ok(Outcome::ok(path_summary(&p)))
        }
        None => Ok(Outcome { result: path_summary(&p), passed: None, raw: Some(doc) }),
    }
}

pub fn gen_path(a: &GenPathArgs) -> Res<Outcome> {
    if a.kind != PathKind::Custom && a.nodes.is_some() {
        return Err(Failure::Input("--nodes only applies to --kind custom".into()));
    }
    let path = match a.kind {
        PathKind::CircleDet => gen::circle_det(a.n, a.winding, complex_pair(&a.center)?, a.radius, a.samples)?,
        PathKind::DiagRotation => {
            let w = if a.windings.is_empty() { vec![1] } else { a.windings.clone() };
            gen::diag_rotation(&w, a.samples)?
        }
        PathKind::Paper2x2 => gen::paper_2x2(a.samples)?,
        PathKind::Custom => {
            let file = a
                .nodes
                .as_ref()
                .ok_or_else(|| Failure::Input("--kind custom needs --nodes".into()))?;
            let points: Vec<MatrixTuple> = read_json(file)?;
            PathSpec::uniform(points, a.pad_start, a.pad_end)?
        }
    };
    emit_path(path, &a.output)
}

pub fn concat(a: &ConcatArgs) -> Res<Outcome> {
    let g1: PathSpec = read_json(&a.path1)?;
    let g2: PathSpec = read_json(&a.path2)?;
    emit_path(tracial::concatenate(&g1, &g2)?, &a.output)
}

pub fn continue_germ(a: &ContinueArgs) -> Res<Outcome> {
    let g = germ(&a.germ)?;
    let path: PathSpec = read_json(&a.path)?;
    let r = tracial::continue_germ(&g, &path, &domain(&a.domain)?, a.tol)?;
    Ok(Outcome::ok(json!({ "germ": to_value(&g), "continuation": to_value(&r) })))
}

pub fn loop_phi(a: &ContinueArgs) -> Res<Outcome> {
    let g = germ(&a.germ)?;
    let path: PathSpec = read_json(&a.path)?;
    let phi = tracial::loop_phi(&g, &path, &domain(&a.domain)?, a.tol)?;
    let winding = phi * path.n() as f64 / Complex64::new(0.0, 2.0 * std::f64::consts::PI);
    Ok(Outcome::ok(json!({
        "germ": to_value(&g),
        "n": path.n(),
        "phi": to_value(&phi),
        "n_phi_over_2pi_i": to_value(&winding),
    })))
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ComplexJson {
    Real(f64),
    Pair([f64; 2]),
}

#[derive(Deserialize)]
struct LoopIncrement {
    #[serde(alias = "increment")]
    c: ComplexJson,
    n: usize,
}

pub fn quantize(a: &QuantizeArgs) -> Res<Outcome> {
    let loops: Vec<LoopIncrement> = read_json(&a.loops)?;
    let values: Vec<(Complex64, usize)> = loops
        .iter()
        .map(|l| {
            let c = match l.c {
                ComplexJson::Real(re) => Complex64::new(re, 0.0),
                ComplexJson::Pair([re, im]) => Complex64::new(re, im),
            };
            (c, l.n)
        })
        .collect();
    let report = tracial::quantization_check(&values, a.tol);
    Ok(Outcome::check(to_value(&report), report.passed))
}

pub fn integrality(a: &IntegralityArgs) -> Res<Outcome> {
    let g = germ(&a.germ)?;
    let loops: Vec<PathSpec> = read_json(&a.loops)?;
    let report = tracial::integrality_test(&g, &loops, &domain(&a.domain)?, a.tol)?;
    let passed = report.verdict == tracial::IntegralityVerdict::DivisorCandidate;
    Ok(Outcome::check(to_value(&report), passed))
}

pub fn trace_equiv(a: &TraceEquivArgs) -> Res<Outcome> {
    let g1: PathSpec = read_json(&a.path1)?;
    let g2: PathSpec = read_json(&a.path2)?;
    let germs: Vec<GermSpec> = match &a.germs {
        Some(p) => read_json(p)?,
        None => a.logdet.iter().map(|e| GermSpec::logdet(e)).collect::<Result<_, _>>()?,
    };
    if germs.is_empty() {
        return Err(Failure::Input("at least one germ is required".into()));
    }
    let report = tracial::trace_equiv_check(&g1, &g2, &germs, &domain(&a.domain)?, a.tol)?;
    let passed = report.verdict == tracial::TraceEquivVerdict::IndistinguishableBySuppliedGerms;
    Ok(Outcome::check(to_value(&report), passed))
}

pub fn run_suite(a: &SuiteArgs, seed: u64) -> Res<(Outcome, Vec<String>)> {
    let ids: Vec<usize> = if a.criteria.is_empty() {
        (1..=suite::criterion_count()).collect()
    } else {
        a.criteria.clone()
    };
    let mut reports = Vec::with_capacity(ids.len());
    for id in ids {
        let r = suite::run_criterion(id, seed).ok_or_else(|| {
            Failure::Input(format!("no criterion {id} (valid: 1..={})", suite::criterion_count()))
        })?;
        reports.push(r);
    }
    let passed = reports.iter().all(|r| r.passed);
    let lines = reports.iter().map(|r| r.line()).collect();
    Ok((
        Outcome::check(
            json!({ "passed": passed, "criteria": to_value(&reports) }),
            passed,
        ),
        lines,
    ))
}
