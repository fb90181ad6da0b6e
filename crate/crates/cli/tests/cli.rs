use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn nc(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nc"))
        .args(args)
        .current_dir(dir)
        .env_remove("NC_SEED")
        .output()
        .expect("nc runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn report(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| {
        panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&o.stdout))
    })
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

const POINT: &str = r#"{"n":1,"d":2,"mats":[
  {"rows":1,"cols":1,"data":[[[2,0]]]},
  {"rows":1,"cols":1,"data":[[[3,0]]]}]}"#;

const POINT_2X2: &str = r#"{"n":2,"d":2,"mats":[
  {"rows":2,"cols":2,"data":[[[0.5,0],[0.1,0.2]],[[0,0.3],[0.4,0]]]},
  {"rows":2,"cols":2,"data":[[[0.2,0],[0,-0.1]],[[0.3,0],[-0.6,0.1]]]}]}"#;

fn entry(m: &Value, r: usize, c: usize) -> (f64, f64) {
    let z = &m["data"][r][c];
    (z[0].as_f64().unwrap(), z[1].as_f64().unwrap())
}

#[test]
fn eval_reports_value() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "point.json", POINT);
    let o = nc(dir.path(), &["eval", "--expr", "1+x1*x2", "--point", "point.json"]);
    assert_eq!(code(&o), 0);
    let r = report(&o);
    assert_eq!(r["status"], "ok");
    assert_eq!(r["seed"], 0);
    assert_eq!(entry(&r["result"]["value"], 0, 0), (7.0, 0.0));
}

#[test]
fn check_div_eq_passes_for_swapped_product() {
    let dir = TempDir::new().unwrap();
    let o = nc(
        dir.path(),
        &[
            "check-div-eq", "--e1", "1+x1*x2", "--e2", "1+x2*x1", "--sizes", "1,2,3,4", "--trials", "25",
            "--seed", "0", "--tol", "1e-8",
        ],
    );
    assert_eq!(code(&o), 0);
    let r = report(&o);
    assert_eq!(r["status"], "pass");
    assert_eq!(r["result"]["checked"], 100);
    assert!(r["result"]["worst"].as_f64().unwrap() <= 1e-8);
}

#[test]
fn check_div_eq_fails_for_different_functions() {
    let dir = TempDir::new().unwrap();
    let o = nc(dir.path(), &["check-div-eq", "--e1", "1+x1*x2", "--e2", "1+x1", "--trials", "3"]);
    assert_eq!(code(&o), 3);
    assert_eq!(report(&o)["status"], "fail");
}

#[test]
fn quantize_rejects_real_increment() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "loops.json", r#"[{"increment": 1.0, "n": 1}]"#);
    let o = nc(dir.path(), &["quantize", "--loops", "loops.json"]);
    assert_eq!(code(&o), 3);
    assert_eq!(report(&o)["status"], "fail");
}

#[test]
fn quantize_accepts_half_turn_at_size_two() {
    let dir = TempDir::new().unwrap();
    let pi = std::f64::consts::PI;
    write(dir.path(), "loops.json", &format!(r#"[{{"c": [0, {pi}], "n": 2}}]"#));
    let o = nc(dir.path(), &["quantize", "--loops", "loops.json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(report(&o)["result"]["entries"][0]["ratio"], "1/2");
}

#[test]
fn paper_path_starts_at_unipotent_and_closes() {
    let dir = TempDir::new().unwrap();
    let o = nc(dir.path(), &["gen-path", "--kind", "paper-2x2"]);
    assert_eq!(code(&o), 0);
    let p = report(&o);
    let nodes = p["nodes"].as_array().unwrap();
    assert_eq!(nodes.len(), 256);
    let first = &nodes[0]["X"]["mats"][0];
    let last = &nodes[255]["X"]["mats"][0];
    let expect = [[(1.0, 0.0), (1.0, 0.0)], [(0.0, 0.0), (1.0, 0.0)]];
    for (r, row) in expect.iter().enumerate() {
        for (c, &z) in row.iter().enumerate() {
            assert_eq!(entry(first, r, c), z);
            assert_eq!(entry(last, r, c), z);
        }
    }
    assert_eq!(nodes[255]["t"].as_f64().unwrap(), 1.0);
}

#[test]
fn circle_det_has_requested_samples() {
    let dir = TempDir::new().unwrap();
    let o = nc(dir.path(), &["gen-path", "--kind", "circle-det", "--n", "1", "--samples", "256"]);
    assert_eq!(code(&o), 0);
    assert_eq!(report(&o)["nodes"].as_array().unwrap().len(), 256);
    let bad = nc(dir.path(), &["gen-path", "--kind", "circle-det", "--samples", "2"]);
    assert_eq!(code(&bad), 2);
}

#[test]
fn loop_phi_counts_windings() {
    let dir = TempDir::new().unwrap();
    let g = nc(
        dir.path(),
        &["gen-path", "--kind", "circle-det", "--n", "2", "--winding", "-3", "--output", "loop.json"],
    );
    assert_eq!(code(&g), 0);
    let o = nc(dir.path(), &["loop-phi", "--logdet", "x1", "--path", "loop.json", "--forbid", "gl"]);
    assert_eq!(code(&o), 0);
    let w = &report(&o)["result"]["n_phi_over_2pi_i"];
    assert!((w[0].as_f64().unwrap() + 3.0).abs() < 1e-6, "{w}");
    assert!(w[1].as_f64().unwrap().abs() < 1e-6);
}

#[test]
fn continue_stops_at_domain_exit() {
    let dir = TempDir::new().unwrap();
    // the circle around 0.5 of radius 1 starts at 1.5, which is forbidden
    nc(
        dir.path(),
        &["gen-path", "--kind", "circle-det", "--center", "0.5,0", "--radius", "1", "--output", "c.json"],
    );
    let o = nc(dir.path(), &["continue", "--logdet", "x1", "--path", "c.json", "--forbid", "1.5,0"]);
    assert_eq!(code(&o), 1);
    assert_eq!(report(&o)["error"]["kind"], "numerical");
}

#[test]
fn integrality_of_logdet_on_circles() {
    let dir = TempDir::new().unwrap();
    let mut loops = Vec::new();
    for (n, w) in [(1, "1"), (2, "-1"), (3, "2")] {
        let name = format!("l{n}.json");
        let o = nc(
            dir.path(),
            &["gen-path", "--kind", "circle-det", "--n", &n.to_string(), "--winding", w, "--samples", "128", "--output", &name],
        );
        assert_eq!(code(&o), 0);
        loops.push(fs::read_to_string(dir.path().join(&name)).unwrap());
    }
    write(dir.path(), "loops.json", &format!("[{}]", loops.join(",")));
    let ok = nc(dir.path(), &["integrality", "--logdet", "x1", "--loops", "loops.json", "--forbid", "gl"]);
    assert_eq!(code(&ok), 0);
    assert_eq!(report(&ok)["result"]["verdict"], "divisor-candidate");
    let half = nc(
        dir.path(),
        &["integrality", "--g", "0.5*inv(x1)", "--loops", "loops.json", "--forbid", "gl"],
    );
    assert_eq!(code(&half), 3);
    assert_eq!(report(&half)["result"]["verdict"], "obstructed");
}

#[test]
fn concat_and_trace_equiv() {
    let dir = TempDir::new().unwrap();
    for (name, w) in [("a.json", "1"), ("b.json", "1"), ("c.json", "2")] {
        nc(dir.path(), &["gen-path", "--kind", "circle-det", "--winding", w, "--samples", "64", "--output", name]);
    }
    let o = nc(dir.path(), &["concat", "--path1", "a.json", "--path2", "b.json", "--output", "ab.json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(report(&o)["result"]["is_loop"], true);
    let same = nc(
        dir.path(),
        &["trace-equiv", "--path1", "ab.json", "--path2", "c.json", "--logdet", "x1", "--forbid", "gl"],
    );
    assert_eq!(code(&same), 0, "{}", String::from_utf8_lossy(&same.stdout));
    let differ = nc(
        dir.path(),
        &["trace-equiv", "--path1", "a.json", "--path2", "c.json", "--logdet", "x1", "--forbid", "gl"],
    );
    assert_eq!(code(&differ), 3);
    assert_eq!(report(&differ)["result"]["verdict"], "distinguished");
}

#[test]
fn linearize_then_det_ratio() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "x.json", POINT_2X2);
    let o = nc(dir.path(), &["linearize", "--expr", "inv(1 - x1*x2)", "--output", "r.json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(report(&o)["result"]["m"], 7);
    let ev = nc(dir.path(), &["realization-eval", "--realization", "r.json", "--point", "x.json"]);
    assert_eq!(code(&ev), 0);
    let dr = nc(dir.path(), &["det-ratio", "--expr", "inv(1 - x1*x2)", "--point", "x.json"]);
    assert_eq!(code(&dr), 0);
    assert!(report(&dr)["result"]["residual_vs_det"].as_f64().unwrap() < 1e-8);
    let ds = nc(dir.path(), &["divisor-split", "--expr", "inv(1 - x1*x2)", "--point", "x.json"]);
    assert_eq!(code(&ds), 0);
    assert!(report(&ds)["result"]["residual_vs_divisor"].as_f64().unwrap() < 1e-8);
}

#[test]
fn divisor_methods_agree() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "x.json", POINT_2X2);
    let run = |m: &str| {
        let o = nc(dir.path(), &["divisor", "--expr", "1 + x1*inv(x2)*x1", "--point", "x.json", "--method", m]);
        assert_eq!(code(&o), 0);
        report(&o)["result"]["divisor"].clone()
    };
    let (a, b) = (run("reverse"), run("forward"));
    for i in 0..2 {
        for r in 0..2 {
            for c in 0..2 {
                let (x, y) = (entry(&a["components"][i], r, c), entry(&b["components"][i], r, c));
                assert!((x.0 - y.0).abs() + (x.1 - y.1).abs() < 1e-9);
            }
        }
    }
}

#[test]
fn dderiv_of_square() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "x.json", POINT);
    write(
        dir.path(),
        "h.json",
        r#"{"n":1,"d":2,"mats":[{"rows":1,"cols":1,"data":[[[1,0]]]},{"rows":1,"cols":1,"data":[[[0,0]]]}]}"#,
    );
    let o = nc(dir.path(), &["dderiv", "--expr", "x1*x1", "--point", "x.json", "--direction", "h.json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(entry(&report(&o)["result"]["derivative"], 0, 0), (4.0, 0.0));
}

#[test]
fn error_exit_codes() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "point.json", POINT);
    write(dir.path(), "e.txt", "x1");
    assert_eq!(code(&nc(dir.path(), &["eval", "--expr", "1+", "--point", "point.json"])), 2);
    assert_eq!(code(&nc(dir.path(), &["eval", "--expr", "x3", "--point", "point.json"])), 2);
    assert_eq!(code(&nc(dir.path(), &["eval", "--expr", "inv(x1-2)", "--point", "point.json"])), 1);
    assert_eq!(code(&nc(dir.path(), &["eval", "--expr", "x1", "--point", "missing.json"])), 2);
    assert_eq!(code(&nc(dir.path(), &["frobnicate"])), 2);
    let both = nc(dir.path(), &["eval", "--expr", "x1", "--expr-file", "e.txt", "--point", "point.json"]);
    assert_eq!(code(&both), 2);
    let file = nc(dir.path(), &["eval", "--expr-file", "e.txt", "--point", "point.json"]);
    assert_eq!(code(&file), 0);
}

#[test]
fn reports_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let args = ["check-div-eq", "--e1", "inv(1+x1*x2)", "--e2", "inv(1+x2*x1)", "--trials", "5", "--seed", "7"];
    let a = nc(dir.path(), &args);
    let b = nc(dir.path(), &args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(report(&a)["seed"], 7);
}

#[test]
fn seed_comes_from_environment() {
    let dir = TempDir::new().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_nc"))
        .args(["check-div-eq", "--e1", "x1", "--e2", "x1", "--trials", "1"])
        .current_dir(dir.path())
        .env("NC_SEED", "42")
        .output()
        .unwrap();
    assert_eq!(report(&o)["seed"], 42);
}

#[test]
fn suite_subset_in_text() {
    let dir = TempDir::new().unwrap();
    let o = nc(dir.path(), &["suite", "--criteria", "1,9", "--format", "text"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines.iter().all(|l| l.starts_with("[PASS]")), "{text}");
    assert_eq!(code(&nc(dir.path(), &["suite", "--criteria", "15"])), 2);
}
