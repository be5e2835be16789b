use std::fs;
use std::process::{Command, Output};

use tempfile::TempDir;

fn liemetric(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_liemetric")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn ok(args: &[&str]) -> String {
    let o = liemetric(args);
    assert!(o.status.success(), "{args:?}: {}", stderr(&o));
    stdout(&o)
}

#[test]
fn report_oscillator() {
    let s = ok(&["report", "g0"]);
    for want in ["center dim: 1", "C1 dim: 3", "invariant form space: 2", "class: oscillator_g0"] {
        assert!(s.contains(want), "missing {want:?} in\n{s}");
    }
}

#[test]
fn report_abelian_and_affine() {
    let s = ok(&["report", "r4"]);
    assert!(s.contains("structure: abelian"));
    assert!(s.contains("invariant form space: 10"));
    let s = ok(&["report", "aff"]);
    assert!(s.contains("no nondegenerate ad-invariant form"));
}

#[test]
fn geometry_examples() {
    let s = ok(&["geometry", "g0", "gmatrix0"]);
    for want in ["R = -1/4 ad([X,Y]): PASS", "nabla R = 0: PASS", "isotropy dim: 3"] {
        assert!(s.contains(want), "missing {want:?} in\n{s}");
    }
    assert!(ok(&["geometry", "h3", "h0"]).contains("flat: YES"));
    let s = ok(&["geometry", "h3", "--metric", "h1"]);
    assert!(s.contains("soliton: FEASIBLE"));
    assert!(s.contains("c = 3/2"));
    assert!(s.contains("flat: NO"));
}

#[test]
fn degenerate_metric_exits_4() {
    let o = liemetric(&["geometry", "h3", "killing"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stderr(&o).contains("radical"));
}

#[test]
fn classify() {
    assert_eq!(ok(&["classify", "g1"]).trim(), "class: g1");
    assert_eq!(ok(&["classify", "r+sl2"]).trim(), "class: R+sl2");
}

#[test]
fn isometry_examples() {
    assert!(ok(&["isometry", "G0"]).contains("family (isom): 200/200 samples PASS; isotropy dim 3"));
    assert!(ok(&["isometry", "G1", "--samples", "20"]).contains("20/20 samples PASS"));
    assert!(ok(&["isometry", "H3:h1"]).contains("isotropy algebra dim 1 (O(2) type)"));
    assert!(ok(&["isometry", "H3:h0"]).contains("isotropy algebra dim 3 (O(2,1) type)"));
}

#[test]
fn isometry_is_deterministic() {
    let a = ok(&["isometry", "G0", "--seed", "7", "--samples", "30"]);
    let b = ok(&["isometry", "G0", "--seed", "7", "--samples", "30"]);
    assert_eq!(a, b);
}

fn max_error(summary: &str) -> f64 {
    let line = summary.lines().find(|l| l.starts_with("max error vs closed form:")).expect("error line");
    line.rsplit(' ').next().unwrap().parse().unwrap()
}

fn rows(path: &std::path::Path) -> Vec<Vec<f64>> {
    let text = fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("s,t,x,y,z,vt,vx,vy,vz"));
    lines.map(|l| l.split(',').map(|c| c.parse().unwrap()).collect()).collect()
}

#[test]
fn geodesic_g0_against_closed_form() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("g0.csv");
    let s = ok(&["geodesic", "G0", "1,1,0,0", "--s-end", "2", "--step", "0.001", "--out", path.to_str().unwrap()]);
    assert!(max_error(&s) <= 1e-8);
    let r = rows(&path);
    assert_eq!(r.len(), 2001);
    let last = r.last().unwrap();
    assert!((last[0] - 2.0).abs() < 1e-12);
    assert!((last[2] - 2f64.sin()).abs() < 1e-8);
}

#[test]
fn geodesic_straight_line_branch() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("line.csv");
    ok(&["geodesic", "G0", "0,1,2,3", "--step", "0.1", "--out", path.to_str().unwrap()]);
    for row in rows(&path) {
        let s = row[0];
        let want = [0.0, s, 2.0 * s, 3.0 * s];
        for (got, w) in row[1..5].iter().zip(want) {
            assert!((got - w).abs() < 1e-13, "{row:?}");
        }
    }
}

#[test]
fn geodesic_g1_endpoint() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("g1.csv");
    ok(&["geodesic", "G1", "1,1,1,0", "--s-end", "1", "--out", path.to_str().unwrap()]);
    let last = rows(&path).pop().unwrap();
    assert!((last[4] - (1.0 - 1f64.sinh())).abs() < 1e-8, "{}", last[4]);
}

#[test]
fn geodesic_on_heisenberg_to_stdout() {
    let o = liemetric(&["geodesic", "H3:h2", "0,0,1", "--s-end", "1", "--step", "0.5"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.starts_with("s,t,x,y,z,vt,vx,vy,vz"));
    assert_eq!(out.lines().count(), 4);
    assert!(stderr(&o).contains("closed form: not available"));
}

#[test]
fn numeric_failure_exits_5() {
    let o = liemetric(&["geodesic", "G0", "1,0,0,0", "--step", "-1"]);
    assert_eq!(o.status.code(), Some(5));
}

#[test]
fn json_files() {
    let dir = TempDir::new().unwrap();
    let good = dir.path().join("h3.json");
    fs::write(
        &good,
        r#"{
  "dim": 3,
  "brackets": [[0, 1, 2, "1"]],
  "metrics": {"flat": [[0, 0, "1"], [1, 2, "1"]], "bad": [[0, 0, "1"]]}
}"#,
    )
    .unwrap();
    let p = good.to_str().unwrap();
    assert!(ok(&["report", p]).contains("invariant form space: 3"));
    assert!(ok(&["geometry", p, "flat"]).contains("flat: YES"));
    let o = liemetric(&["geometry", p, "bad"]);
    assert_eq!(o.status.code(), Some(4));

    let broken = dir.path().join("broken.json");
    fs::write(&broken, "{\n  \"dim\": 2,\n  \"brackets\": [[0, 1, 1, \"1/x\"]]\n}").unwrap();
    let o = liemetric(&["report", broken.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));

    let jacobi = dir.path().join("jacobi.json");
    fs::write(
        &jacobi,
        r#"{"dim": 4, "brackets": [[0, 1, 2, "1"], [0, 2, 1, "-1"], [1, 2, 3, "1"], [0, 3, 1, "1"]]}"#,
    )
    .unwrap();
    let o = liemetric(&["report", jacobi.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("(e0, e1, e2)"));
}

#[test]
fn catalog_names_win_but_double_dash_forces_a_path() {
    let dir = TempDir::new().unwrap();
    let shadow = dir.path().join("g0");
    fs::write(&shadow, r#"{"dim": 1}"#).unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_liemetric"))
        .current_dir(dir.path())
        .args(["report", "g0"])
        .output()
        .unwrap();
    assert!(stdout(&o).contains("dim: 4"));
    let o = Command::new(env!("CARGO_BIN_EXE_liemetric"))
        .current_dir(dir.path())
        .args(["report", "--g0"])
        .output()
        .unwrap();
    assert!(stdout(&o).contains("dim: 1"), "{}", stderr(&o));
}
