use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use spinor_grass::grassmann::{cartan_big_cell, Frame};
use spinor_grass::{rational, Matrix, Rational, SkewMatrix};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_spinor-grass"));
    c.env_remove("SPINOR_GRASS_THREADS");
    c
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn read<T: serde::de::DeserializeOwned>(name: &str) -> T {
    serde_json::from_str(&std::fs::read_to_string(data(name)).unwrap()).unwrap()
}

/// Laplace expansion, kept separate from the library's elimination.
fn cofactor_det(m: &[Vec<Rational>]) -> Rational {
    if m.is_empty() {
        return rational::one();
    }
    let mut acc = rational::zero();
    for c in 0..m.len() {
        let minor: Vec<Vec<Rational>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, q)| q.clone()).collect()).collect();
        let term = &m[0][c] * cofactor_det(&minor);
        if c % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

#[test]
fn pfaffian_of_two_by_two() {
    let out = run(&["compute", "pfaffian", data("skew2.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out), Value::String("5".into()));
}

#[test]
fn pfaffian_accepts_fractions() {
    let out = run(&["compute", "pfaffian", data("skew4.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    // a12 a34 - a13 a24 + a14 a23 = 7 - 2 + 6
    assert_eq!(stdout_json(&out), Value::String("11".into()));
}

#[test]
fn cartan_affine_matches_library() {
    let out = run(&["compute", "cartan", "--affine", data("skew4.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    let coords = v["coords"].as_array().unwrap();
    assert_eq!(coords.len(), 8);
    let a: SkewMatrix = read("skew4.json");
    let expected = serde_json::to_value(cartan_big_cell(&a)).unwrap();
    assert_eq!(v["coords"], expected);
    assert_eq!(v["component"], "+");
}

#[test]
fn plucker_single_coordinate_matches_determinant() {
    let out = run(&["compute", "plucker", "--frame", data("frame3.json").to_str().unwrap(), "--partition", "2,1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v[0]["label"], serde_json::json!([2, 1]));
    // Particle positions l_j = λ_j - j + N + 1 = 5, 3, 1.
    let frame: Frame = read("frame3.json");
    let w: &Matrix = frame.matrix();
    let rows: Vec<Vec<Rational>> = [5, 3, 1].iter().map(|&r| w.row(r - 1).to_vec()).collect();
    let det = cofactor_det(&rows);
    assert_eq!(v[0]["value"], Value::String(rational::format(&det)));
}

#[test]
fn plucker_full_map_has_binomial_length() {
    let out = run(&["compute", "plucker", "--frame", data("frame3.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out).as_array().unwrap().len(), 20);
}

#[test]
fn delta_closed_and_oracle_agree() {
    let args = ["compute", "delta", "--n", "4", "--i", "1,2", "--j", "2,3", "--k", "2,3", "--l", "1,2"];
    let closed = run(&args);
    let mut with_oracle = args.to_vec();
    with_oracle.extend(["--mode", "oracle"]);
    let oracle = run(&with_oracle);
    assert_eq!(closed.status.code(), Some(0));
    assert_eq!(stdout_json(&closed), stdout_json(&oracle));
}

#[test]
fn cartan_of_non_isotropic_frame_is_usage_error() {
    let out = run(&["compute", "cartan", "--frame", data("frame3.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("isotropic"));
}

#[test]
fn malformed_inputs_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"rows\": 2").unwrap();
    assert_eq!(run(&["compute", "pfaffian", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["compute", "pfaffian", data("not_skew.json").to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["compute", "pfaffian", "/nonexistent/file.json"]).status.code(), Some(2));
    assert_eq!(run(&["compute", "delta", "--n", "2", "--i", "1,5", "--j", "1", "--k", "1", "--l", "1"]).status.code(), Some(2));
    assert_eq!(run(&["compute", "plucker", "--frame", data("frame3.json").to_str().unwrap(), "--partition", "4"]).status.code(), Some(2));
}

#[test]
fn verify_flagship_suite_passes() {
    let out = run(&["verify", "--which", "cauchy-binet", "--n", "5", "--trials", "10", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["passed"], true);
    assert_eq!(v["suites"][0]["suite"], "cauchy-binet");
    assert_eq!(v["suites"][0]["failed"], 0);
}

#[test]
fn verify_all_reports_every_suite() {
    let out = run(&["verify", "--which", "all", "--n", "3", "--trials", "5", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    let suites = v["suites"].as_array().unwrap();
    let names: Vec<&str> = suites.iter().map(|s| s["suite"].as_str().unwrap()).collect();
    assert_eq!(
        names,
        ["cauchy-binet", "main-theorem", "cartan-relations", "plucker-relations", "giambelli", "quadrics", "wedge-replay"]
    );
    for s in suites {
        assert!(s["checks"].as_u64().unwrap() > 0);
        assert_eq!(s["trials"], 5);
    }
}

#[test]
fn config_errors_exit_two() {
    assert_eq!(run(&["verify", "--n", "0"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--trials", "0"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--which", "everything"]).status.code(), Some(2));
    assert_eq!(run(&["generate", "skew", "--n", "0"]).status.code(), Some(2));
    let out = bin().args(["verify", "--n", "2", "--trials", "1"]).env("SPINOR_GRASS_THREADS", "zero").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reports_are_reproducible_across_thread_counts() {
    let args = ["verify", "--which", "all", "--n", "3", "--trials", "4", "--seed", "99"];
    let one = bin().args(args).env("SPINOR_GRASS_THREADS", "1").output().unwrap();
    let three = bin().args(args).env("SPINOR_GRASS_THREADS", "3").output().unwrap();
    let default = run(&args);
    assert_eq!(one.stdout, three.stdout);
    assert_eq!(one.stdout, default.stdout);
}

#[test]
fn output_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run(&["verify", "--which", "giambelli", "--n", "3", "--trials", "2", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(std::fs::read(&path).unwrap(), out.stdout);
}

#[test]
fn generated_instances_are_seeded_and_valid() {
    let a = run(&["generate", "skew", "--n", "5", "--seed", "3"]);
    let b = run(&["generate", "skew", "--n", "5", "--seed", "3"]);
    let c = run(&["generate", "skew", "--n", "5", "--seed", "4"]);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
    let _: SkewMatrix = serde_json::from_slice(&a.stdout).unwrap();

    let iso = run(&["generate", "isotropic", "--n", "3", "--seed", "8"]);
    let frame: Frame = serde_json::from_slice(&iso.stdout).unwrap();
    assert!(spinor_grass::grassmann::is_isotropic(&frame));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("iso.json");
    std::fs::write(&path, &iso.stdout).unwrap();
    let cartan = run(&["compute", "cartan", "--frame", path.to_str().unwrap()]);
    assert_eq!(cartan.status.code(), Some(0));
    assert_eq!(stdout_json(&cartan)["coords"].as_array().unwrap().len(), 4);
}

#[test]
fn pfaffian_reads_stdin() {
    use std::io::Write;
    let mut child = bin()
        .args(["compute", "pfaffian", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(std::fs::read(data("skew2.json")).unwrap().as_slice()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(stdout_json(&out), Value::String("5".into()));
}
