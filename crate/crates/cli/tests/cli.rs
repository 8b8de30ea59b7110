use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn fermat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fermat")).args(args).env_remove("FERMAT_CACHE_DIR").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid json")
}

#[test]
fn alpha_examples() {
    let o = fermat(&["alpha", "--n", "2", "--m", "7", "--method", "both"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("alpha(I_2^(7)) = 18\n"));

    let o = fermat(&["alpha", "--n", "5", "--m", "3", "--method", "groebner", "--format", "json"]);
    let v = json(&o);
    assert_eq!(v["alpha"], 15);
    assert_eq!(v["alpha_method"], "groebner");

    let o = fermat(&["alpha", "--n", "3", "--m", "1", "--check"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("= 4\n"));
}

#[test]
fn alpha_extras() {
    let v = json(&fermat(&["alpha", "--n", "3", "--m", "2", "--extras", "--format", "json"]));
    assert_eq!(v["alpha"], 8);
    assert_eq!(v["beta"], 8);
    let degrees = v["minimal_generator_degrees"].as_array().unwrap();
    assert_eq!(degrees.first().unwrap(), 8);
    assert_eq!(v["omega"], *degrees.last().unwrap());
}

#[test]
fn contain_examples() {
    let o = fermat(&["contain", "--n", "2", "--m", "3", "--r", "2", "--a", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains(": true"));

    let o = fermat(&["contain", "--n", "3", "--m", "3", "--r", "2", "--a", "0", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["holds"], false);
    let g = v["failing_generator"].as_str().unwrap();
    assert!(g.contains("x^6*y^3"), "{g}");

    let o = fermat(&["contain", "--n", "3", "--m", "2", "--r", "1", "--a", "1"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn witness_examples() {
    let o = fermat(&["witness", "--n", "4", "--m", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("degree: 21\n"));
    assert_eq!(text.matches(": member\n").count(), 4);

    let v = json(&fermat(&["witness", "--n", "3", "--m", "7", "--format", "json"]));
    assert_eq!(v["degree"], 22);
    assert_eq!(v["verified"], true);
    assert_eq!(v["in_coordinate_powers"], serde_json::json!([true, true, true]));

    let v = json(&fermat(&["witness", "--n", "2", "--m", "1", "--format", "json"]));
    assert_eq!(v["degree"], 3);
    assert_eq!(v["witness"], "x^2*z - y^2*z");
}

#[test]
fn witness_falls_back_to_alpha() {
    let o = fermat(&["witness", "--n", "3", "--m", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("no known witness"));
    assert!(stdout(&o).starts_with("alpha(I_3^(5)) = 17\n"));
}

#[test]
fn points_examples() {
    let o = fermat(&["points", "--fermat", "2", "--m", "2"]);
    assert!(stdout(&o).contains("alpha = 6\n"));

    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("three_collinear.pts");
    fs::write(&file, "# three points on z = 0\nconductor: 1\n1:0:0\n0:1:0\n1:1:0\n").unwrap();
    let o = fermat(&["points", "--file", file.to_str().unwrap(), "--m", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("alpha = 1\n"));

    let o = fermat(&["points", "--fermat", "3", "--m", "4", "--trace"]);
    assert!(stdout(&o).contains("alpha = 13\n"));
    assert!(stderr(&o).lines().last().unwrap().starts_with("t=13 rows=120 cols=105"));
}

#[test]
fn points_dimension_and_cap() {
    let v = json(&fermat(&["points", "--fermat", "2", "--m", "1", "--t", "3", "--format", "json"]));
    assert_eq!(v["dim"], 3);
    let o = fermat(&["points", "--fermat", "2", "--m", "2", "--cap", "5"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("cap 5"));
}

#[test]
fn malformed_points_file() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.pts");
    fs::write(&file, "conductor: 3\n1:0:0\n\n1:w:0\n").unwrap();
    let o = fermat(&["points", "--file", file.to_str().unwrap(), "--m", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 4"), "{}", stderr(&o));
}

#[test]
fn usage_errors() {
    assert_eq!(fermat(&["alpha", "--n", "1", "--m", "2"]).status.code(), Some(2));
    assert_eq!(fermat(&["alpha", "--n", "2"]).status.code(), Some(2));
    assert_eq!(fermat(&["points", "--m", "1"]).status.code(), Some(2));
    assert_eq!(fermat(&["table", "--budget", "-1"]).status.code(), Some(2));
}

#[test]
fn table_matches_for_small_conductors() {
    let o = fermat(&["table", "--n", "2..3", "--m", "1..6", "--no-timing"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,m,alpha,predicted,match,method,seconds"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 12);
    for row in rows {
        assert_eq!(row[4], "true", "{row:?}");
        assert_eq!(row[6], "");
    }
}

#[test]
fn table_flags_exceptional_cell() {
    let o = fermat(&["table", "--n", "4", "--m", "1..5", "--format", "json", "--workers", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let cells = v["cells"].as_array().unwrap();
    let last = cells.last().unwrap();
    assert_eq!(
        (last["m"].clone(), last["alpha"].clone(), last["exceptional"].clone()),
        (5.into(), 21.into(), true.into())
    );
    assert!(cells[..4].iter().all(|c| c["exceptional"] == false && c["match"] == true));
    assert_eq!(v["notes"].as_array().unwrap().len(), 1);
    assert_eq!(v["waldschmidt"][0]["inf_so_far"], "4");
}

#[test]
fn empty_grid_writes_header() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("table.csv");
    let o = fermat(&["table", "--n", "2", "--m", "1..0", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(fs::read_to_string(&out).unwrap(), "n,m,alpha,predicted,match,method,seconds\n");
}

#[test]
fn budget_skips_cells() {
    let o = fermat(&["table", "--n", "3", "--m", "5", "--budget", "0.000001"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("3,5,skipped,17,,groebner,"));
    assert!(stderr(&o).contains("skipped"));
}

#[test]
fn json_output_is_deterministic() {
    let args = ["table", "--n", "2..3", "--m", "1..4", "--format", "json", "--no-timing"];
    assert_eq!(fermat(&args).stdout, fermat(&args).stdout);
    let args = ["contain", "--n", "2", "--m", "4", "--r", "3", "--a", "3", "--format", "json"];
    assert_eq!(fermat(&args).stdout, fermat(&args).stdout);
}

fn run_cached(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fermat")).args(args).env("FERMAT_CACHE_DIR", dir).output().unwrap()
}

#[test]
fn warm_and_cold_cache_agree() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["table", "--n", "2..3", "--m", "1..4", "--format", "json", "--no-timing"];
    let cold = run_cached(dir.path(), &args);
    assert!(fs::read_dir(dir.path()).unwrap().count() > 0);
    let warm = run_cached(dir.path(), &args);
    assert_eq!(cold.stdout, warm.stdout);
    assert_eq!(cold.stdout, fermat(&args).stdout);

    let args = ["contain", "--n", "3", "--m", "3", "--r", "2", "--format", "json"];
    assert_eq!(run_cached(dir.path(), &args).stdout, run_cached(dir.path(), &args).stdout);
}
