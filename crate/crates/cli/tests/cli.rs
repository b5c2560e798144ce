use std::process::{Command, Output};

use serde_json::Value;

fn chyp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chyp")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(o)).unwrap()
}

fn csv_rows(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let headers = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r.records().map(|rec| rec.unwrap().iter().map(String::from).collect()).collect();
    (headers, rows)
}

fn num(s: &str) -> f64 {
    s.parse().unwrap()
}

#[test]
fn classify_identity() {
    let id = "[[[1,0],[0,0],[0,0]],[[0,0],[1,0],[0,0]],[[0,0],[0,0],[1,0]]]";
    let v = json(&chyp(&["classify", "--matrix", id]));
    assert_eq!(v["tag"], "Identity");
    assert_eq!(v["f"].as_f64().unwrap(), 0.0);
    assert_eq!(v["trace"], serde_json::json!([3.0, 0.0]));
}

#[test]
fn classify_flat_and_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.json");
    std::fs::write(&path, "[[0,0],[0,0],[1,0],[0,0],[-1,0],[0,0],[1,0],[0,0],[0,0]]").unwrap();
    let v = json(&chyp(&["classify", "--input", path.to_str().unwrap()]));
    assert_eq!(v["tag"], "ComplexReflection");
}

#[test]
fn classify_symmetric_product_is_parabolic() {
    let g = json(&chyp(&["group33", "--theta", "0.2", "--phi", "0.1", "--psi", "0.3"]));
    let a = g["A"].to_string();
    let v = json(&chyp(&["classify", "--matrix", &a]));
    let tag = v["tag"].as_str().unwrap();
    assert!(tag == "ScrewParabolic" || tag.starts_with("Unipotent"), "{tag}");
    assert!(v["f"].as_f64().unwrap().abs() < 1e-9);
}

#[test]
fn classify_rejects_bad_input() {
    let o = chyp(&["classify", "--matrix", "[1, 2"]);
    assert_eq!(o.status.code(), Some(255));
    let o = chyp(&["classify", "--matrix", "[[[2,0],[0,0],[0,0]],[[0,0],[1,0],[0,0]],[[0,0],[0,0],[1,0]]]"]);
    assert_eq!(o.status.code(), Some(255));
    assert!(String::from_utf8_lossy(&o.stderr).contains("form"));
}

#[test]
fn group33_reports() {
    let psi = (3.0f64 / 8.0).sqrt().asin().to_string();
    let v = json(&chyp(&["group33", "--theta", "0", "--phi", "0", "--psi", &psi]));
    let tag = v["class_J1J2inv"]["tag"].as_str().unwrap();
    assert!(tag == "ScrewParabolic" || tag.starts_with("Unipotent"), "{tag}");
    assert!(v["trace_J1J2inv"]["residual"].as_f64().unwrap() < 1e-12);

    let v = json(&chyp(&["group33", "--theta", "0.2", "--phi", "-0.2", "--psi", "0"]));
    assert_eq!(v["class_J1J2"]["tag"], "Identity");

    let o = chyp(&["group33", "--theta", "1.0", "--phi", "0", "--psi", "0"]);
    assert_eq!(o.status.code(), Some(255));
}

#[test]
fn tetra_and_rep() {
    let v = json(&chyp(&["tetra", "--theta", "0.2", "--phi", "-0.1", "--psi", "0.3", "--r", "2"]));
    assert_eq!(v["balance"]["by_cross_ratio"], false);
    assert!((v["extracted"]["r"].as_f64().unwrap() - 2.0).abs() < 1e-12);

    let v = json(&chyp(&["rep", "--theta", "0.2", "--phi", "-0.1", "--psi", "0.3", "--lambda-a", "0.4"]));
    assert!(v["closed_form_residual_A"].as_f64().unwrap() < 1e-9);
    assert!(v["closed_form_residual_B"].as_f64().unwrap() < 1e-9);
}

#[test]
fn deltoid_csv() {
    let o = chyp(&["deltoid", "--samples", "90"]);
    assert!(o.status.success());
    let (h, rows) = csv_rows(&stdout(&o));
    assert_eq!(h, ["alpha", "re", "im", "status"]);
    assert_eq!(rows.len(), 90);
    for r in rows {
        assert_eq!(r[3], "ok");
        let (x, y) = (num(&r[1]), num(&r[2]));
        let n2 = x * x + y * y;
        let f = n2 * n2 - 8.0 * (x * x * x - 3.0 * x * y * y) + 18.0 * n2 - 27.0;
        assert!(f.abs() < 1e-10);
    }
}

#[test]
fn superpinch_endpoints() {
    let o = chyp(&["superpinch", "--samples", "9"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let (h, rows) = csv_rows(&stdout(&o));
    assert_eq!(
        h,
        ["X", "Y", "x", "y", "z", "theta", "phi", "psi", "resP", "resf1", "resfc", "branch", "status"]
    );
    assert!((num(&rows[0][0]) - 1.9019238).abs() < 1e-7);
    assert!((num(&rows[rows.len() - 1][0]) - 7.0980762).abs() < 1e-7);
    assert!(rows.iter().all(|r| r[12] == "ok"));
}

#[test]
fn surface_slices_family_headers() {
    let (h, rows) = csv_rows(&stdout(&chyp(&["surface", "--resolution", "3"])));
    assert_eq!(h, ["theta", "phi", "psi", "f_J1J2inv", "f_comm_re_deficit", "status"]);
    assert_eq!(rows.len(), 27);

    let (h, rows) = csv_rows(&stdout(&chyp(&["slices", "--psi-slice", "0.02,0.085", "--resolution", "20"])));
    assert_eq!(h, ["psi", "theta", "phi", "f_J1J2inv", "f_comm", "status"]);
    assert_eq!(rows.len(), 800);

    let (h, rows) = csv_rows(&stdout(&chyp(&["family", "--kind", "bending", "--resolution", "8"])));
    assert_eq!(h, ["kind", "param", "f_value", "class", "threshold", "status"]);
    assert_eq!(rows.len(), 8);
    let t = num(&rows[0][4]);
    assert!((t.sin() - (3.0f64 / 8.0).sqrt()).abs() < 1e-10);
}

#[test]
fn json_mirrors_columns() {
    let v = json(&chyp(&["deltoid", "--samples", "3", "--format", "json"]));
    let first = v.as_array().unwrap()[0].as_object().unwrap();
    let keys: Vec<_> = first.keys().cloned().collect();
    assert_eq!(keys, ["alpha", "re", "im", "status"]);
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for p in [&a, &b] {
        let o = chyp(&["superpinch", "--samples", "7", "--out", p.to_str().unwrap()]);
        assert!(o.status.success());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn config_file_and_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "# group parameters\ntheta = 0.2\nphi=-0.2\npsi=0\nformat=json\n").unwrap();
    let c = cfg.to_str().unwrap();
    let v = json(&chyp(&["group33", "--config", c]));
    assert_eq!(v["params"]["theta"].as_f64().unwrap(), 0.2);
    let v = json(&chyp(&["group33", "--config", c, "--theta", "0.1"]));
    assert_eq!(v["params"]["theta"].as_f64().unwrap(), 0.1);

    std::fs::write(&cfg, "bogus=1\n").unwrap();
    assert_eq!(chyp(&["selftest", "--config", c]).status.code(), Some(255));
}

#[test]
fn tolerances_are_validated() {
    assert_eq!(chyp(&["deltoid", "--tol-rank=-1"]).status.code(), Some(255));
    assert_eq!(chyp(&["deltoid", "--samples", "1"]).status.code(), Some(255));
}

#[test]
fn selftest_passes() {
    let o = chyp(&["selftest", "--seed", "7"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let (_, rows) = csv_rows(&stdout(&o));
    assert!(rows.iter().all(|r| r.last().unwrap() == "ok"));
}
