use std::path::Path;
use std::process::{Command, Output};

use hemisphere_rc::dataset::read_csv;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hemisphere-rc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn simulate_default_model_writes_500_rows_deterministically() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let o = bin(&["simulate", "--out", a.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let o = bin(&["simulate", "--out", b.to_str().unwrap()]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text.lines().next(), Some("y,x0,x1,x2"));
    assert_eq!(text.lines().count(), 501);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());

    let c = dir.path().join("c.csv");
    bin(&["simulate", "--seed", "7", "--out", c.to_str().unwrap()]);
    assert_ne!(std::fs::read(&a).unwrap(), std::fs::read(&c).unwrap());
}

#[test]
fn zero_sample_size_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "cfg.toml", "[dgp]\nn = 0\n");
    let out = dir.path().join("x.csv");
    let o = bin(&["simulate", "--config", &cfg, "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("config error"));
}

#[test]
fn unwritable_output_exits_two() {
    let o = bin(&["simulate", "--out", "/nonexistent-dir/x.csv"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn estimate_pipeline_is_pure_and_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("data.csv");
    let cfg = write(dir.path(), "cfg.toml", "seed = 3\n[dgp]\nn = 300\n[grid]\nresolution = 12\n");
    assert!(bin(&["simulate", "--config", &cfg, "--out", data.to_str().unwrap()]).status.success());
    let fit1 = dir.path().join("fit1.csv");
    let fit2 = dir.path().join("fit2.csv");
    for fit in [&fit1, &fit2] {
        let o = bin(&[
            "estimate",
            "--config",
            &cfg,
            "--data",
            data.to_str().unwrap(),
            "--out",
            fit.to_str().unwrap(),
            "--threads",
            "2",
        ]);
        assert!(o.status.success(), "{}", stderr(&o));
    }
    let text = std::fs::read_to_string(&fit1).unwrap();
    assert_eq!(text.lines().next(), Some("b0,b1,b2,fbeta"));
    assert_eq!(text.lines().count(), 1 + 12 * 24);
    assert_eq!(std::fs::read(&fit1).unwrap(), std::fs::read(&fit2).unwrap());
    for line in text.lines().skip(1) {
        let v: f64 = line.rsplit(',').next().unwrap().parse().unwrap();
        assert!(v >= 0.0);
    }
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("fit1.csv.report.json")).unwrap()).unwrap();
    assert_eq!(report["n"], 300);
    assert_eq!(report["truncation"], 3);
    assert!(report["diagnostic"]["hemisphere_mass_plus"].as_f64().unwrap() > 0.0);
    assert_eq!(report["config"]["seed"], 3);

    let res = dir.path().join("fit3.csv");
    let o = bin(&[
        "estimate",
        "--config",
        &cfg,
        "--grid-res",
        "8",
        "--data",
        data.to_str().unwrap(),
        "--out",
        res.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert_eq!(std::fs::read_to_string(&res).unwrap().lines().count(), 1 + 8 * 16);
}

#[test]
fn estimate_runs_on_the_circle() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "cfg.toml", "[dgp]\nd = 2\nn = 200\n[grid]\nresolution = 90\n");
    let data = dir.path().join("d2.csv");
    assert!(bin(&["simulate", "--config", &cfg, "--out", data.to_str().unwrap()]).status.success());
    let fit = dir.path().join("fit.csv");
    let o = bin(&["estimate", "--config", &cfg, "--data", data.to_str().unwrap(), "--out", fit.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = std::fs::read_to_string(&fit).unwrap();
    assert_eq!(text.lines().next(), Some("b0,b1,fbeta"));
    assert_eq!(text.lines().count(), 91);
}

#[test]
fn malformed_row_reports_its_line() {
    let dir = tempfile::tempdir().unwrap();
    let data = write(dir.path(), "bad.csv", "y,x0,x1,x2\n1,1,0,0\n0,0.6,0.8,0\n1,0.6,oops,0\n");
    let out = dir.path().join("fit.csv");
    let o = bin(&["estimate", "--data", &data, "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("bad.csv:4"), "{}", stderr(&o));
}

#[test]
fn off_sphere_rows_are_renormalized_with_warning() {
    let dir = tempfile::tempdir().unwrap();
    let mut text = String::from("y,x0,x1\n");
    for k in 0..40 {
        let a = -1.4 + 2.8 * k as f64 / 39.0;
        text.push_str(&format!("{},{},{}\n", (k % 3 == 0) as u8, 2.0 * a.cos(), 2.0 * a.sin()));
    }
    let data = write(dir.path(), "scaled.csv", &text);
    let cfg = write(dir.path(), "cfg.toml", "[grid]\nresolution = 16\n");
    let out = dir.path().join("fit.csv");
    let o = bin(&["estimate", "--config", &cfg, "--data", &data, "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stderr(&o).contains("warning"));
}

#[test]
fn diagnose_prints_report_and_rejects_empty_file() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("data.csv");
    assert!(bin(&["simulate", "--out", data.to_str().unwrap()]).status.success());
    let json = dir.path().join("diag.json");
    let o = bin(&["diagnose", "--data", data.to_str().unwrap(), "--out", json.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = String::from_utf8_lossy(&o.stdout);
    assert!(text.contains("violation score"));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert!(v["violation_score"].as_f64().unwrap() < v["threshold"].as_f64().unwrap());
    assert_eq!(v["flagged"], false);

    let empty = write(dir.path(), "empty.csv", "");
    let o = bin(&["diagnose", "--data", &empty]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bench_writes_records_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "cfg.toml",
        "[bench]\nsizes = [100, 200]\nreplications = 2\nquadrature_resolution = 16\n",
    );
    let out = dir.path().join("bench.csv");
    let o = bin(&["bench", "--config", &cfg, "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().next(), Some("n,replication,truncation,l1,l2,linf"));
    assert_eq!(text.lines().count(), 5);
    let s: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("bench.csv.summary.json")).unwrap()).unwrap();
    assert!(s["slope"].is_number());
    assert_eq!(s["sizes"].as_array().unwrap().len(), 2);

    let single = write(dir.path(), "one.toml", "[bench]\nsizes = [100]\nreplications = 2\nquadrature_resolution = 16\n");
    let out = dir.path().join("one.csv");
    assert!(bin(&["bench", "--config", &single, "--out", out.to_str().unwrap()]).status.success());
    let s: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("one.csv.summary.json")).unwrap()).unwrap();
    assert!(s.get("slope").is_none());
}

#[test]
fn simulated_csv_round_trips_through_the_parser() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("data.csv");
    assert!(bin(&["simulate", "--out", data.to_str().unwrap()]).status.success());
    let parsed = read_csv(&data).unwrap();
    let again = hemisphere_rc::dataset::to_csv(&parsed.sample);
    assert_eq!(again, std::fs::read_to_string(&data).unwrap());
}
