//! End-to-end runs of the `sinekan` binary.

use sinekan::experiments::read_csv;
use sinekan::metrics::{model_flops, CostModel};
use sinekan::models::ModelSpec;
use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sinekan"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn outdir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("sinekan-cli-{}-{tag}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn assert_success(out: &Output) {
    assert!(
        out.status.success(),
        "exit {:?}\nstderr: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn bench1d_single_cell_is_deterministic() {
    let d1 = outdir("b1-first");
    let d2 = outdir("b1-second");
    for d in [&d1, &d2] {
        let out = run(&[
            "bench1d",
            "--funcs", "f1",
            "--grids", "50",
            "--models", "fourier:K=8",
            "--no-plots",
            "--out", d.to_str().unwrap(),
        ]);
        assert_success(&out);
    }
    let a = fs::read(d1.join("bench1d.csv")).unwrap();
    let b = fs::read(d2.join("bench1d.csv")).unwrap();
    assert_eq!(a, b, "same config must write identical bytes");

    let rows = read_csv(&mut a.as_slice()).unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0].func, "f1");
    assert_eq!(rows[0].model_spec, "fourier:K=8");
    assert_eq!(rows[0].grid_n, 50);
    assert_eq!(rows[0].starts, 1);
    assert!(rows[0].rel_l2.is_finite());
}

#[test]
fn bench1d_emits_one_chart_per_function() {
    let d = outdir("b1-plots");
    let out = run(&[
        "bench1d",
        "--funcs", "f2,f5",
        "--grids", "20,40",
        "--models", "fourier:K=4",
        "--out", d.to_str().unwrap(),
    ]);
    assert_success(&out);
    for f in ["f2", "f5"] {
        let svg = fs::read_to_string(d.join(format!("bench1d_{f}.svg"))).unwrap();
        assert!(svg.starts_with("<svg "));
        assert!(svg.contains("fourier:K=4"), "legend names the model");
        assert!(svg.contains("relative L2 error"));
    }
}

#[test]
fn bench2d_flops_column_matches_the_cost_model() {
    let d = outdir("b2");
    let out = run(&[
        "bench2d",
        "--funcs", "rosenbrock",
        "--models", "fourier2d",
        "--budgets", "25",
        "--grid-n", "12",
        "--no-plots",
        "--out", d.to_str().unwrap(),
    ]);
    assert_success(&out);
    let rows = read_csv(&mut fs::File::open(d.join("bench2d.csv")).unwrap()).unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0].param_count, 25);
    let spec: ModelSpec = rows[0].model_spec.parse().unwrap();
    let expect = model_flops(&spec.shape(2), &CostModel::default());
    assert_eq!(rows[0].flops, expect);
}

#[test]
fn bench2d_charts_cover_both_budget_views() {
    let d = outdir("b2-plots");
    let out = run(&[
        "bench2d",
        "--funcs", "rosenbrock",
        "--models", "fourier2d,mlp:relu",
        "--budgets", "25,49",
        "--grid-n", "10",
        "--out", d.to_str().unwrap(),
    ]);
    assert_success(&out);
    for suffix in ["params", "flops"] {
        let svg = fs::read_to_string(d.join(format!("bench2d_rosenbrock_{suffix}.svg"))).unwrap();
        assert!(svg.contains("fourier2d"));
        assert!(svg.contains("mlp:relu"));
    }
}

#[test]
fn construct_const1_is_nearly_exact() {
    let d = outdir("c-const1");
    let out = run(&["construct", "--func", "const1", "--N", "4", "--out", d.to_str().unwrap()]);
    assert_success(&out);
    let text = fs::read_to_string(d.join("construct_const1_N4.json")).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let sup = v["sup_error"].as_f64().unwrap();
    assert!(sup < 1e-8, "sup = {sup}");
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("certified bound"));
}

#[test]
fn construct_f1_certificate_is_complete() {
    let d = outdir("c-f1");
    let out = run(&["construct", "--func", "f1", "--N", "12", "--out", d.to_str().unwrap()]);
    assert_success(&out);
    let text = fs::read_to_string(d.join("construct_f1_N12.json")).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();

    let phases: Vec<f64> = v["construction"]["phases"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p.as_f64().unwrap())
        .collect();
    assert_eq!(phases.len(), 13);
    let step = phases[1] - phases[0];
    for w in phases.windows(2) {
        assert!((w[1] - w[0] - step).abs() < 1e-12, "phases are linearly spaced");
    }

    for key in ["bernstein_term", "taylor_term", "solve_term", "total"] {
        let val = v["construction"]["certificate"][key].as_f64().unwrap();
        assert!(val.is_finite(), "{key} must be finite");
    }
    assert!(v["sup_error"].as_f64().unwrap().is_finite());
    assert_eq!(v["seed"].as_u64().unwrap(), 42);
}

#[test]
fn construct_rejects_degree_seventeen() {
    let out = run(&["construct", "--func", "const1", "--N", "17"]);
    assert!(!out.status.success());
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("17"), "usage error names the bad value: {stderr}");
}

#[test]
fn flops_prints_the_requested_weights() {
    let out = run(&["flops"]);
    assert_success(&out);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["add"].as_f64().unwrap(), 1.0);
    assert_eq!(v["mul"].as_f64().unwrap(), 1.0);
    assert_eq!(v["relu"].as_f64().unwrap(), 1.5);
    assert_eq!(v["sin"].as_f64().unwrap(), 12.0);

    let out = run(&["flops", "--cost-model", "torchlike"]);
    assert_success(&out);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["relu"].as_f64().unwrap(), 1.0);
    assert_eq!(v["sin"].as_f64().unwrap(), 3.5);
}

#[test]
fn unknown_function_fails_with_a_diagnostic() {
    let d = outdir("bad-func");
    let out = run(&[
        "bench1d",
        "--funcs", "f9",
        "--grids", "10",
        "--models", "fourier:K=2",
        "--no-plots",
        "--out", d.to_str().unwrap(),
    ]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("f9"));
}
