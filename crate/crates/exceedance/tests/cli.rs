//! End-to-end checks of the batch binary: exit codes, output formats,
//! configuration layering, and byte determinism across worker counts.

use std::path::Path;
use std::process::{Command, Output};

use exceedance::experiments::parse_curves_csv;

fn exceedance() -> Command {
    Command::new(env!("CARGO_BIN_EXE_exceedance"))
}

fn run(args: &[&str]) -> Output {
    exceedance()
        .args(args)
        .output()
        .expect("binary should spawn")
}

fn stdout_text(out: &Output) -> String {
    assert!(
        out.status.success(),
        "command failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).expect("stdout should be UTF-8")
}

fn write_series(path: &Path, values: &[f64]) {
    let mut text = String::new();
    for v in values {
        text.push_str(&v.to_string());
        text.push('\n');
    }
    std::fs::write(path, text).unwrap();
}

#[test]
fn simulate_then_estimate_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let sim = dir.path().join("sim.csv");
    let out = run(&[
        "simulate",
        "--model",
        "ar1",
        "--series-length",
        "30000",
        "--seed",
        "11",
        "--output",
        sim.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(
        std::fs::read_to_string(&sim).unwrap().lines().count(),
        30000
    );

    let est = run(&[
        "estimate",
        "--input",
        sim.to_str().unwrap(),
        "--b-grid",
        "15,20",
    ]);
    let curves = parse_curves_csv(&stdout_text(&est)).unwrap();
    assert_eq!(curves.len(), 1);
    let rows = &curves[0].rows;
    assert_eq!(rows.len(), 2);
    // Wait times grow with the threshold, and every row carries an
    // interval around its point.
    assert!(rows[1].point.unwrap() > rows[0].point.unwrap());
    for row in rows {
        let (lo, hi) = (row.ci_lo.unwrap(), row.ci_hi.unwrap());
        let p = row.point.unwrap();
        assert!(lo <= p && p <= hi);
    }
}

#[test]
fn exit_codes_follow_the_error_taxonomy() {
    // Missing input file: data error.
    let out = run(&["estimate", "--input", "/definitely/not/here.csv"]);
    assert_eq!(out.status.code(), Some(3));
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains("not/here.csv"), "stderr should name the file");

    // Invalid parameter value: configuration error.
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("d.csv");
    write_series(&data, &[1.0, 2.0, 3.0, 4.0]);
    let out = run(&[
        "estimate",
        "--input",
        data.to_str().unwrap(),
        "--gamma",
        "1.5",
    ]);
    assert_eq!(out.status.code(), Some(2));

    // Unknown flag: usage error from the parser, same class as config.
    let out = run(&["estimate", "--no-such-flag"]);
    assert_eq!(out.status.code(), Some(2));

    // Threshold that nothing exceeds: numeric failure (no finite rows
    // would make the report empty, reported as an estimation problem).
    let out = run(&[
        "bias-study",
        "--series-length",
        "200",
        "--replications",
        "2",
        "--oracle-length",
        "1000",
        "--b-grid",
        "900",
    ]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn config_file_overrides_flags() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("config.json");
    std::fs::write(&config, r#"{"b-grid": [1.25], "replications": 3}"#).unwrap();
    let out = run(&[
        "bias-study",
        "--series-length",
        "1000",
        "--oracle-length",
        "20000",
        "--rho",
        "0.7",
        "--replications",
        "5",
        "--b-grid",
        "0.5,1.0",
        "--config",
        config.to_str().unwrap(),
    ]);
    let curves = parse_curves_csv(&stdout_text(&out)).unwrap();
    let rows = &curves[0].rows;
    assert_eq!(rows.len(), 1, "config grid should replace the flag grid");
    assert_eq!(rows[0].b, 1.25);
    assert_eq!(rows[0].n_finite, 3, "config replications should win");
}

#[test]
fn malformed_config_is_a_config_error_naming_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("config.json");
    std::fs::write(&config, r#"{"no-such-field": 1}"#).unwrap();
    let out = run(&["bias-study", "--config", config.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains("config.json"));
    assert!(msg.contains("no-such-field"));
}

#[test]
fn reports_do_not_depend_on_worker_count() {
    let args = [
        "bias-study",
        "--series-length",
        "1000",
        "--replications",
        "8",
        "--oracle-length",
        "20000",
        "--rho",
        "0.7",
        "--b-grid",
        "0.5,1.5",
    ];
    let single = exceedance()
        .args(args)
        .env("EXCEEDANCE_WORKERS", "1")
        .output()
        .unwrap();
    let several = exceedance()
        .args(args)
        .env("EXCEEDANCE_WORKERS", "4")
        .output()
        .unwrap();
    assert!(single.status.success() && several.status.success());
    assert_eq!(single.stdout, several.stdout);
}

#[test]
fn json_format_carries_metadata() {
    let out = run(&[
        "bias-study",
        "--series-length",
        "1000",
        "--replications",
        "2",
        "--oracle-length",
        "20000",
        "--rho",
        "0.7",
        "--b-grid",
        "0.5",
        "--format",
        "json",
    ]);
    let doc: serde_json::Value = serde_json::from_str(&stdout_text(&out)).unwrap();
    assert_eq!(doc["metadata"]["replications"], 2);
    assert_eq!(doc["metadata"]["seed"], 1729);
    assert!(doc["metadata"]["config_hash"].as_str().unwrap().len() == 64);
    assert_eq!(doc["curves"][0]["rows"][0]["b"], 0.5);
}

#[test]
fn fixtures_file_changes_the_generating_model() {
    let dir = tempfile::tempdir().unwrap();
    let fixtures = dir.path().join("fixtures.json");
    // Double the Weibull scale; an independent path must shift up.
    std::fs::write(
        &fixtures,
        r#"{
          "weibull-scale": 22.1, "weibull-shape": 2.19,
          "observed-mean": 9.8, "observed-sd": 4.71,
          "acf": {"zeta": 10.23, "eta": 1.63, "kappa": 1.38},
          "seasonal-acf": {"zeta": 10.65, "eta": 1.56, "kappa": 0.83},
          "transform": {"xi": 0.065, "upsilon": 0.373},
          "ar1-theta": 0.027, "t-nu": 13.4, "t-rho": 0.964
        }"#,
    )
    .unwrap();
    let base = stdout_text(&run(&[
        "simulate",
        "--model",
        "iid",
        "--series-length",
        "2000",
        "--seed",
        "5",
    ]));
    let scaled = stdout_text(&run(&[
        "simulate",
        "--model",
        "iid",
        "--series-length",
        "2000",
        "--seed",
        "5",
        "--fixtures",
        fixtures.to_str().unwrap(),
    ]));
    let mean = |text: &str| {
        let v: Vec<f64> = text.lines().map(|l| l.parse().unwrap()).collect();
        v.iter().sum::<f64>() / v.len() as f64
    };
    let ratio = mean(&scaled) / mean(&base);
    assert!(
        (ratio - 2.0).abs() < 1e-9,
        "doubling the scale fixture should exactly double the path, got ratio {ratio}"
    );
}

#[test]
fn seasonal_estimate_warns_on_short_series() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("short.csv");
    write_series(&data, &(0..100).map(|i| 1.0 + (i % 7) as f64).collect::<Vec<_>>());
    let out = run(&[
        "estimate",
        "--seasonal",
        "--season-period",
        "60",
        "--input",
        data.to_str().unwrap(),
        "--b-grid",
        "3",
    ]);
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(
        msg.contains("below twice the season period"),
        "stderr: {msg}"
    );
    assert!(msg.contains("not an integer multiple"), "stderr: {msg}");
}

#[test]
fn calibrate_emits_one_json_object_per_fit() {
    let dir = tempfile::tempdir().unwrap();
    let sim = dir.path().join("sim.csv");
    assert!(run(&[
        "simulate",
        "--model",
        "ar1",
        "--series-length",
        "20000",
        "--seed",
        "13",
        "--output",
        sim.to_str().unwrap(),
    ])
    .status
    .success());
    let out = run(&["calibrate", "--input", sim.to_str().unwrap()]);
    let doc: serde_json::Value = serde_json::from_str(&stdout_text(&out)).unwrap();
    for key in ["weibull", "moments", "acf", "transform", "ar1"] {
        assert!(doc.get(key).is_some(), "missing section {key}");
        assert!(doc[key]["params"].is_object());
    }
    let theta = doc["ar1"]["params"]["theta"].as_f64().unwrap();
    assert!(
        (0.015..0.045).contains(&theta),
        "recovered rate {theta} far from the generating 0.027"
    );
}
