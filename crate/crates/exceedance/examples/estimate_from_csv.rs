//! Threshold curve from a CSV file: the library side of the `estimate`
//! subcommand.
//!
//! Writes a small hourly-style record to disk, ingests one column back,
//! and runs the experiment pipeline at several thresholds, printing the
//! report as CSV. Swap the temp file for a real data path to use this
//! on actual observations. Run with
//! `cargo run --example estimate_from_csv`.

use exceedance::experiments::{
    emit_curves, ingest_csv, run_estimate, ExperimentConfig, ExperimentKind, HeaderPolicy,
    OutputFormat,
};
use exceedance::models::ProcessModel;

fn main() -> exceedance::Result<()> {
    // Fake "observations": an AR(1) path through a Weibull marginal,
    // written with a header row like a typical export.
    let model = ProcessModel::from_json(
        r#"{
            "kind": "gauss-ar1",
            "params": {"theta": 0.027},
            "marginal": {"period": 1, "lambda": [11.05], "k": [2.19]}
        }"#,
    )?;
    let path = std::env::temp_dir().join("exceedance_example_observations.csv");
    let series = model.simulate_observed(50_000, 21)?;
    let mut text = String::from("wind_speed\n");
    for v in series.values() {
        text.push_str(&v.to_string());
        text.push('\n');
    }
    std::fs::write(&path, text)?;

    // Ingest column 0; `Auto` drops the header row because it does not
    // parse as a number.
    let observations = ingest_csv(&path, 0, HeaderPolicy::Auto)?;
    println!("ingested {} observations from {}", observations.len(), path.display());

    let mut config = ExperimentConfig::default_for(ExperimentKind::Estimate);
    config.b_grid = vec![15.0, 18.0, 21.0, 24.0];
    config.b_unit = "m/s".into();
    let report = run_estimate(&config, &observations)?;

    let stdout = std::io::stdout();
    emit_curves(&report, OutputFormat::Csv, &mut stdout.lock())?;
    std::fs::remove_file(&path)?;
    Ok(())
}
