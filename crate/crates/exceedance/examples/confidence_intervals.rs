//! CLT confidence intervals for the mean exceedance time, checked by
//! replication.
//!
//! `estimate_return_time` pairs the looped point estimate with a
//! large-sample interval built from the autocovariance of the per-start
//! waiting times (waits from nearby starts overlap, so the naive IID
//! variance would be far too small). This example simulates many
//! independent AR(1) records, estimates on each, and counts how often
//! the 95% interval covers the long-run truth. Run with
//! `cargo run --release --example confidence_intervals`.

use exceedance::models::simulate_ar1;
use exceedance::threshold::ThresholdSchedule;
use exceedance::uncertainty::{estimate_return_time, EstimateOptions};

fn main() -> exceedance::Result<()> {
    let rho = 0.7;
    let b = 2.0;
    let t_len = 20_000;
    let replications: u64 = 60;

    // A long single run stands in for the exact mean.
    let oracle_path = simulate_ar1(rho, 2_000_000, 9_000)?;
    let schedule = ThresholdSchedule::constant(b);
    let truth =
        exceedance::hitting::mean_exceedance_estimate(&oracle_path, &schedule)?;
    println!("long-run mean wait at b = {b}: {truth:.2} steps");

    let options = EstimateOptions::default(); // gamma = 0.95
    let mut covered = 0;
    for r in 0..replications {
        let path = simulate_ar1(rho, t_len, 10_000 + r)?;
        let est = estimate_return_time(&path, &schedule, &options)?;
        let hit = est.ci.0 <= truth && truth <= est.ci.1;
        covered += usize::from(hit);
        if r < 5 {
            println!(
                "replication {r}: point {:.2}, 95% interval [{:.2}, {:.2}], lag window {}{}",
                est.point,
                est.ci.0,
                est.ci.1,
                est.max_lag_used,
                if hit { "" } else { "  <- missed" },
            );
        }
    }
    println!(
        "covered the long-run mean in {covered}/{replications} replications \
         (expect about {:.0})",
        0.95 * replications as f64
    );
    Ok(())
}
