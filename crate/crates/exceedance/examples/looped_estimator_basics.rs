//! The censoring-corrected mean exceedance time on a small series.
//!
//! Scanning forward from every start index, the waiting time until the
//! series exceeds a threshold is observed exactly for early starts but
//! censored near the end of the record. The estimator closes the record
//! into a ring — the scan wraps around — so every start resolves as long
//! as the path exceeds the threshold at least once, and the average over
//! starts stays an unbiased ergodic average. Run with
//! `cargo run --example looped_estimator_basics`.

use exceedance::hitting::mean_exceedance_estimate;
use exceedance::threshold::ThresholdSchedule;
use exceedance::TimeSeries;

fn main() -> exceedance::Result<()> {
    // A record with a single spike near the front: naive forward scans
    // censor every start after index 2.
    let series = TimeSeries::new(vec![1.0, 4.0, 9.0, 2.0, 1.0, 3.0, 2.0, 1.0])?;
    let t_len = series.len() as f64;

    println!("series: {:?}", series.values());
    println!("{:>9} {:>12} {:>20}", "threshold", "mean wait", "(T-1)/2 ceiling");
    for b in [0.5, 3.5, 8.0] {
        let schedule = ThresholdSchedule::constant(b);
        let tau = mean_exceedance_estimate(&series, &schedule)?;
        println!("{b:>9} {tau:>12.4} {:>20.1}", (t_len - 1.0) / 2.0);
    }

    // Above the global maximum nothing exceeds: the mean is infinite and
    // the estimator says so instead of inventing a number.
    let none = mean_exceedance_estimate(&series, &ThresholdSchedule::constant(100.0))?;
    println!("threshold above the maximum: estimate = {none}");

    // The wrap-around makes the average of the looped waits a hard
    // invariant: it can never exceed (T-1)/2, however the exceedances
    // are placed. That ceiling is the built-in censoring alarm — an
    // estimate near it means the record is too short for the threshold.
    Ok(())
}
