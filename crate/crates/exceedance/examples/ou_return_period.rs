//! Closed-form mean exceedance times for the Ornstein-Uhlenbeck
//! skeleton, three ways.
//!
//! For the unit-variance OU process sampled on a unit grid with mean
//! reversion `theta`, the mean exceedance time above a standardized
//! level `z_b` has an exact series form, an equivalent single-integral
//! form, and a large-`z_b` asymptotic `sqrt(2*pi)/theta * Phi(z_b)/
//! phi(z_b) - 1/(2*Phi(-z_b))`. The first two agree to many digits and
//! bracket the working range; the asymptotic shows where it earns its
//! name. Run with `cargo run --release --example ou_return_period`.

use exceedance::dist::Weibull;
use exceedance::models::{ou_mean_exceedance, OuMethod};

fn main() -> exceedance::Result<()> {
    let theta = 0.027;
    println!("mean reversion theta = {theta} per step\n");
    println!(
        "{:>6} {:>16} {:>16} {:>16} {:>12}",
        "z_b", "series", "integral", "asymptotic", "asym error"
    );
    for z_b in [1.0, 2.0, 3.0, 4.0, 5.0] {
        let series = ou_mean_exceedance(theta, z_b, OuMethod::Series, 1e-10)?;
        let integral = ou_mean_exceedance(theta, z_b, OuMethod::Integral, 1e-10)?;
        let asymptotic = ou_mean_exceedance(theta, z_b, OuMethod::Asymptotic, 1e-10)?;
        println!(
            "{z_b:>6.1} {series:>16.4} {integral:>16.4} {asymptotic:>16.4} {:>11.2}%",
            (asymptotic / series - 1.0) * 100.0
        );
    }

    // On the observed scale: map a wind-speed level through the Weibull
    // marginal to its standardized normal level, then into a return
    // period in years of hourly steps.
    let weibull = Weibull::new(11.05, 2.19)?;
    let hours_per_year = 8766.0;
    println!("\n{:>10} {:>8} {:>18}", "b (m/s)", "z_b", "return time (yr)");
    for b in [25.0, 30.0, 35.0, 40.0] {
        let z_b = weibull.to_normal(b);
        let tau = ou_mean_exceedance(theta, z_b, OuMethod::Series, 1e-10)?;
        println!("{b:>10.0} {z_b:>8.3} {:>18.3}", tau / hours_per_year);
    }
    println!(
        "\nthe series/integral pair is the reference the simulation models \
         are judged against at these levels"
    );
    Ok(())
}
