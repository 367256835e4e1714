//! The map between latent Gaussian correlation and observed correlation.
//!
//! A Gaussian copula process observed through a Weibull marginal has a
//! different autocorrelation on each scale: the monotone marginal map
//! shrinks correlations. The exact map is a two-dimensional normal
//! expectation, evaluated here by quadrature; a two-parameter closed
//! form `((1 + xi*rho)^upsilon - 1) / ((1 + xi)^upsilon - 1)` fits it to
//! a few parts in a thousand and inverts algebraically, which is what
//! turns an observed ACF into a latent one during calibration. Run with
//! `cargo run --release --example correlation_transform`.

use exceedance::calibration::{correlation_transform_numeric, fit_transform_params};
use exceedance::dist::Weibull;

fn main() -> exceedance::Result<()> {
    let weibull = Weibull::new(11.05, 2.19)?;
    // Model-implied observed moments, computed from the marginal itself.
    let mean = weibull.mean();
    let sd = weibull.variance().sqrt();
    println!("marginal: Weibull(scale 11.05, shape 2.19), mean {mean:.3}, sd {sd:.3}");

    // Fit the closed form on an interior grid.
    let grid: Vec<f64> = (1..40).map(|i| i as f64 / 40.0).collect();
    let fit = fit_transform_params(&weibull, mean, sd, &grid)?;
    println!(
        "fitted closed form: xi = {:.4}, upsilon = {:.4} (max |error| {:.2e})\n",
        fit.params.xi(),
        fit.params.upsilon(),
        fit.max_abs_error
    );

    println!("{:>10} {:>12} {:>12} {:>10}", "latent", "exact", "closed form", "error");
    for rho in [0.1, 0.3, 0.5, 0.7, 0.9, 0.99] {
        let exact = correlation_transform_numeric(rho, &weibull, mean, sd, 40)?;
        let approx = fit.params.forward(rho);
        println!(
            "{rho:>10.2} {exact:>12.6} {approx:>12.6} {:>10.1e}",
            approx - exact
        );
    }

    // The inverse is what calibration actually uses: observed lag-1
    // correlation in, latent lag-1 correlation out.
    let observed = 0.95;
    let latent = fit.params.inverse(observed);
    println!("\nobserved correlation {observed} comes from latent correlation {latent:.4}");
    println!("round trip: {:.6}", fit.params.forward(latent));
    Ok(())
}
