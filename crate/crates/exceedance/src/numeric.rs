//! Numerical toolbox: special-function wrappers, quadrature, root finding
//! and derivative-free minimization.
//!
//! Distribution functions are thin layers over `statrs` primitives
//! (`erfc`, `ln_gamma`, regularized incomplete beta) arranged for tail
//! accuracy: survival functions never go through `1 - cdf`, quantiles are
//! solved on whichever tail is small, and `ln_normal_sf` switches to an
//! asymptotic expansion where `erfc` underflows. Quadrature rules are
//! generated on the fly by Newton iteration on the orthonormal recurrences
//! (no hard-coded tables), which keeps them checkable: the tests integrate
//! known moments to near machine precision.
//!
//! Domain violations in these low-level routines are programmer errors and
//! panic via `assert!`; fallible numerical outcomes (no bracket, no
//! convergence) return [`Error::Numeric`](crate::error::Error::Numeric).

use crate::error::{Error, Result};
use statrs::function::beta::beta_reg;
use statrs::function::erf::erfc;
use statrs::function::gamma::ln_gamma;

/// √(2π), correctly rounded.
pub const SQRT_2PI: f64 = 2.5066282746310002;

// ---- normal distribution ----

/// Standard normal density.
pub fn normal_pdf(x: f64) -> f64 {
    (-0.5 * x * x).exp() / SQRT_2PI
}

/// Standard normal CDF via `erfc`, accurate in both tails.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * erfc(-x / std::f64::consts::SQRT_2)
}

/// Standard normal survival function `P(Z > x)`; never computed as
/// `1 - cdf`, so it keeps full relative accuracy for large `x`.
pub fn normal_sf(x: f64) -> f64 {
    0.5 * erfc(x / std::f64::consts::SQRT_2)
}

/// `ln P(Z > x)`, valid far beyond the underflow point of [`normal_sf`].
///
/// Below `x = 30` this is the log of the erfc form; above it uses the
/// asymptotic series `ln sf = -x²/2 - ln(x√(2π)) + ln(1 - 1/x² + 3/x⁴ - …)`
/// whose truncation error is below 1e-13 at the switch point.
pub fn ln_normal_sf(x: f64) -> f64 {
    if x <= 30.0 {
        normal_sf(x).ln()
    } else {
        let x2 = x * x;
        let series = 1.0 - 1.0 / x2 + 3.0 / (x2 * x2) - 15.0 / (x2 * x2 * x2)
            + 105.0 / (x2 * x2 * x2 * x2);
        -0.5 * x2 - (x * SQRT_2PI).ln() + series.ln()
    }
}

/// Standard normal quantile.
///
/// Solves on the smaller tail with a rational first guess plus three
/// Newton steps against the erfc-based survival function; relative error
/// stays near machine precision down to `p = 1e-300`.
///
/// Panics if `p` is outside `(0, 1)`.
pub fn normal_quantile(p: f64) -> f64 {
    assert!(p > 0.0 && p < 1.0, "normal_quantile domain: p = {p}");
    if p == 0.5 {
        return 0.0;
    }
    if p < 0.5 {
        -upper_tail_quantile(p)
    } else {
        upper_tail_quantile(1.0 - p)
    }
}

/// Solves `normal_sf(x) = q` for `q ∈ (0, 0.5)`, returning `x > 0`.
fn upper_tail_quantile(q: f64) -> f64 {
    // Rational initial guess (Abramowitz–Stegun 26.2.23, |err| < 4.5e-4).
    let t = (-2.0 * q.ln()).sqrt();
    let mut x = t - (2.30753 + 0.27061 * t) / (1.0 + 0.99229 * t + 0.04481 * t * t);
    for _ in 0..3 {
        let err = normal_sf(x) - q;
        x += err / normal_pdf(x);
    }
    x
}

// ---- Student-t distribution ----

/// Student-t density with `nu` degrees of freedom.
pub fn student_t_pdf(x: f64, nu: f64) -> f64 {
    assert!(nu > 0.0, "student_t_pdf: nu = {nu}");
    let ln = ln_gamma((nu + 1.0) / 2.0)
        - ln_gamma(nu / 2.0)
        - 0.5 * (nu * std::f64::consts::PI).ln()
        - 0.5 * (nu + 1.0) * (1.0 + x * x / nu).ln();
    ln.exp()
}

/// Student-t CDF via the regularized incomplete beta function.
pub fn student_t_cdf(x: f64, nu: f64) -> f64 {
    assert!(nu > 0.0, "student_t_cdf: nu = {nu}");
    if x == 0.0 {
        return 0.5;
    }
    let tail = 0.5 * beta_reg(nu / 2.0, 0.5, nu / (nu + x * x));
    if x > 0.0 {
        1.0 - tail
    } else {
        tail
    }
}

/// Student-t survival function, accurate on the upper tail.
pub fn student_t_sf(x: f64, nu: f64) -> f64 {
    student_t_cdf(-x, nu)
}

/// Student-t quantile with `nu` degrees of freedom.
///
/// Cornish–Fisher initial guess from the normal quantile, then a
/// bracket-safeguarded Newton iteration on the CDF. Panics if `p` is
/// outside `(0, 1)` or `nu ≤ 0`.
pub fn student_t_quantile(p: f64, nu: f64) -> f64 {
    assert!(p > 0.0 && p < 1.0, "student_t_quantile domain: p = {p}");
    assert!(nu > 0.0, "student_t_quantile: nu = {nu}");
    if p == 0.5 {
        return 0.0;
    }
    // Work on the upper tail by symmetry: q = min(p, 1-p).
    let (q, sign) = if p < 0.5 { (p, -1.0) } else { (1.0 - p, 1.0) };
    let z = -normal_quantile(q); // positive upper-tail normal quantile
    let z3 = z * z * z;
    let z5 = z3 * z * z;
    let mut x = z + (z3 + z) / (4.0 * nu) + (5.0 * z5 + 16.0 * z3 + 3.0 * z) / (96.0 * nu * nu);
    // Bracket the root of sf(x) - q (sf is decreasing in x).
    let (mut lo, mut hi) = (0.0_f64, x.max(1.0));
    while student_t_sf(hi, nu) > q {
        lo = hi;
        hi *= 2.0;
        assert!(hi.is_finite(), "student_t_quantile: bracket diverged");
    }
    x = x.clamp(lo, hi);
    for _ in 0..60 {
        let err = student_t_sf(x, nu) - q;
        if err == 0.0 {
            break;
        }
        if err > 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        let step = err / student_t_pdf(x, nu);
        // Converged: leave x alone (a midpoint fallback here would throw
        // away the root the bracket has already pinned to one endpoint).
        if step.abs() <= 1e-14 * (1.0 + x.abs()) {
            break;
        }
        let next = x + step;
        x = if next > lo && next < hi {
            next
        } else {
            0.5 * (lo + hi)
        };
        if (hi - lo) <= 1e-14 * (1.0 + x.abs()) {
            break;
        }
    }
    sign * x
}

// ---- quadrature ----

/// Gauss–Hermite rule: nodes and weights for `∫ f(x) e^{-x²} dx`.
///
/// Generated by Newton iteration on the orthonormal Hermite recurrence
/// with Christoffel-number weights; stable for `n` well past 100.
pub fn gauss_hermite(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "gauss_hermite: need at least one node");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    let mut z = 0.0_f64;
    for i in 0..m {
        // Initial guesses from the largest root downwards (classic ladder:
        // asymptotic for the first two, extrapolation from earlier roots after).
        z = match i {
            0 => {
                let a = (2 * n + 1) as f64;
                a.sqrt() - 1.85575 * a.powf(-1.0 / 6.0)
            }
            1 => z - 1.14 * (n as f64).powf(0.426) / z,
            2 => 1.86 * z - 0.86 * nodes[n - 1],
            3 => 1.91 * z - 0.91 * nodes[n - 2],
            _ => 2.0 * z - nodes[n + 1 - i],
        };
        let (root, christoffel) = hermite_newton(n, z);
        z = root;
        nodes[n - 1 - i] = z;
        nodes[i] = -z;
        weights[n - 1 - i] = christoffel;
        weights[i] = christoffel;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

/// Newton refinement of a Hermite root from guess `z`; returns the root
/// and its Christoffel weight `1 / Σ_{k<n} p_k(root)²`.
fn hermite_newton(n: usize, mut z: f64) -> (f64, f64) {
    for _ in 0..100 {
        // Orthonormal recurrence: p_{k+1} = x p_k √(2/(k+1)) - p_{k-1} √(k/(k+1)).
        let mut p_prev = 0.0_f64;
        let mut p = std::f64::consts::PI.powf(-0.25);
        for k in 0..n {
            let p_next = z * p * (2.0 / (k as f64 + 1.0)).sqrt()
                - p_prev * (k as f64 / (k as f64 + 1.0)).sqrt();
            p_prev = p;
            p = p_next;
        }
        // p = p_n(z), derivative p_n'(z) = √(2n) p_{n-1}(z).
        let dp = (2.0 * n as f64).sqrt() * p_prev;
        let step = p / dp;
        z -= step;
        if step.abs() < 1e-15 * (1.0 + z.abs()) {
            break;
        }
    }
    // Christoffel weight 1 / Σ_{k<n} p_k(z)² at the converged root.
    let mut p_prev = 0.0_f64;
    let mut p = std::f64::consts::PI.powf(-0.25);
    let mut sum_sq = p * p;
    for k in 0..n - 1 {
        let p_next = z * p * (2.0 / (k as f64 + 1.0)).sqrt()
            - p_prev * (k as f64 / (k as f64 + 1.0)).sqrt();
        p_prev = p;
        p = p_next;
        sum_sq += p * p;
    }
    (z, 1.0 / sum_sq)
}

/// Gauss–Hermite rule recast for expectations under the standard normal:
/// `E[f(Z)] ≈ Σ w_i f(x_i)` with `Z ~ N(0,1)`.
pub fn gauss_hermite_normal(n: usize) -> (Vec<f64>, Vec<f64>) {
    let (xs, ws) = gauss_hermite(n);
    let inv_sqrt_pi = 1.0 / std::f64::consts::PI.sqrt();
    (
        xs.iter().map(|x| x * std::f64::consts::SQRT_2).collect(),
        ws.iter().map(|w| w * inv_sqrt_pi).collect(),
    )
}

/// Gauss–Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "gauss_legendre: need at least one node");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Legendre recurrence: (k+1) P_{k+1} = (2k+1) x P_k - k P_{k-1}.
            let mut p_prev = 0.0_f64;
            let mut p = 1.0_f64;
            for k in 0..n {
                let p_next =
                    ((2 * k + 1) as f64 * z * p - k as f64 * p_prev) / (k as f64 + 1.0);
                p_prev = p;
                p = p_next;
            }
            dp = n as f64 * (z * p - p_prev) / (z * z - 1.0);
            let step = p / dp;
            z -= step;
            if step.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = -z;
        nodes[n - 1 - i] = z;
        let w = 2.0 / ((1.0 - z * z) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Integrate `f` over `[a, b]` with a 16-point Gauss–Legendre rule on each
/// of `panels` equal subintervals.
pub fn integrate(mut f: impl FnMut(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    assert!(panels >= 1 && a.is_finite() && b.is_finite());
    let (nodes, weights) = gauss_legendre(16);
    let h = (b - a) / panels as f64;
    let mut acc = 0.0;
    for p in 0..panels {
        let lo = a + p as f64 * h;
        let mid = lo + 0.5 * h;
        let half = 0.5 * h;
        for (x, w) in nodes.iter().zip(&weights) {
            acc += w * half * f(mid + half * x);
        }
    }
    acc
}

// ---- root finding and minimization ----

/// Bisection root of `f` on `[lo, hi]`; requires a sign change.
pub fn bisection(
    mut f: impl FnMut(f64) -> f64,
    mut lo: f64,
    mut hi: f64,
    tol: f64,
    max_iter: usize,
) -> Result<f64> {
    let flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() || !flo.is_finite() || !fhi.is_finite() {
        return Err(Error::Numeric(format!(
            "bisection: no sign change on [{lo}, {hi}] (f = {flo}, {fhi})"
        )));
    }
    let mut flo = flo;
    for _ in 0..max_iter {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 || (hi - lo) < tol {
            return Ok(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Golden-section minimizer of a unimodal `f` on `[lo, hi]`.
///
/// Being comparison-based it cannot localize a smooth minimum more tightly
/// than about `√ε ≈ 1e-8` in relative terms, whatever `tol` asks for.
pub fn golden_section_min(
    mut f: impl FnMut(f64) -> f64,
    mut lo: f64,
    mut hi: f64,
    tol: f64,
) -> f64 {
    const INV_PHI: f64 = 0.6180339887498949;
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while (hi - lo) > tol {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
    }
    0.5 * (lo + hi)
}

/// Nelder–Mead simplex minimizer for small dimensions.
///
/// Returns the best vertex and its value after `max_iter` iterations or
/// once the simplex's value spread drops below `tol`. Restart from the
/// result (or from several starting points) for hard landscapes.
pub fn nelder_mead(
    mut f: impl FnMut(&[f64]) -> f64,
    x0: &[f64],
    step: f64,
    tol: f64,
    max_iter: usize,
) -> (Vec<f64>, f64) {
    let dim = x0.len();
    assert!(dim >= 1, "nelder_mead: empty start point");
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(dim + 1);
    simplex.push((x0.to_vec(), f(x0)));
    for i in 0..dim {
        let mut v = x0.to_vec();
        v[i] += if v[i].abs() > 1e-12 {
            step * v[i].abs()
        } else {
            step
        };
        let fv = f(&v);
        simplex.push((v, fv));
    }
    let (alpha, gamma, rho, sigma) = (1.0, 2.0, 0.5, 0.5);
    for _ in 0..max_iter {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let spread = simplex[dim].1 - simplex[0].1;
        if spread.abs() < tol {
            break;
        }
        let centroid: Vec<f64> = (0..dim)
            .map(|j| simplex[..dim].iter().map(|(v, _)| v[j]).sum::<f64>() / dim as f64)
            .collect();
        let worst = simplex[dim].clone();
        let reflect: Vec<f64> = (0..dim)
            .map(|j| centroid[j] + alpha * (centroid[j] - worst.0[j]))
            .collect();
        let f_r = f(&reflect);
        if f_r < simplex[0].1 {
            let expand: Vec<f64> = (0..dim)
                .map(|j| centroid[j] + gamma * (reflect[j] - centroid[j]))
                .collect();
            let f_e = f(&expand);
            simplex[dim] = if f_e < f_r {
                (expand, f_e)
            } else {
                (reflect, f_r)
            };
        } else if f_r < simplex[dim - 1].1 {
            simplex[dim] = (reflect, f_r);
        } else {
            let contract: Vec<f64> = (0..dim)
                .map(|j| centroid[j] + rho * (worst.0[j] - centroid[j]))
                .collect();
            let f_c = f(&contract);
            if f_c < worst.1 {
                simplex[dim] = (contract, f_c);
            } else {
                let best = simplex[0].0.clone();
                for entry in simplex.iter_mut().skip(1) {
                    for j in 0..dim {
                        entry.0[j] = best[j] + sigma * (entry.0[j] - best[j]);
                    }
                    entry.1 = f(&entry.0);
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    simplex.swap_remove(0)
}
