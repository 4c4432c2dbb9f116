//! Caps and floating bodies of the planar β-distribution.

use super::quad::integrate;
use super::sphere::beta_constant;
use crate::error::{Error, Result};

fn check(beta: f64, r: f64) -> Result<()> {
    if !(beta > -1.0) {
        return Err(Error::input(format!("beta must exceed -1, got {beta}")));
    }
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::input(format!("radius must lie in (0, 1), got {r}")));
    }
    Ok(())
}

/// `arccos(1 - t)` without cancellation for small `t`.
fn acos_one_minus(t: f64) -> f64 {
    2.0 * (0.5 * t).sqrt().asin()
}

/// `2C ∫_R^1 r (1-r^2)^β arccos(r) dr`, the cap integral whose leading term
/// is `2^{β+5/2} C/(2β+3) (1-R)^{β+3/2}`.
///
/// Evaluated after `r = 1 - h u^2` with `h = 1 - R`, which makes the
/// integrand smooth at `r = 1`.
pub fn cap_measure(beta: f64, r: f64) -> Result<f64> {
    check(beta, r)?;
    let h = 1.0 - r;
    let c = beta_constant(beta);
    let f = |u: f64| {
        let t = h * u * u;
        let rr = 1.0 - t;
        2.0 * c * rr * (t * (2.0 - t)).powf(beta) * acos_one_minus(t) * 2.0 * h * u
    };
    Ok(integrate(f, 0.0, 1.0, 0.0, 1e-13))
}

/// β-measure of the cap `{x : x_1 >= R}`: `2C ∫_R^1 r (1-r^2)^β arccos(R/r) dr`.
pub fn exact_cap_measure(beta: f64, r: f64) -> Result<f64> {
    check(beta, r)?;
    let h = 1.0 - r;
    let c = beta_constant(beta);
    let f = |u: f64| {
        let t = h * u * u;
        let rr = 1.0 - t;
        // 1 - R/r = (r - R)/r = h (1 - u^2) / r
        let gap = h * (1.0 - u * u) / rr;
        2.0 * c * rr * (t * (2.0 - t)).powf(beta) * acos_one_minus(gap) * 2.0 * h * u
    };
    Ok(integrate(f, 0.0, 1.0, 0.0, 1e-13))
}

/// `2^{β+5/2} C/(2β+3) (1-R)^{β+3/2}`.
pub fn cap_asymptotic(beta: f64, r: f64) -> f64 {
    2f64.powf(beta + 2.5) * beta_constant(beta) / (2.0 * beta + 3.0) * (1.0 - r).powf(beta + 1.5)
}

/// The `R` with `cap_measure(beta, R) = eps`, by bisection to `1e-12`.
pub fn floating_radius(beta: f64, eps: f64) -> Result<f64> {
    let (mut lo, mut hi) = (1e-9, 1.0 - 1e-15);
    let at_lo = cap_measure(beta, lo)?;
    if !(eps > 0.0) || eps >= at_lo {
        return Err(Error::input(format!("no cap of measure {eps}: the largest is {at_lo:.6}")));
    }
    if eps <= cap_measure(beta, hi)? {
        return Err(Error::input(format!("cap measure {eps} is below double precision resolution")));
    }
    // Bisection in h = 1 - R on a log scale first, then linearly.
    while hi - lo > 1e-12 {
        let mid = if (1.0 - hi) < 1e-3 * (1.0 - lo) { 1.0 - ((1.0 - lo) * (1.0 - hi)).sqrt() } else { 0.5 * (lo + hi) };
        if cap_measure(beta, mid)? > eps {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `μ(B \ F_ε) = πC/(β+1) (1 - R_ε^2)^{β+1}`.
pub fn outside_measure(beta: f64, eps: f64) -> Result<f64> {
    let r = floating_radius(beta, eps)?;
    Ok(std::f64::consts::PI * beta_constant(beta) / (beta + 1.0) * (1.0 - r * r).powf(beta + 1.0))
}

/// `floor(π / arccos R_ε)`: caps of half-angle `arccos R_ε` with pairwise
/// disjoint interiors around the circle.
pub fn max_independent_caps(beta: f64, eps: f64) -> Result<u64> {
    let r = floating_radius(beta, eps)?;
    Ok((std::f64::consts::PI / acos_one_minus(1.0 - r)).floor() as u64)
}
