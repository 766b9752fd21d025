//! Smoothing operators: Moreau envelope and Gaussian convolution, plus the
//! L1 quantities appearing in the Ledoux-type regularization bound.

use crate::error::{Error, Result};
use crate::measures::family::DistributionSpec;
use crate::quad;

/// Moreau envelope of a convex function at `x`:
/// `inf_y { f(y) + |x-y|^2 / (2 eps) }`, searched over
/// `[x - search_radius, x + search_radius]`.
///
/// The objective is convex in `y`, so golden-section search is exact up to
/// the argument tolerance.
pub fn moreau_envelope_1d<F: Fn(f64) -> f64>(
    convex_fn: F,
    epsilon: f64,
    x: f64,
    search_radius: f64,
) -> Result<f64> {
    if !(epsilon > 0.0) {
        return Err(Error::domain("epsilon", epsilon, "epsilon > 0"));
    }
    if !(search_radius > 0.0) {
        return Err(Error::domain("search_radius", search_radius, "search_radius > 0"));
    }
    let obj = |y: f64| convex_fn(y) + (x - y) * (x - y) / (2.0 * epsilon);
    let (_, v) = quad::golden_min(obj, x - search_radius, x + search_radius, 1e-12);
    Ok(v.min(convex_fn(x)))
}

/// The Huber function `H_lambda(r)`: quadratic below `lambda`, linear above.
/// Closed form of the Moreau envelope of the absolute value.
pub fn huber(lambda: f64, r: f64) -> f64 {
    let r = r.abs();
    if r > lambda {
        r - lambda / 2.0
    } else {
        r * r / (2.0 * lambda)
    }
}

/// `(f * phi_t)(x)` by adaptive quadrature, where `phi_t` is the centered
/// Gaussian kernel with standard deviation `t`.
pub fn gaussian_convolve_1d(spec: &DistributionSpec, t: f64, x: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::domain("t", t, "t > 0"));
    }
    let kernel_norm = 1.0 / (t * (2.0 * std::f64::consts::PI).sqrt());
    // Integrate over the kernel window; 10 standard deviations is far below
    // the 1e-8 absolute target.
    let val = quad::integrate(
        |y| {
            let k = (-(x - y) * (x - y) / (2.0 * t * t)).exp();
            spec.density_1d(y) * k
        },
        x - 10.0 * t,
        x + 10.0 * t,
        1e-10,
    ) * kernel_norm;
    Ok(val)
}

/// `|| f - f * phi_t ||_{L1}` by quadrature over the effective support.
pub fn l1_distance_to_smoothed(spec: &DistributionSpec, t: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::domain("t", t, "t > 0"));
    }
    let (lo, hi) = spec.support_1d()?;
    // Truncate where both densities are negligible.
    let a = if lo.is_finite() { lo - 10.0 * t } else { spec.quantile_1d(1e-9)? - 10.0 * t };
    let b = if hi.is_finite() { hi + 10.0 * t } else { spec.quantile_1d(1.0 - 1e-9)? + 10.0 * t };
    let val = quad::integrate(
        |x| {
            let f = spec.density_1d(x);
            let g = gaussian_convolve_1d(spec, t, x).unwrap_or(0.0);
            (f - g).abs()
        },
        a,
        b,
        1e-7,
    );
    Ok(val)
}

/// Total variation of the density: `int |f'|` by central finite differences
/// over the interior, plus the jump contributions at finite support
/// endpoints. For the unimodal densities here this equals `2 ||f||_inf`.
pub fn grad_l1_norm_1d(spec: &DistributionSpec) -> Result<f64> {
    let (lo, hi) = spec.support_1d()?;
    let h = 1e-5;
    let a = if lo.is_finite() { lo + 2.0 * h } else { spec.quantile_1d(1e-10)? };
    let b = if hi.is_finite() { hi - 2.0 * h } else { spec.quantile_1d(1.0 - 1e-10)? };
    let interior = quad::integrate(
        |x| {
            let d = (spec.density_1d(x + h) - spec.density_1d(x - h)) / (2.0 * h);
            d.abs()
        },
        a,
        b,
        1e-7,
    );
    let mut jumps = 0.0;
    if lo.is_finite() {
        jumps += spec.density_1d(lo + h);
    }
    if hi.is_finite() {
        jumps += spec.density_1d(hi - h);
    }
    Ok(interior + jumps)
}
