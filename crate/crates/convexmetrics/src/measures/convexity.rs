//! Convexity bookkeeping: the s / kappa parameters of Borell's hierarchy
//! and the generalized means that define them.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Convexity parameters of an s-concave measure on R^n.
///
/// `s` is the measure-level parameter, `kappa` the density-level one; they
/// are linked by `kappa = s / (1 - s n)` whenever `s n < 1`. A uniform
/// measure on an interval has `s = 1` (n = 1), log-concave measures have
/// `s = 0`, and Cauchy-type measures have `s = -1/beta < 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvexityParams {
    pub s: f64,
    pub n: usize,
    /// `+inf` encodes the degenerate uniform case `s = 1/n`.
    pub kappa: f64,
}

impl ConvexityParams {
    pub fn from_s(s: f64, n: usize) -> Result<Self> {
        let kappa = kappa_from_s(s, n)?;
        Ok(ConvexityParams { s, n, kappa })
    }

    /// True iff `s` lies in the range `(-1/2, 0)` required by the
    /// comparison theorems for heavy-tailed measures.
    pub fn in_theorem_range(&self) -> bool {
        self.s > -0.5 && self.s < 0.0
    }
}

/// `kappa = s / (1 - s n)`. Requires `s n < 1`; `s n = 1` maps to `+inf`.
pub fn kappa_from_s(s: f64, n: usize) -> Result<f64> {
    let sn = s * n as f64;
    if sn > 1.0 {
        return Err(Error::domain("s", s, "s*n <= 1"));
    }
    if sn == 1.0 {
        return Ok(f64::INFINITY);
    }
    Ok(s / (1.0 - sn))
}

/// Inverse of [`kappa_from_s`]: `s = kappa / (1 + kappa n)`. Requires
/// `kappa n > -1`; `kappa = +inf` maps back to `s = 1/n`.
pub fn s_from_kappa(kappa: f64, n: usize) -> Result<f64> {
    if kappa.is_infinite() && kappa > 0.0 {
        return Ok(1.0 / n as f64);
    }
    let kn = kappa * n as f64;
    if kn <= -1.0 {
        return Err(Error::domain("kappa", kappa, "kappa*n > -1"));
    }
    Ok(kappa / (1.0 + kn))
}

/// The generalized mean `M_alpha^lambda(a, b)` for nonnegative `a`, `b`.
///
/// Four branches: power mean for finite nonzero `alpha`, geometric mean at
/// `alpha = 0`, and min/max at `alpha = -inf` / `+inf`.
pub fn generalized_mean(alpha: f64, lambda: f64, a: f64, b: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::domain("lambda", lambda, "[0, 1]"));
    }
    debug_assert!(a >= 0.0 && b >= 0.0);
    if alpha == f64::NEG_INFINITY {
        return Ok(a.min(b));
    }
    if alpha == f64::INFINITY {
        return Ok(a.max(b));
    }
    if alpha == 0.0 {
        return Ok(a.powf(1.0 - lambda) * b.powf(lambda));
    }
    // Negative powers of zero blow up; by continuity the mean is 0 when
    // either endpoint is 0 and alpha < 0.
    if alpha < 0.0 && (a == 0.0 || b == 0.0) {
        return Ok(0.0);
    }
    Ok(((1.0 - lambda) * a.powf(alpha) + lambda * b.powf(alpha)).powf(1.0 / alpha))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn log_concave_fixed_point() {
        assert_eq!(kappa_from_s(0.0, 5).unwrap(), 0.0);
        assert_eq!(s_from_kappa(0.0, 5).unwrap(), 0.0);
    }

    #[test]
    fn borell_relation_values() {
        // s = -1/4, n = 3 -> kappa = -1/7.
        let k = kappa_from_s(-0.25, 3).unwrap();
        assert_abs_diff_eq!(k, -1.0 / 7.0, epsilon = 1e-15);
        assert_abs_diff_eq!(s_from_kappa(k, 3).unwrap(), -0.25, epsilon = 1e-12);
        // kappa = -1/4, n = 1 -> s = -1/3.
        let s = s_from_kappa(-0.25, 1).unwrap();
        assert_abs_diff_eq!(s, -1.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(kappa_from_s(s, 1).unwrap(), -0.25, epsilon = 1e-12);
    }

    #[test]
    fn domain_errors() {
        assert!(kappa_from_s(0.6, 2).is_err());
        assert!(s_from_kappa(-0.6, 2).is_err());
    }

    #[test]
    fn uniform_endpoint_maps_to_infinity() {
        assert!(kappa_from_s(1.0, 1).unwrap().is_infinite());
        assert_eq!(s_from_kappa(f64::INFINITY, 1).unwrap(), 1.0);
    }

    #[test]
    fn generalized_mean_branches() {
        assert_abs_diff_eq!(generalized_mean(0.0, 0.5, 1.0, 4.0).unwrap(), 2.0);
        assert_eq!(generalized_mean(f64::NEG_INFINITY, 0.3, 2.0, 5.0).unwrap(), 2.0);
        assert_abs_diff_eq!(generalized_mean(1.0, 0.25, 0.0, 8.0).unwrap(), 2.0);
        assert_eq!(generalized_mean(f64::INFINITY, 0.9, 2.0, 5.0).unwrap(), 5.0);
        assert!(generalized_mean(1.0, 1.5, 1.0, 1.0).is_err());
    }

    #[test]
    fn continuity_in_alpha() {
        // At alpha -> 0 the power mean tends to the geometric mean, and at
        // large |alpha| to max/min.
        let (a, b, l) = (0.7, 3.2, 0.4);
        let g0 = generalized_mean(0.0, l, a, b).unwrap();
        assert_abs_diff_eq!(generalized_mean(1e-9, l, a, b).unwrap(), g0, epsilon = 1e-6);
        assert_abs_diff_eq!(generalized_mean(-1e-9, l, a, b).unwrap(), g0, epsilon = 1e-6);
        assert_abs_diff_eq!(generalized_mean(500.0, l, a, b).unwrap(), b, epsilon = 1e-2);
        assert_abs_diff_eq!(generalized_mean(-500.0, l, a, b).unwrap(), a, epsilon = 1e-2);
    }

    proptest! {
        #[test]
        fn roundtrip_s_kappa(s in -5.0f64..0.99, n in 1usize..8) {
            prop_assume!(s * (n as f64) < 1.0);
            let k = kappa_from_s(s, n).unwrap();
            let s2 = s_from_kappa(k, n).unwrap();
            prop_assert!((s - s2).abs() <= 1e-12 * (1.0 + s.abs()));
        }

        #[test]
        fn mean_monotone_in_alpha(
            a in 0.01f64..10.0,
            b in 0.01f64..10.0,
            l in 0.0f64..1.0,
            alpha1 in -4.0f64..4.0,
            alpha2 in -4.0f64..4.0,
        ) {
            let (lo, hi) = if alpha1 <= alpha2 { (alpha1, alpha2) } else { (alpha2, alpha1) };
            let m_lo = generalized_mean(lo, l, a, b).unwrap();
            let m_hi = generalized_mean(hi, l, a, b).unwrap();
            prop_assert!(m_lo <= m_hi + 1e-9);
        }

        #[test]
        fn mean_between_min_and_max(
            a in 0.0f64..10.0,
            b in 0.0f64..10.0,
            l in 0.0f64..1.0,
            alpha in -8.0f64..8.0,
        ) {
            let m = generalized_mean(alpha, l, a, b).unwrap();
            prop_assert!(m >= a.min(b) - 1e-12);
            prop_assert!(m <= a.max(b) + 1e-12);
        }
    }
}
