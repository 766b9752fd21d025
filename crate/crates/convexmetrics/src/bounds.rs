//! Explicit constants and inequalities for s-concave measures: the
//! closed-form minimization lemma, the moment constant C(p,s), the density
//! and tail constants c0, c1, c2, d0, the five comparison theorems linking
//! d_BL, d_TV, W_p, KL and Tsallis divergences, and the classical forward
//! inequalities (Pinsker-Gilardoni, Talagrand, Rényi interval).
//!
//! Unnamed universal constants ("there exists c > 0") each get a named slot
//! in [`BoundConfig`] defaulting to 1; the harness can fit the minimal
//! value that makes an inequality hold over a grid.

use crate::error::{Error, Result};
use crate::measures::kappa_from_s;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Named slots for the universal constants appearing in the bounds.
pub const CONSTANT_SLOTS: [&str; 10] = [
    "c_dev", "c_dev_exp", "c_norm", "c_maxdens", "c_regul", "c_tvbl", "c_w1bl", "c_wqwp", "c_kl",
    "c_tsallis",
];

/// Configuration of the universal constants and the Hölder split parameter.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundConfig {
    /// Overrides for the named universal constants; anything absent is 1.
    #[serde(default)]
    pub universal_constants: BTreeMap<String, f64>,
    /// Hölder parameter alpha in (1, 2] used by the Wasserstein, relative
    /// entropy and Tsallis comparison theorems.
    #[serde(default = "default_alpha")]
    pub alpha: f64,
}

fn default_alpha() -> f64 {
    2.0
}

impl Default for BoundConfig {
    fn default() -> Self {
        BoundConfig {
            universal_constants: BTreeMap::new(),
            alpha: 2.0,
        }
    }
}

impl BoundConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 1.0 && self.alpha <= 2.0) {
            return Err(Error::domain("alpha", self.alpha, "(1, 2]"));
        }
        for (k, &v) in &self.universal_constants {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::Config(format!("constant {k} must be positive, got {v}")));
            }
            if !CONSTANT_SLOTS.contains(&k.as_str()) {
                return Err(Error::Config(format!("unknown constant slot {k}")));
            }
        }
        Ok(())
    }

    /// The value of a named constant, defaulting to 1.
    pub fn constant(&self, name: &str) -> f64 {
        self.universal_constants.get(name).copied().unwrap_or(1.0)
    }

    pub fn with_constant(mut self, name: &str, value: f64) -> Self {
        self.universal_constants.insert(name.to_string(), value);
        self
    }

    /// Hölder conjugate alpha' = alpha/(alpha - 1).
    pub fn alpha_conj(&self) -> f64 {
        self.alpha / (self.alpha - 1.0)
    }
}

/// Evaluated bound with provenance and validity bookkeeping.
#[derive(Debug, Clone)]
pub struct BoundResult {
    pub value: f64,
    /// False when a precondition of the underlying statement fails; the
    /// value then carries no guarantee.
    pub in_validity_domain: bool,
    /// True when the bound exceeds the trivial cap of the bounded quantity
    /// (e.g. a probability bound above 1): still returned, but useless.
    pub vacuous: bool,
    pub formula_id: &'static str,
    /// Secondary value where a statement has two regimes (the exponential
    /// branch of the deviation bound).
    pub alt_value: Option<f64>,
    /// Echo of the numeric inputs for report rows.
    pub inputs: Vec<(&'static str, f64)>,
}

impl BoundResult {
    fn new(formula_id: &'static str, value: f64, inputs: Vec<(&'static str, f64)>) -> Self {
        BoundResult {
            value,
            in_validity_domain: true,
            vacuous: false,
            formula_id,
            alt_value: None,
            inputs,
        }
    }

    fn invalid(formula_id: &'static str, inputs: Vec<(&'static str, f64)>) -> Self {
        BoundResult {
            value: f64::NAN,
            in_validity_domain: false,
            vacuous: false,
            formula_id,
            alt_value: None,
            inputs,
        }
    }

    fn with_cap(mut self, cap: f64) -> Self {
        self.vacuous = self.value > cap;
        self
    }
}

fn check_s_half(s: f64) -> bool {
    s > -0.5 && s < 0.0
}

/// `(1+s)^{-1/s}`, continued through `s = 0` by its limit `1/e`.
fn grunbaum_core(s: f64) -> f64 {
    if s == 0.0 {
        (-1.0f64).exp()
    } else {
        (1.0 + s).powf(-1.0 / s)
    }
}

/// Closed form for `inf_{t >= M} (A t^m + B / t^p)`.
///
/// With `K = max{(A/B) M^{m+p}, p/m}` the infimum equals
/// `A^{p/(m+p)} B^{m/(m+p)} (K^{m/(m+p)} + K^{-p/(m+p)})`: `K = p/m` when the
/// unconstrained critical point lies above `M`, otherwise the constraint
/// binds at `t = M`.
pub fn minimize_lemma(a: f64, b: f64, m: f64, p: f64, lower: f64) -> Result<f64> {
    for (name, v) in [("A", a), ("B", b), ("m", m), ("p", p), ("M", lower)] {
        if !(v > 0.0) || !v.is_finite() {
            return Err(Error::domain(name, v, "(0, inf)"));
        }
    }
    let k = ((a / b) * lower.powf(m + p)).max(p / m);
    let e = m + p;
    Ok(a.powf(p / e) * b.powf(m / e) * (k.powf(m / e) + k.powf(-p / e)))
}

/// The moment constant `C(p, s)`: `p` for `s > -1/(p+1)`, and
/// `1/(|s|^{1-1/p} (1 - p|s|)^{1/p})` on `(-1/p, -1/(p+1)]`.
pub fn const_c(p: f64, s: f64) -> Result<f64> {
    if !(p >= 1.0) {
        return Err(Error::domain("p", p, "p >= 1"));
    }
    if !(s > -1.0 / p && s < 0.0) {
        return Err(Error::domain("s", s, "(-1/p, 0)"));
    }
    if s > -1.0 / (p + 1.0) {
        Ok(p)
    } else {
        let a = s.abs();
        Ok(1.0 / (a.powf(1.0 - 1.0 / p) * (1.0 - p * a).powf(1.0 / p)))
    }
}

/// `d_0(n, s) = (1+n|s|)^{4(1+n|s|)} / (1+2s)` for `s` in `(-1/2, 0)`.
pub fn const_d0(n: usize, s: f64) -> Result<f64> {
    if !check_s_half(s) {
        return Err(Error::domain("s", s, "(-1/2, 0)"));
    }
    let a = 1.0 + n as f64 * s.abs();
    Ok(a.powf(4.0 * a) / (1.0 + 2.0 * s))
}

/// `c_0(n, s) = ((1+n kappa)/4 * (1+s)^{-1/s}/2)^{4/(1+n kappa)}`.
pub fn const_c0(n: usize, s: f64) -> Result<f64> {
    if !check_s_half(s) {
        return Err(Error::domain("s", s, "(-1/2, 0)"));
    }
    let nk = 1.0 + n as f64 * kappa_from_s(s, n).expect("s < 0 is always admissible");
    Ok(((nk / 4.0) * grunbaum_core(s) / 2.0).powf(4.0 / nk))
}

/// `c_2(s) = (1+2s)(1+s)^{-1/s}/2`.
pub fn const_c2(s: f64) -> Result<f64> {
    if !check_s_half(s) {
        return Err(Error::domain("s", s, "(-1/2, 0)"));
    }
    Ok((1.0 + 2.0 * s) * grunbaum_core(s) / 2.0)
}

/// Explicit upper bound on `c_1`: `(1+s)^{-1/s}/2`.
pub fn const_c1_bound(s: f64) -> Result<f64> {
    // -1/2 itself is the printed endpoint of the c_1 expression.
    if !(s >= -0.5 && s < 0.0) {
        return Err(Error::domain("s", s, "[-1/2, 0)"));
    }
    Ok(grunbaum_core(s) / 2.0)
}

/// Grünbaum-type lower bound `P(X >= E[X]) >= (1+s)^{-1/s}` for 1D
/// s-concave laws, continued through `s = 0` by `1/e`.
pub fn grunbaum_lower(s: f64) -> Result<f64> {
    if !(s > -1.0) || !s.is_finite() {
        return Err(Error::domain("s", s, "(-1, inf)"));
    }
    Ok(grunbaum_core(s))
}

/// Var-entropy bound `Var(log f(X)) <= sum_{i=1..n} (1+i kappa)^{-2}` for
/// kappa-concave densities.
pub fn varentropy_bound(n: usize, kappa: f64) -> Result<f64> {
    if !(kappa > -1.0 / n as f64) {
        return Err(Error::domain("kappa", kappa, "(-1/n, inf)"));
    }
    Ok((1..=n).map(|i| (1.0 + i as f64 * kappa).powi(-2)).sum())
}

/// Isotropic deviation bound `P(|X| >= u) <= (c max{sqrt n, 1/|s|}/u)^{1/(2|s|)}`.
///
/// When `s >= -1/(2 sqrt n)` and `6c sqrt n <= u <= 3c/|s|` the exponential
/// regime `e^{-c0 u}` also applies and is reported in `alt_value`.
pub fn tail_bound_deviation(u: f64, n: usize, s: f64, cfg: &BoundConfig) -> BoundResult {
    let inputs = vec![("u", u), ("n", n as f64), ("s", s)];
    if !(u > 0.0) || !check_s_half(s) {
        return BoundResult::invalid("tail-deviation", inputs);
    }
    let c = cfg.constant("c_dev");
    let sqrt_n = (n as f64).sqrt();
    let value = (c * sqrt_n.max(1.0 / s.abs()) / u).powf(1.0 / (2.0 * s.abs()));
    let mut out = BoundResult::new("tail-deviation", value, inputs).with_cap(1.0);
    if s >= -1.0 / (2.0 * sqrt_n) && (6.0 * c * sqrt_n..=3.0 * c / s.abs()).contains(&u) {
        out.alt_value = Some((-cfg.constant("c_dev_exp") * u).exp());
    }
    out
}

/// Maximum-density bound: `1/(1+2s)` in 1D (no free constant), and
/// `c^{n(1+n|s|)} d_0^n n^{n/2}` in higher dimension.
pub fn max_density_bound(n: usize, s: f64, cfg: &BoundConfig) -> BoundResult {
    let inputs = vec![("n", n as f64), ("s", s)];
    // s = 0 is the log-concave limit, fine in 1D.
    if n == 1 {
        if !(s > -0.5 && s <= 0.0) {
            return BoundResult::invalid("max-density", inputs);
        }
        return BoundResult::new("max-density", 1.0 / (1.0 + 2.0 * s), inputs);
    }
    if !check_s_half(s) {
        return BoundResult::invalid("max-density", inputs);
    }
    let nf = n as f64;
    let d0 = const_d0(n, s).expect("s checked");
    let c = cfg.constant("c_maxdens");
    let value = c.powf(nf * (1.0 + nf * s.abs())) * d0.powf(nf) * nf.powf(nf / 2.0);
    BoundResult::new("max-density", value, inputs)
}

/// Smoothing bound `||f - f*phi_t||_1 <= c^{1+n|s|} d_0 t n`.
pub fn smoothing_l1_bound(t: f64, n: usize, s: f64, cfg: &BoundConfig) -> BoundResult {
    let inputs = vec![("t", t), ("n", n as f64), ("s", s)];
    if !(t > 0.0) || !check_s_half(s) {
        return BoundResult::invalid("smoothing-l1", inputs);
    }
    let nf = n as f64;
    let c = cfg.constant("c_regul");
    let value = c.powf(1.0 + nf * s.abs()) * const_d0(n, s).expect("s checked") * t * nf;
    BoundResult::new("smoothing-l1", value, inputs).with_cap(2.0)
}

/// Large-deviation lower bound `P(f(X) >= c_0^n ||f||_inf) >= 1 - c_1^n`,
/// certified with the explicit bound `c_1 <= (1+s)^{-1/s}/2`.
pub fn large_dev_lower(n: usize, s: f64) -> Result<f64> {
    if !check_s_half(s) {
        return Err(Error::domain("s", s, "(-1/2, 0)"));
    }
    Ok(1.0 - const_c1_bound(s)?.powi(n as i32))
}

/// `d_TV <= c^{1+n|s|} (1+n|s|)^{2(1+n|s|)} / sqrt(1+2s) * sqrt(n) * sqrt(d_BL)`.
pub fn thm_tv_from_bl(d_bl: f64, n: usize, s: f64, cfg: &BoundConfig) -> BoundResult {
    let inputs = vec![("d_bl", d_bl), ("n", n as f64), ("s", s)];
    if !(0.0..=2.0).contains(&d_bl) || !check_s_half(s) {
        return BoundResult::invalid("thm-tv-bl", inputs);
    }
    let nf = n as f64;
    let a = 1.0 + nf * s.abs();
    let c = cfg.constant("c_tvbl");
    let value = c.powf(a) * a.powf(2.0 * a) / (1.0 + 2.0 * s).sqrt() * nf.sqrt() * d_bl.sqrt();
    BoundResult::new("thm-tv-bl", value, inputs).with_cap(2.0)
}

/// `W_1 <= c sqrt(n) max{1, 1/(sqrt(n)|s|)}^{1/(1+4|s|)} d_BL^{1/(1+4|s|)}`.
pub fn thm_w1_from_bl(d_bl: f64, n: usize, s: f64, cfg: &BoundConfig) -> BoundResult {
    let inputs = vec![("d_bl", d_bl), ("n", n as f64), ("s", s)];
    if !(0.0..=2.0).contains(&d_bl) || !check_s_half(s) {
        return BoundResult::invalid("thm-w1-bl", inputs);
    }
    let nf = n as f64;
    let e = 1.0 / (1.0 + 4.0 * s.abs());
    let c = cfg.constant("c_w1bl");
    let value = c * nf.sqrt() * (1.0f64).max(1.0 / (nf.sqrt() * s.abs())).powf(e) * d_bl.powf(e);
    BoundResult::new("thm-w1-bl", value, inputs)
}

/// `W_q` from `W_p` (`1 <= p < q`) through the Hölder split `alpha`:
/// the product of the `C(alpha q, s) sqrt(n)` and `max{sqrt n, 1/|s|}`
/// prefactors with exponent denominator `1 + 2|s| alpha' (q - p)`.
pub fn thm_wq_from_wp(
    w_p: f64,
    p: f64,
    q: f64,
    n: usize,
    s: f64,
    cfg: &BoundConfig,
) -> BoundResult {
    let inputs = vec![("w_p", w_p), ("p", p), ("q", q), ("n", n as f64), ("s", s)];
    let ac = cfg.alpha_conj();
    let aq = cfg.alpha * q;
    if !(w_p >= 0.0) || !(p >= 1.0 && q > p) || !(s > -1.0 / aq && s < 0.0) {
        return BoundResult::invalid("thm-wq-wp", inputs);
    }
    let nf = n as f64;
    let a = s.abs();
    let denom = 1.0 + 2.0 * a * ac * (q - p);
    let big_c = const_c(aq, s).expect("s in (-1/(alpha q), 0)");
    let c = cfg.constant("c_wqwp");
    let value = c
        * (big_c * nf.sqrt()).powf(2.0 * a * ac * (q - p) / denom)
        * nf.sqrt().max(1.0 / a).powf((q - p) / (q * denom))
        * w_p.powf(p / q / denom);
    BoundResult::new("thm-wq-wp", value, inputs)
}

/// Relative entropy from total variation against the standard Gaussian:
/// `D <= c n (1+n|s|) log(alpha' n) / (1-2 alpha|s|)^{4|s|(alpha'-1)/(1+4|s|alpha')}
///  * max{1, 1/(sqrt(n)|s|)}^{2/(1+4|s|alpha')} (d_TV^{1/(1+4|s|alpha')} + d_TV)`.
pub fn thm_kl_from_tv(d_tv: f64, n: usize, s: f64, cfg: &BoundConfig) -> BoundResult {
    let inputs = vec![("d_tv", d_tv), ("n", n as f64), ("s", s)];
    let ac = cfg.alpha_conj();
    if !(0.0..=2.0).contains(&d_tv) || !(s > -1.0 / (2.0 * cfg.alpha) && s < 0.0) {
        return BoundResult::invalid("thm-kl-tv", inputs);
    }
    let nf = n as f64;
    let a = s.abs();
    let e = 1.0 / (1.0 + 4.0 * a * ac);
    let c = cfg.constant("c_kl");
    let pref = c * nf * (1.0 + nf * a) * (ac * nf).ln()
        / (1.0 - 2.0 * cfg.alpha * a).powf(4.0 * a * (ac - 1.0) * e);
    let value =
        pref * (1.0f64).max(1.0 / (nf.sqrt() * a)).powf(2.0 * e) * (d_tv.powf(e) + d_tv);
    BoundResult::new("thm-kl-tv", value, inputs)
}

/// Tsallis divergence from total variation against the standard Gaussian,
/// under the exponential moment `M = E[e^{|X|^2 alpha (p-1)/2}]`.
pub fn thm_tsallis_from_tv(
    d_tv: f64,
    n: usize,
    s: f64,
    p: f64,
    moment: f64,
    cfg: &BoundConfig,
) -> BoundResult {
    let inputs = vec![("d_tv", d_tv), ("n", n as f64), ("s", s), ("p", p), ("M", moment)];
    let ac = cfg.alpha_conj();
    if !(0.0..=2.0).contains(&d_tv) || !(p > 1.0) || !check_s_half(s) || !(moment >= 1.0) {
        return BoundResult::invalid("thm-tsallis-tv", inputs);
    }
    let nf = n as f64;
    let a = s.abs();
    let c = cfg.constant("c_tsallis");
    let d0 = const_d0(n, s).expect("s checked");
    let pref = (c.powf(nf * (1.0 + nf * a)) * d0.powf(nf) * nf.powf(nf / 2.0)).powf(p - 1.0)
        / (p - 1.0);
    if d_tv == 0.0 {
        // log(1 + 1/d_TV) -> inf kills the moment summand.
        return BoundResult::new("thm-tsallis-tv", 0.0, inputs);
    }
    if moment.is_infinite() {
        return BoundResult::new("thm-tsallis-tv", f64::INFINITY, inputs);
    }
    let tail = moment.powf(1.0 / cfg.alpha)
        * (c * (p - 1.0).sqrt() * nf.sqrt().max(1.0 / a) / (1.0 + 1.0 / d_tv).ln().sqrt())
            .powf(1.0 / (2.0 * a * ac));
    let value = pref * ((d_tv + d_tv * d_tv).sqrt() + tail);
    BoundResult::new("thm-tsallis-tv", value, inputs)
}

/// Pinsker-Gilardoni slack `D_p - (p/2) d_TV^2` for `p` in `(0, 1]`;
/// nonnegative iff the inequality holds.
pub fn pinsker_gilardoni(d_tv: f64, d_p: f64, p: f64) -> Result<f64> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::domain("p", p, "(0, 1]"));
    }
    if !(d_tv >= 0.0) || !(d_p >= 0.0) {
        return Err(Error::Precondition("distances must be nonnegative".into()));
    }
    Ok(d_p - 0.5 * p * d_tv * d_tv)
}

/// Talagrand slack `2 D - W_2^2` for measures satisfying T_2(2) (the
/// standard Gaussian reference does).
pub fn talagrand(w2: f64, d: f64) -> Result<f64> {
    if !(w2 >= 0.0) || !(d >= 0.0) {
        return Err(Error::Precondition("inputs must be nonnegative".into()));
    }
    Ok(2.0 * d - w2 * w2)
}

/// Rényi interval comparison for `0 < p < q < 1`: slacks of
/// `p(1-q)/(1-p)^2 * D_q <= D_p` and `D_p <= D_q`.
pub fn renyi_interval(d_p: f64, d_q: f64, p: f64, q: f64) -> Result<(f64, f64)> {
    if !(p > 0.0 && p < q && q < 1.0) {
        return Err(Error::Precondition(format!("need 0 < p < q < 1, got p = {p}, q = {q}")));
    }
    if !(d_p >= 0.0) || !(d_q >= 0.0) {
        return Err(Error::Precondition("divergences must be nonnegative".into()));
    }
    let coeff = p * (1.0 - q) / ((1.0 - p) * (1.0 - p));
    Ok((d_p - coeff * d_q, d_q - d_p))
}

/// Dual-representation caps: slacks of `d_BL <= d_TV` and `d_BL <= W_1`.
pub fn bl_cap(d_bl: f64, d_tv: f64, w1: f64) -> Result<(f64, f64)> {
    if !(d_bl >= 0.0) || !(d_tv >= 0.0) || !(w1 >= 0.0) {
        return Err(Error::Precondition("distances must be nonnegative".into()));
    }
    Ok((d_tv - d_bl, w1 - d_bl))
}
