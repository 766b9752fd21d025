//! Experiment runner: builds distribution pairs from a config file, computes
//! distances, evaluates bounds, checks every inequality chain, fits the
//! unnamed universal constants and emits machine-readable CSV/JSON reports.
//!
//! Reports are deterministic: identical config and seed produce identical
//! bytes. Monte Carlo verdicts carry a 3-standard-error buffer on top of the
//! deterministic tolerance; analytically infinite quantities are rendered as
//! the string `inf` in CSV and as `null` (with an `infinite` flag) in JSON.

use crate::bounds::{self, BoundConfig, BoundResult};
use crate::distances::{self, DistanceEstimate};
use crate::error::{Error, Result};
use crate::measures::{derive_seed, DistributionSpec, EmpiricalMeasure, SpecDoc};
use crate::transport;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

/// Outcome of a single inequality check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// Inequality satisfied within tolerance.
    Holds,
    /// Satisfied, but the bound exceeds the trivial cap of the quantity.
    HoldsVacuous,
    /// Slack below `-(tolerance + 3 SE)`.
    Violated,
    /// A precondition of the statement fails; no guarantee applies.
    InvalidDomain,
    /// One side is analytically infinite.
    Infinite,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::Holds => "holds",
            Verdict::HoldsVacuous => "holds-vacuous",
            Verdict::Violated => "violated",
            Verdict::InvalidDomain => "invalid-domain",
            Verdict::Infinite => "infinite",
        };
        f.write_str(s)
    }
}

/// One line of the verification report: `lhs <= rhs` with `slack = rhs - lhs`.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub pair_id: String,
    pub quantity: String,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub verdict: Verdict,
    pub method: String,
    pub std_error: Option<f64>,
}

/// JSON wire form: non-finite numbers become `null`, flagged by `infinite`.
#[derive(Serialize, Deserialize)]
struct RowWire {
    pair_id: String,
    quantity: String,
    lhs: Option<f64>,
    rhs: Option<f64>,
    slack: Option<f64>,
    infinite: bool,
    verdict: Verdict,
    method: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    std_error: Option<f64>,
}

fn wire_num(x: f64) -> Option<f64> {
    if x.is_finite() {
        Some(x)
    } else {
        None
    }
}

impl Serialize for ReportRow {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        RowWire {
            pair_id: self.pair_id.clone(),
            quantity: self.quantity.clone(),
            lhs: wire_num(self.lhs),
            rhs: wire_num(self.rhs),
            slack: wire_num(self.slack),
            infinite: !(self.lhs.is_finite() && self.rhs.is_finite()),
            verdict: self.verdict,
            method: self.method.clone(),
            std_error: self.std_error,
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for ReportRow {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let w = RowWire::deserialize(de)?;
        let invalid = w.verdict == Verdict::InvalidDomain;
        let back = |v: Option<f64>| match v {
            Some(x) => x,
            None if invalid => f64::NAN,
            None => f64::INFINITY,
        };
        Ok(ReportRow {
            pair_id: w.pair_id,
            quantity: w.quantity,
            lhs: back(w.lhs),
            rhs: back(w.rhs),
            slack: back(w.slack),
            verdict: w.verdict,
            method: w.method,
            std_error: w.std_error,
        })
    }
}

/// One distribution pair and the checks to run on it. Single-measure checks
/// (tail, density maximum, entropy) ignore `g`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PairConfig {
    pub id: String,
    pub f: SpecDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<SpecDoc>,
    /// Optional convexity parameter to evaluate the bounds at. Classes are
    /// nested (`s' <= s` implies every s-concave measure is s'-concave), so
    /// any value at most the natural parameter of both members is sound.
    /// Needed to run the heavy-tail theorems on log-concave or uniform
    /// members, whose natural `s >= 0` lies outside the statements.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub assume_s: Option<f64>,
    pub checks: Vec<String>,
}

/// Full experiment description; loadable from JSON or TOML.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub seed: u64,
    /// Monte Carlo sample budget per estimate.
    #[serde(default = "default_budget")]
    pub budget: usize,
    /// Point-cloud size for the exact transport solvers.
    #[serde(default = "default_cloud")]
    pub cloud: usize,
    /// Absolute tolerance for deterministic verdicts.
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
    #[serde(default)]
    pub bound_config: BoundConfig,
    #[serde(default)]
    pub pairs: Vec<PairConfig>,
}

fn default_budget() -> usize {
    20_000
}

fn default_cloud() -> usize {
    400
}

fn default_tolerance() -> f64 {
    1e-6
}

/// Check names with their admissible numeric parameter counts.
const CHECKS: &[(&str, usize, usize)] = &[
    ("tv-bl", 0, 0),
    ("w1-bl", 0, 0),
    ("wq-wp", 0, 2),
    ("kl-tv", 0, 0),
    ("tsallis-tv", 0, 1),
    ("tail-deviation", 0, 1),
    ("grunbaum", 0, 0),
    ("max-density", 0, 0),
    ("varentropy", 0, 0),
    ("max-entropy", 0, 0),
    ("smoothing-l1", 0, 1),
    ("large-dev", 0, 0),
    ("pinsker", 0, 1),
    ("talagrand", 0, 0),
    ("renyi-interval", 2, 2),
    ("bl-cap", 0, 0),
    ("wp-monotone", 0, 2),
    ("renyi-monotone", 2, 2),
    ("tsallis-dominates", 0, 1),
    ("renyi-infinite", 0, 1),
    ("sinkhorn-exact", 0, 0),
];

#[derive(Debug, Clone)]
struct Check {
    name: String,
    params: Vec<f64>,
}

/// Parse `name` or `name:x` or `name:x:y` into a known check.
fn parse_check(text: &str) -> Result<Check> {
    let mut parts = text.split(':');
    let name = parts.next().unwrap_or_default().to_string();
    let mut params = Vec::new();
    for p in parts {
        let v: f64 = p
            .parse()
            .map_err(|_| Error::Config(format!("check `{text}`: bad numeric parameter `{p}`")))?;
        params.push(v);
    }
    match CHECKS.iter().find(|(n, _, _)| *n == name) {
        None => Err(Error::Config(format!("unknown check `{name}`"))),
        Some((_, lo, hi)) => {
            if params.len() < *lo || params.len() > *hi {
                Err(Error::Config(format!(
                    "check `{name}` takes {lo}..={hi} parameters, got {}",
                    params.len()
                )))
            } else {
                Ok(Check { name, params })
            }
        }
    }
}

impl ExperimentConfig {
    /// Load from a `.json` or `.toml` file, auto-detected by extension, and
    /// validate before returning.
    pub fn load(path: &Path) -> Result<ExperimentConfig> {
        let ext = path.extension().and_then(|e| e.to_str());
        if !matches!(ext, Some("json") | Some("toml")) {
            return Err(Error::Config(format!(
                "config extension must be .json or .toml, got {ext:?}"
            )));
        }
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
            path: path.display().to_string(),
            source: e,
        })?;
        let cfg: ExperimentConfig = if ext == Some("json") {
            serde_json::from_str(&text)
                .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?
        } else {
            toml::from_str(&text)
                .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Parse from an in-memory TOML string (used for the bundled config).
    pub fn from_toml_str(text: &str) -> Result<ExperimentConfig> {
        let cfg: ExperimentConfig =
            toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Check constructibility of every spec and well-formedness of every
    /// selection before any computation happens.
    pub fn validate(&self) -> Result<()> {
        if !(self.tolerance > 0.0) || !self.tolerance.is_finite() {
            return Err(Error::Config(format!(
                "tolerance must be positive, got {}",
                self.tolerance
            )));
        }
        if self.budget < 2 || self.cloud < 2 {
            return Err(Error::Config("budget and cloud must be at least 2".into()));
        }
        self.bound_config.validate()?;
        let mut seen = std::collections::BTreeSet::new();
        for pair in &self.pairs {
            if pair.id.is_empty() {
                return Err(Error::Config("pair id must be non-empty".into()));
            }
            if !seen.insert(pair.id.clone()) {
                return Err(Error::Config(format!("duplicate pair id `{}`", pair.id)));
            }
            let f = DistributionSpec::from_doc(&pair.f)
                .map_err(|e| Error::Config(format!("pair `{}`: {e}", pair.id)))?;
            if let Some(gdoc) = &pair.g {
                let g = DistributionSpec::from_doc(gdoc)
                    .map_err(|e| Error::Config(format!("pair `{}`: {e}", pair.id)))?;
                if f.dim() != g.dim() {
                    return Err(Error::Config(format!(
                        "pair `{}`: dimension mismatch {} vs {}",
                        pair.id,
                        f.dim(),
                        g.dim()
                    )));
                }
            }
            if let Some(s) = pair.assume_s {
                if !s.is_finite() {
                    return Err(Error::Config(format!("pair `{}`: assume_s must be finite", pair.id)));
                }
            }
            for c in &pair.checks {
                parse_check(c)?;
            }
        }
        Ok(())
    }
}

/// Total variation between weighted clouds on their union support:
/// `sum over distinct points |a(x) - b(x)|`.
pub fn union_support_tv(a: &EmpiricalMeasure, b: &EmpiricalMeasure) -> f64 {
    let mut diff: BTreeMap<Vec<u64>, f64> = BTreeMap::new();
    let key = |pt: &[f64]| pt.iter().map(|v| v.to_bits()).collect::<Vec<u64>>();
    for (pt, &w) in a.points().iter().zip(a.weights()) {
        *diff.entry(key(pt)).or_insert(0.0) += w;
    }
    for (pt, &w) in b.points().iter().zip(b.weights()) {
        *diff.entry(key(pt)).or_insert(0.0) -= w;
    }
    diff.values().map(|v| v.abs()).sum()
}

struct Ctx<'a> {
    config: &'a ExperimentConfig,
    pair: &'a PairConfig,
    f: &'a DistributionSpec,
    g: Option<&'a DistributionSpec>,
    seed: u64,
}

impl Ctx<'_> {
    fn need_g(&self) -> Result<&DistributionSpec> {
        self.g
            .ok_or_else(|| Error::Precondition("check needs a second measure `g`".into()))
    }

    /// Convexity parameter the bounds are evaluated at: the explicit
    /// override, or the weaker (smaller) of the two natural parameters.
    fn eff_s(&self) -> f64 {
        self.pair.assume_s.unwrap_or_else(|| {
            let sf = self.f.conv().s;
            match self.g {
                Some(g) => sf.min(g.conv().s),
                None => sf,
            }
        })
    }

    fn seed_at(&self, k: u64) -> u64 {
        derive_seed(self.seed, k)
    }

    fn tol(&self) -> f64 {
        self.config.tolerance
    }

    fn bound(&self) -> &BoundConfig {
        &self.config.bound_config
    }

    fn finalize(
        &self,
        quantity: String,
        lhs: f64,
        rhs: f64,
        se: f64,
        method: &str,
        vacuous: bool,
    ) -> ReportRow {
        let slack = rhs - lhs;
        let verdict = if !lhs.is_finite() || !rhs.is_finite() {
            Verdict::Infinite
        } else if slack < -(self.tol() + 3.0 * se) {
            Verdict::Violated
        } else if vacuous {
            Verdict::HoldsVacuous
        } else {
            Verdict::Holds
        };
        ReportRow {
            pair_id: self.pair.id.clone(),
            quantity,
            lhs,
            rhs,
            slack,
            verdict,
            method: method.to_string(),
            std_error: if se > 0.0 { Some(se) } else { None },
        }
    }

    fn invalid(&self, quantity: String, method: &str) -> ReportRow {
        ReportRow {
            pair_id: self.pair.id.clone(),
            quantity,
            lhs: f64::NAN,
            rhs: f64::NAN,
            slack: f64::NAN,
            verdict: Verdict::InvalidDomain,
            method: method.to_string(),
            std_error: None,
        }
    }

    /// Row for `lhs <= bound`, honoring the bound's validity and vacuity.
    fn from_bound(
        &self,
        quantity: String,
        lhs: &DistanceEstimate,
        b: &BoundResult,
        extra_se: f64,
    ) -> ReportRow {
        if !b.in_validity_domain {
            return self.invalid(quantity, lhs.method);
        }
        let se = lhs.std_error.unwrap_or(0.0) + extra_se;
        self.finalize(quantity, lhs.value, b.value, se, lhs.method, b.vacuous)
    }
}

fn norm(pt: &[f64]) -> f64 {
    pt.iter().map(|v| v * v).sum::<f64>().sqrt()
}

fn fmt_param(x: f64) -> String {
    format!("{x}")
}

/// Dispatch one check; domain and precondition failures become
/// `invalid-domain` rows instead of errors, so one inapplicable selection
/// does not abort a whole suite.
fn run_check(ctx: &Ctx, check: &Check) -> Result<Vec<ReportRow>> {
    let out = match check.name.as_str() {
        "tv-bl" => check_tv_bl(ctx),
        "w1-bl" => check_w1_bl(ctx),
        "wq-wp" => check_wq_wp(ctx, check.params.first().copied().unwrap_or(1.0), check.params.get(1).copied().unwrap_or(2.0)),
        "kl-tv" => check_kl_tv(ctx),
        "tsallis-tv" => check_tsallis_tv(ctx, check.params.first().copied().unwrap_or(2.0)),
        "tail-deviation" => check_tail(ctx, check.params.first().copied().unwrap_or(10.0)),
        "grunbaum" => check_grunbaum(ctx),
        "max-density" => check_max_density(ctx),
        "varentropy" => check_varentropy(ctx),
        "max-entropy" => check_max_entropy(ctx),
        "smoothing-l1" => check_smoothing(ctx, check.params.first().copied().unwrap_or(0.1)),
        "large-dev" => check_large_dev(ctx),
        "pinsker" => check_pinsker(ctx, check.params.first().copied().unwrap_or(0.5)),
        "talagrand" => check_talagrand(ctx),
        "renyi-interval" => check_renyi_interval(ctx, check.params[0], check.params[1]),
        "bl-cap" => check_bl_cap(ctx),
        "wp-monotone" => check_wp_monotone(ctx, check.params.first().copied().unwrap_or(1.0), check.params.get(1).copied().unwrap_or(2.0)),
        "renyi-monotone" => check_renyi_monotone(ctx, check.params[0], check.params[1]),
        "tsallis-dominates" => check_tsallis_dominates(ctx, check.params.first().copied().unwrap_or(2.0)),
        "renyi-infinite" => check_renyi_infinite(ctx, check.params.first().copied().unwrap_or(2.0)),
        "sinkhorn-exact" => check_sinkhorn_exact(ctx),
        other => Err(Error::Config(format!("unknown check `{other}`"))),
    };
    match out {
        Ok(rows) => Ok(rows),
        Err(Error::Domain { .. }) | Err(Error::Precondition(_)) | Err(Error::Construction(_)) => {
            Ok(vec![ctx.invalid(check.name.clone(), "n/a")])
        }
        Err(e) => Err(e),
    }
}

fn check_tv_bl(ctx: &Ctx) -> Result<Vec<ReportRow>> {
    let g = ctx.need_g()?;
    let s = ctx.eff_s();
    let n = ctx.f.dim();
    let fi = ctx.f.isotropize(0)?;
    let gi = g.isotropize(0)?;
    let lhs = distances::tv_distance(&fi, &gi, ctx.config.budget, ctx.seed_at(0))?;
    let ca = fi.sample(ctx.seed_at(1), ctx.config.cloud)?;
    let cb = gi.sample(ctx.seed_at(2), ctx.config.cloud)?;
    let d_bl = distances::bl_distance(&ca, &cb)?;
    let b = bounds::thm_tv_from_bl(d_bl.value, n, s, ctx.bound());
    Ok(vec![ctx.from_bound("thm-tv-bl".into(), &lhs, &b, 0.0)])
}

fn check_w1_bl(ctx: &Ctx) -> Result<Vec<ReportRow>> {
    let g = ctx.need_g()?;
    let s = ctx.eff_s();
    let n = ctx.f.dim();
    let fi = ctx.f.isotropize(0)?;
    let gi = g.isotropize(0)?;
    let ca = fi.sample(ctx.seed_at(1), ctx.config.cloud)?;
    let cb = gi.sample(ctx.seed_at(2), ctx.config.cloud)?;
    let lhs = if n == 1 {
        distances::wasserstein_1d(&fi, &gi, 1.0)?
    } else {
        distances::wasserstein_empirical(&ca, &cb, 1.0)?
    };
    let d_bl = distances::bl_distance(&ca, &cb)?;
    let b = bounds::thm_w1_from_bl(d_bl.value, n, s, ctx.bound());
    Ok(vec![ctx.from_bound("thm-w1-bl".into(), &lhs, &b, 0.0)])
}

fn check_wq_wp(ctx: &Ctx, p: f64, q: f64) -> Result<Vec<ReportRow>> {
    let g = ctx.need_g()?;
    let s = ctx.eff_s();
    let n = ctx.f.dim();
    let fi = ctx.f.isotropize(0)?;
    let gi = g.isotropize(0)?;
    let w_p = distances::wasserstein_1d(&fi, &gi, p)?;
    let lhs = distances::wasserstein_1d(&fi, &gi, q)?;
    let b = bounds::thm_wq_from_wp(w_p.value, p, q, n, s, ctx.bound());
    let quantity = format!("thm-wq-wp[p={},q={}]", fmt_param(p), fmt_param(q));
    if !w_p.finite {
        return Ok(vec![ctx.finalize(quantity, lhs.value, f64::INFINITY, 0.0, lhs.method, false)]);
    }
    Ok(vec![ctx.from_bound(quantity, &lhs, &b, 0.0)])
}

fn check_kl_tv(ctx: &Ctx) -> Result<Vec<ReportRow>> {
    let g = ctx.need_g()?;
    if !g.is_std_gaussian() {
        return Err(Error::Precondition("kl-tv needs g = standard gaussian".into()));
    }
    let s = ctx.eff_s();
    let n = ctx.f.dim();
    let fi = ctx.f.isotropize(0)?;
    let lhs = distances::renyi_divergence(&fi, g, 1.0, ctx.config.budget, ctx.seed_at(0))?;
    let d_tv = distances::tv_distance(&fi, g, ctx.config.budget, ctx.seed_at(1))?;
    let b = bounds::thm_kl_from_tv(d_tv.value, n, s, ctx.bound());
    Ok(vec![ctx.from_bound("thm-kl-tv".into(), &lhs, &b, d_tv.std_error.unwrap_or(0.0))])
}

fn check_tsallis_tv(ctx: &Ctx, p: f64) -> Result<Vec<ReportRow>> {
    let g = ctx.need_g()?;
    if !g.is_std_gaussian() {
        return Err(Error::Precondition("tsallis-tv needs g = standard gaussian".into()));
    }
    let s = ctx.eff_s();
    let n = ctx.f.dim();
    let fi = ctx.f.isotropize(0)?;
    let moment = fi.exp_quadratic_moment(ctx.bound().alpha * (p - 1.0))?;
    let lhs = distances::tsallis_divergence(&fi, g, p, ctx.config.budget, ctx.seed_at(0))?;
    let d_tv = distances::tv_distance(&fi, g, ctx.config.budget, ctx.seed_at(1))?;
    let b = bounds::thm_tsallis_from_tv(d_tv.value, n, s, p, moment, ctx.bound());
    let quantity = format!("thm-tsallis-tv[p={}]", fmt_param(p));
    Ok(vec![ctx.from_bound(quantity, &lhs, &b, d_tv.std_error.unwrap_or(0.0))])
}

fn check_tail(ctx: &Ctx, u: f64) -> Result<Vec<ReportRow>> {
    let s = ctx.eff_s();
    let fi = ctx.f.isotropize(0)?;
    let n = fi.dim();
    let b = bounds::tail_bound_deviation(u, n, s, ctx.bound());
    let quantity = format!("tail-deviation[u={}]", fmt_param(u));
    if !b.in_validity_domain {
        return Ok(vec![ctx.invalid(quantity, "monte-carlo")]);
    }
    let cloud = fi.sample(ctx.seed_at(0), ctx.config.budget)?;
    let m = cloud.len() as f64;
    let hits = cloud.points().iter().filter(|pt| norm(pt) >= u).count() as f64;
    let p_hat = hits / m;
    let se = (p_hat * (1.0 - p_hat) / m).sqrt();
    Ok(vec![ctx.finalize(quantity, p_hat, b.value, se, "monte-carlo", b.vacuous)])
}

fn check_grunbaum(ctx: &Ctx) -> Result<Vec<ReportRow>> {
    let s = ctx.pair.assume_s.unwrap_or(ctx.f.conv().s);
    let lhs = bounds::grunbaum_lower(s)?;
    let mean = ctx.f.mean_vec()?[0];
    let rhs = 1.0 - ctx.f.cdf_1d(mean)?;
    Ok(vec![ctx.finalize("grunbaum".into(), lhs, rhs, 0.0, "quadrature", false)])
}

fn check_max_density(ctx: &Ctx) -> Result<Vec<ReportRow>> {
    let s = ctx.eff_s();
    let fi = ctx.f.isotropize(0)?;
    let b = bounds::max_density_bound(1, s, ctx.bound());
    if !b.in_validity_domain {
        return Ok(vec![ctx.invalid("max-density".into(), "quadrature")]);
    }
    let lhs = fi.sup_density_1d()?;
    Ok(vec![ctx.finalize("max-density".into(), lhs, b.value, 0.0, "quadrature", b.vacuous)])
}

fn check_varentropy(ctx: &Ctx) -> Result<Vec<ReportRow>> {
    let kappa = ctx.f.conv().kappa;
    let n = ctx.f.dim();
    let rhs = bounds::varentropy_bound(n, kappa)?;
    let (v, se) = ctx.f.varentropy(ctx.config.budget, ctx.seed_at(0))?;
    let method = if n == 1 { "quadrature" } else { "monte-carlo" };
    Ok(vec![ctx.finalize("varentropy".into(), v, rhs, se.unwrap_or(0.0), method, false)])
}

fn check_max_entropy(ctx: &Ctx) -> Result<Vec<ReportRow>> {
    let fi = ctx.f.isotropize(0)?;
    let n = fi.dim();
    let (h, se) = fi.differential_entropy(ctx.config.budget, ctx.seed_at(0))?;
    let rhs = 0.5 * n as f64 * (2.0 * std::f64::consts::PI * std::f64::consts::E).ln();
    let method = if n == 1 { "quadrature" } else { "monte-carlo" };
    Ok(vec![ctx.finalize("max-entropy".into(), h, rhs, se.unwrap_or(0.0), method, false)])
}

fn check_smoothing(ctx: &Ctx, t: f64) -> Result<Vec<ReportRow>> {
    let s = ctx.eff_s();
    let fi = ctx.f.isotropize(0)?;
    let b = bounds::smoothing_l1_bound(t, 1, s, ctx.bound());
    let quantity = format!("smoothing-l1[t={}]", fmt_param(t));
    if !b.in_validity_domain {
        return Ok(vec![ctx.invalid(quantity, "quadrature")]);
    }
    let lhs = crate::measures::l1_distance_to_smoothed(&fi, t)?;
    Ok(vec![ctx.finalize(quantity, lhs, b.value, 0.0, "quadrature", b.vacuous)])
}

fn check_large_dev(ctx: &Ctx) -> Result<Vec<ReportRow>> {
    let s = ctx.eff_s();
    let fi = ctx.f.isotropize(0)?;
    let lhs = bounds::large_dev_lower(1, s)?;
    let c0 = bounds::const_c0(1, s)?;
    let sup = fi.sup_density_1d()?;
    let cloud = fi.sample(ctx.seed_at(0), ctx.config.budget)?;
    let m = cloud.len() as f64;
    let hits = cloud
        .points()
        .iter()
        .filter(|pt| fi.density_1d(pt[0]) >= c0 * sup)
        .count() as f64;
    let p_hat = hits / m;
    let se = (p_hat * (1.0 - p_hat) / m).sqrt();
    Ok(vec![ctx.finalize("large-dev".into(), lhs, p_hat, se, "monte-carlo", false)])
}

fn check_pinsker(ctx: &Ctx, p: f64) -> Result<Vec<ReportRow>> {
    let g = ctx.need_g()?;
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::domain("p", p, "(0, 1]"));
    }
    let d_tv = distances::tv_distance(ctx.f, g, ctx.config.budget, ctx.seed_at(0))?;
    let d_p = distances::renyi_divergence(ctx.f, g, p, ctx.config.budget, ctx.seed_at(1))?;
    let lhs = 0.5 * p * d_tv.value * d_tv.value;
    let se =
        d_p.std_error.unwrap_or(0.0) + p * d_tv.value * d_tv.std_error.unwrap_or(0.0);
    let quantity = format!("pinsker-gilardoni[p={}]", fmt_param(p));
    Ok(vec![ctx.finalize(quantity, lhs, d_p.value, se, d_p.method, false)])
}

fn check_talagrand(ctx: &Ctx) -> Result<Vec<ReportRow>> {
    let g = ctx.need_g()?;
    if !g.is_std_gaussian() {
        return Err(Error::Precondition("talagrand needs g = standard gaussian".into()));
    }
    let w2 = if ctx.f.dim() == 1 {
        distances::wasserstein_1d(ctx.f, g, 2.0)?
    } else {
        let ca = ctx.f.sample(ctx.seed_at(1), ctx.config.cloud)?;
        let cb = g.sample(ctx.seed_at(2), ctx.config.cloud)?;
        distances::wasserstein_empirical(&ca, &cb, 2.0)?
    };
    let kl = distances::renyi_divergence(ctx.f, g, 1.0, ctx.config.budget, ctx.seed_at(0))?;
    let lhs = w2.value * w2.value;
    let se = 2.0 * kl.std_error.unwrap_or(0.0)
        + 2.0 * w2.value * w2.std_error.unwrap_or(0.0);
    Ok(vec![ctx.finalize("talagrand".into(), lhs, 2.0 * kl.value, se, kl.method, false)])
}

fn check_renyi_interval(ctx: &Ctx, p: f64, q: f64) -> Result<Vec<ReportRow>> {
    let g = ctx.need_g()?;
    if !(p > 0.0 && p < q && q < 1.0) {
        return Err(Error::domain("p", p, "0 < p < q < 1"));
    }
    let d_p = distances::renyi_divergence(ctx.f, g, p, ctx.config.budget, ctx.seed_at(0))?;
    let d_q = distances::renyi_divergence(ctx.f, g, q, ctx.config.budget, ctx.seed_at(1))?;
    let coeff = p * (1.0 - q) / ((1.0 - p) * (1.0 - p));
    let tag = format!("[p={},q={}]", fmt_param(p), fmt_param(q));
    let se_l = coeff * d_q.std_error.unwrap_or(0.0) + d_p.std_error.unwrap_or(0.0);
    let se_u = d_p.std_error.unwrap_or(0.0) + d_q.std_error.unwrap_or(0.0);
    Ok(vec![
        ctx.finalize(
            format!("renyi-interval-lower{tag}"),
            coeff * d_q.value,
            d_p.value,
            se_l,
            d_p.method,
            false,
        ),
        ctx.finalize(
            format!("renyi-interval-upper{tag}"),
            d_p.value,
            d_q.value,
            se_u,
            d_q.method,
            false,
        ),
    ])
}

fn check_bl_cap(ctx: &Ctx) -> Result<Vec<ReportRow>> {
    let g = ctx.need_g()?;
    let ca = ctx.f.sample(ctx.seed_at(0), ctx.config.cloud)?;
    let cb = g.sample(ctx.seed_at(1), ctx.config.cloud)?;
    let d_bl = distances::bl_distance(&ca, &cb)?;
    let d_tv = union_support_tv(&ca, &cb);
    let w1 = distances::wasserstein_empirical(&ca, &cb, 1.0)?;
    Ok(vec![
        ctx.finalize("bl-cap-tv".into(), d_bl.value, d_tv, 0.0, d_bl.method, false),
        ctx.finalize("bl-cap-w1".into(), d_bl.value, w1.value, 0.0, w1.method, false),
    ])
}

fn check_wp_monotone(ctx: &Ctx, p: f64, q: f64) -> Result<Vec<ReportRow>> {
    let g = ctx.need_g()?;
    if !(p >= 1.0 && q > p) {
        return Err(Error::domain("p", p, "1 <= p < q"));
    }
    let quantity = format!("wasserstein-monotone[p={},q={}]", fmt_param(p), fmt_param(q));
    let (w_p, w_q) = if ctx.f.dim() == 1 {
        (
            distances::wasserstein_1d(ctx.f, g, p)?,
            distances::wasserstein_1d(ctx.f, g, q)?,
        )
    } else {
        let ca = ctx.f.sample(ctx.seed_at(0), ctx.config.cloud)?;
        let cb = g.sample(ctx.seed_at(1), ctx.config.cloud)?;
        (
            distances::wasserstein_empirical(&ca, &cb, p)?,
            distances::wasserstein_empirical(&ca, &cb, q)?,
        )
    };
    Ok(vec![ctx.finalize(quantity, w_p.value, w_q.value, 0.0, w_p.method, false)])
}

fn check_renyi_monotone(ctx: &Ctx, p: f64, q: f64) -> Result<Vec<ReportRow>> {
    let g = ctx.need_g()?;
    if !(p > 0.0 && q > p) {
        return Err(Error::domain("p", p, "0 < p < q"));
    }
    let d_p = distances::renyi_divergence(ctx.f, g, p, ctx.config.budget, ctx.seed_at(0))?;
    let d_q = distances::renyi_divergence(ctx.f, g, q, ctx.config.budget, ctx.seed_at(1))?;
    let quantity = format!("renyi-monotone[p={},q={}]", fmt_param(p), fmt_param(q));
    let se = d_p.std_error.unwrap_or(0.0) + d_q.std_error.unwrap_or(0.0);
    Ok(vec![ctx.finalize(quantity, d_p.value, d_q.value, se, d_p.method, false)])
}

fn check_tsallis_dominates(ctx: &Ctx, p: f64) -> Result<Vec<ReportRow>> {
    let g = ctx.need_g()?;
    if !(p > 1.0) {
        return Err(Error::domain("p", p, "p > 1"));
    }
    let d_p = distances::renyi_divergence(ctx.f, g, p, ctx.config.budget, ctx.seed_at(0))?;
    let t_p = distances::tsallis_divergence(ctx.f, g, p, ctx.config.budget, ctx.seed_at(0))?;
    let quantity = format!("tsallis-dominates[p={}]", fmt_param(p));
    let se = d_p.std_error.unwrap_or(0.0) + t_p.std_error.unwrap_or(0.0);
    Ok(vec![ctx.finalize(quantity, d_p.value, t_p.value, se, t_p.method, false)])
}

fn check_renyi_infinite(ctx: &Ctx, p: f64) -> Result<Vec<ReportRow>> {
    let g = ctx.need_g()?;
    let d = distances::renyi_divergence(ctx.f, g, p, ctx.config.budget, ctx.seed_at(0))?;
    let quantity = format!("renyi-infinite[p={}]", fmt_param(p));
    // This check asserts analytic divergence: a finite value is a failure.
    let verdict = if d.finite { Verdict::Violated } else { Verdict::Infinite };
    Ok(vec![ReportRow {
        pair_id: ctx.pair.id.clone(),
        quantity,
        lhs: d.value,
        rhs: f64::INFINITY,
        slack: f64::INFINITY,
        verdict,
        method: "analytic".into(),
        std_error: None,
    }])
}

fn check_sinkhorn_exact(ctx: &Ctx) -> Result<Vec<ReportRow>> {
    let g = ctx.need_g()?;
    let m = ctx.config.cloud.min(200);
    let ca = ctx.f.sample(ctx.seed_at(0), m)?;
    let cb = g.sample(ctx.seed_at(1), m)?;
    let exact = transport::exact_ot_cost(&ca, &cb, 2.0)?;
    let sink = transport::sinkhorn_ot_cost(&ca, &cb, 2.0, 0.05, 4000)?;
    let lhs = (sink.distance - exact.distance).abs();
    let rhs = 0.05 * exact.distance + ctx.tol();
    Ok(vec![ctx.finalize("sinkhorn-exact".into(), lhs, rhs, 0.0, "sinkhorn", false)])
}

/// Run every selected check for every pair. Deterministic given the seed;
/// pairs are processed in `pair_id` order; an unconstructible spec fails
/// before any computation.
pub fn run_suite(config: &ExperimentConfig) -> Result<Vec<ReportRow>> {
    config.validate()?;
    let mut order: Vec<usize> = (0..config.pairs.len()).collect();
    order.sort_by(|&i, &j| config.pairs[i].id.cmp(&config.pairs[j].id));
    let mut rows = Vec::new();
    for (rank, &pi) in order.iter().enumerate() {
        let pair = &config.pairs[pi];
        let f = DistributionSpec::from_doc(&pair.f)?;
        let g = match &pair.g {
            Some(doc) => Some(DistributionSpec::from_doc(doc)?),
            None => None,
        };
        for (ci, check_str) in pair.checks.iter().enumerate() {
            let check = parse_check(check_str)?;
            let ctx = Ctx {
                config,
                pair,
                f: &f,
                g: g.as_ref(),
                seed: derive_seed(config.seed, ((rank as u64) << 8) | ci as u64),
            };
            rows.extend(run_check(&ctx, &check)?);
        }
    }
    Ok(rows)
}

/// Minimal universal constant making `lhs <= c * rhs_part` hold on every
/// row: `max(lhs / rhs_part)`. Empty input is an error; all-zero `lhs`
/// yields 0.
pub fn fit_constant(rows: &[(f64, f64)]) -> Result<f64> {
    if rows.is_empty() {
        return Err(Error::Precondition("cannot fit a constant from zero rows".into()));
    }
    let mut c: f64 = 0.0;
    for &(lhs, rhs) in rows {
        if !(rhs > 0.0) || !rhs.is_finite() {
            return Err(Error::Precondition(format!(
                "rhs parts must be positive and finite, got {rhs}"
            )));
        }
        if !lhs.is_finite() {
            return Err(Error::Precondition(format!("lhs must be finite, got {lhs}")));
        }
        c = c.max(lhs / rhs);
    }
    Ok(c)
}

/// Comparison-theorem formula ids and the constant slot each one exercises.
pub const THEOREM_SLOTS: [(&str, &str); 5] = [
    ("thm-tv-bl", "c_tvbl"),
    ("thm-w1-bl", "c_w1bl"),
    ("thm-wq-wp", "c_wqwp"),
    ("thm-kl-tv", "c_kl"),
    ("thm-tsallis-tv", "c_tsallis"),
];

/// Fit the minimal multiplicative constant per comparison theorem: run the
/// suite with all constant slots at 1 and take the max `lhs / rhs` over the
/// valid finite rows of each theorem.
pub fn fit_suite(config: &ExperimentConfig) -> Result<BTreeMap<String, f64>> {
    let mut unit = config.clone();
    unit.bound_config.universal_constants.clear();
    let rows = run_suite(&unit)?;
    let mut grouped: BTreeMap<String, Vec<(f64, f64)>> = BTreeMap::new();
    for r in &rows {
        let base = r.quantity.split('[').next().unwrap_or_default();
        if THEOREM_SLOTS.iter().any(|(id, _)| *id == base)
            && !matches!(r.verdict, Verdict::InvalidDomain | Verdict::Infinite)
            && r.lhs.is_finite()
            && r.rhs.is_finite()
            && r.rhs > 0.0
        {
            grouped.entry(base.to_string()).or_default().push((r.lhs, r.rhs));
        }
    }
    let mut out = BTreeMap::new();
    for (k, v) in grouped {
        out.insert(k, fit_constant(&v)?);
    }
    Ok(out)
}

/// The bundled default verification suite (TOML).
pub const BUNDLED_CONFIG_TOML: &str = include_str!("../configs/default.toml");

/// Report output formats.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
}

impl std::str::FromStr for ReportFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(ReportFormat::Csv),
            "json" => Ok(ReportFormat::Json),
            other => Err(Error::Config(format!("format must be csv or json, got `{other}`"))),
        }
    }
}

fn fmt_num(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x == f64::INFINITY {
        "inf".into()
    } else if x == f64::NEG_INFINITY {
        "-inf".into()
    } else {
        format!("{x}")
    }
}

/// Render rows to a byte-stable string in the chosen format.
pub fn render(rows: &[ReportRow], format: ReportFormat) -> Result<String> {
    match format {
        ReportFormat::Csv => {
            let mut wtr = csv::Writer::from_writer(Vec::new());
            wtr.write_record([
                "pair_id", "quantity", "lhs", "rhs", "slack", "verdict", "method", "std_error",
            ])
            .map_err(|e| Error::Solver(format!("csv: {e}")))?;
            for r in rows {
                wtr.write_record([
                    r.pair_id.clone(),
                    r.quantity.clone(),
                    fmt_num(r.lhs),
                    fmt_num(r.rhs),
                    fmt_num(r.slack),
                    r.verdict.to_string(),
                    r.method.clone(),
                    r.std_error.map(fmt_num).unwrap_or_default(),
                ])
                .map_err(|e| Error::Solver(format!("csv: {e}")))?;
            }
            let bytes = wtr
                .into_inner()
                .map_err(|e| Error::Solver(format!("csv: {e}")))?;
            Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
        }
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(rows)
                .map_err(|e| Error::Solver(format!("json: {e}")))?;
            s.push('\n');
            Ok(s)
        }
    }
}

/// Write the rendered report to `path`.
pub fn emit(rows: &[ReportRow], format: ReportFormat, path: &Path) -> Result<()> {
    let text = render(rows, format)?;
    std::fs::write(path, text).map_err(|e| Error::Io {
        path: path.display().to_string(),
        source: e,
    })
}
