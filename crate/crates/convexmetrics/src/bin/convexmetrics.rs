//! Thin command-line front end over the library: compute one distance,
//! evaluate one bound formula, run the full verification suite, or fit the
//! universal constants.
//!
//! Exit codes: 0 when every check holds, 1 when any verdict is `violated`,
//! 2 on configuration or usage errors.
//!
//! Convention reminder: total variation is the L1 distance of densities and
//! ranges over [0, 2].

use clap::{Args, Parser, Subcommand};
use convexmetrics::bounds::{self, BoundConfig, BoundResult};
use convexmetrics::harness::{
    self, ExperimentConfig, ReportFormat, Verdict,
};
use convexmetrics::measures::{derive_seed, DistributionSpec};
use convexmetrics::{distances, Error};
use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

#[derive(Parser)]
#[command(
    name = "convexmetrics",
    about = "Distances, divergences and explicit comparison bounds for s-concave probability measures. \
             Total variation uses the integral |f - g| convention (range [0, 2])."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonOpts {
    /// Experiment config (.json or .toml); defaults to the bundled suite.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Root RNG seed; overrides the config value. The CONVEXMETRICS_SEED
    /// environment variable is used when this flag is absent.
    #[arg(long)]
    seed: Option<u64>,
    /// Monte Carlo sample budget override.
    #[arg(long)]
    budget: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Compute one distance between one configured pair.
    Dist {
        /// One of: tv, bl, wasserstein, renyi, tsallis.
        metric: String,
        #[command(flatten)]
        common: CommonOpts,
        /// Pair id from the config (default: first pair in id order).
        #[arg(long)]
        pair: Option<String>,
        /// Order parameter p (Wasserstein/Renyi/Tsallis).
        #[arg(long)]
        order: Option<f64>,
    },
    /// Evaluate one bound formula from explicit numeric inputs.
    Bound {
        /// Formula id, e.g. thm-tv-bl, tail-deviation, grunbaum, minimize.
        formula: String,
        /// Comma-separated numeric inputs, e.g. "d_bl=0.1,n=1,s=-0.25".
        #[arg(long, default_value = "")]
        inputs: String,
        /// Optional config supplying constant slots and alpha.
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Run the full verification suite and emit a report.
    Verify {
        #[command(flatten)]
        common: CommonOpts,
        /// Report destination (default: stdout).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Report format.
        #[arg(long, default_value = "csv")]
        format: String,
        /// Also fit the minimal universal constants and print them.
        #[arg(long)]
        fit_constants: bool,
    },
    /// Fit the minimal universal constants over the configured grid.
    Fit {
        #[command(flatten)]
        common: CommonOpts,
        /// Output destination (default: stdout).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Output format.
        #[arg(long, default_value = "json")]
        format: String,
    },
}

fn load_config(common: &CommonOpts) -> Result<ExperimentConfig, Error> {
    let mut cfg = match &common.config {
        Some(path) => ExperimentConfig::load(path)?,
        None => ExperimentConfig::from_toml_str(harness::BUNDLED_CONFIG_TOML)?,
    };
    if let Some(seed) = common.seed {
        cfg.seed = seed;
    } else if let Ok(env) = std::env::var("CONVEXMETRICS_SEED") {
        cfg.seed = env
            .parse()
            .map_err(|_| Error::Config(format!("CONVEXMETRICS_SEED must be an integer, got `{env}`")))?;
    }
    if let Some(budget) = common.budget {
        cfg.budget = budget;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn write_or_print(text: &str, out: &Option<PathBuf>) -> Result<(), Error> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Error::Io {
            path: path.display().to_string(),
            source: e,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn num_json(x: f64) -> serde_json::Value {
    if x.is_finite() {
        serde_json::json!(x)
    } else {
        serde_json::Value::Null
    }
}

fn run_dist(
    metric: &str,
    common: &CommonOpts,
    pair_id: &Option<String>,
    order: Option<f64>,
) -> Result<(), Error> {
    let cfg = load_config(common)?;
    if cfg.pairs.is_empty() {
        return Err(Error::Config("config has no pairs".into()));
    }
    let mut ids: Vec<&str> = cfg.pairs.iter().map(|p| p.id.as_str()).collect();
    ids.sort();
    let want = pair_id.as_deref().unwrap_or(ids[0]);
    let pair = cfg
        .pairs
        .iter()
        .find(|p| p.id == want)
        .ok_or_else(|| Error::Config(format!("no pair with id `{want}`")))?;
    let f = DistributionSpec::from_doc(&pair.f)?;
    let g = pair
        .g
        .as_ref()
        .map(DistributionSpec::from_doc)
        .transpose()?
        .ok_or_else(|| Error::Config(format!("pair `{want}` has no second measure")))?;
    let seed = cfg.seed;
    let est = match metric {
        "tv" => distances::tv_distance(&f, &g, cfg.budget, seed)?,
        "bl" => {
            let ca = f.sample(derive_seed(seed, 0), cfg.cloud)?;
            let cb = g.sample(derive_seed(seed, 1), cfg.cloud)?;
            distances::bl_distance(&ca, &cb)?
        }
        "wasserstein" | "w" => {
            let p = order.unwrap_or(1.0);
            if f.dim() == 1 {
                distances::wasserstein_1d(&f, &g, p)?
            } else {
                let ca = f.sample(derive_seed(seed, 0), cfg.cloud)?;
                let cb = g.sample(derive_seed(seed, 1), cfg.cloud)?;
                distances::wasserstein_empirical(&ca, &cb, p)?
            }
        }
        "renyi" => distances::renyi_divergence(&f, &g, order.unwrap_or(1.0), cfg.budget, seed)?,
        "tsallis" => distances::tsallis_divergence(&f, &g, order.unwrap_or(2.0), cfg.budget, seed)?,
        other => return Err(Error::Config(format!("unknown metric `{other}`"))),
    };
    let out = serde_json::json!({
        "pair_id": want,
        "metric": metric,
        "order": order,
        "value": num_json(est.value),
        "finite": est.finite,
        "method": est.method,
        "std_error": est.std_error,
    });
    println!("{}", serde_json::to_string_pretty(&out).expect("json"));
    Ok(())
}

fn parse_inputs(text: &str) -> Result<BTreeMap<String, f64>, Error> {
    let mut map = BTreeMap::new();
    for part in text.split(',').filter(|p| !p.trim().is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("input `{part}` must look like key=value")))?;
        let val: f64 = v
            .trim()
            .parse()
            .map_err(|_| Error::Config(format!("input `{part}`: bad number `{v}`")))?;
        map.insert(k.trim().to_string(), val);
    }
    Ok(map)
}

fn bound_json(b: &BoundResult) -> serde_json::Value {
    serde_json::json!({
        "formula_id": b.formula_id,
        "value": num_json(b.value),
        "finite": b.value.is_finite(),
        "in_validity_domain": b.in_validity_domain,
        "vacuous": b.vacuous,
        "alt_value": b.alt_value.map(num_json),
        "inputs": b.inputs.iter().map(|(k, v)| (k.to_string(), *v)).collect::<BTreeMap<_, _>>(),
    })
}

fn scalar_json(formula: &str, value: f64, inputs: &BTreeMap<String, f64>) -> serde_json::Value {
    serde_json::json!({
        "formula_id": formula,
        "value": num_json(value),
        "finite": value.is_finite(),
        "inputs": inputs,
    })
}

fn run_bound(formula: &str, inputs: &str, config: &Option<PathBuf>) -> Result<(), Error> {
    let bound_cfg = match config {
        Some(path) => ExperimentConfig::load(path)?.bound_config,
        None => BoundConfig::default(),
    };
    let vals = parse_inputs(inputs)?;
    let get = |k: &str| -> Result<f64, Error> {
        vals.get(k)
            .copied()
            .ok_or_else(|| Error::Config(format!("formula `{formula}` needs input `{k}`")))
    };
    let get_n = |k: &str| -> Result<usize, Error> { Ok(get(k)? as usize) };
    let out = match formula {
        "minimize" => scalar_json(
            formula,
            bounds::minimize_lemma(get("A")?, get("B")?, get("m")?, get("p")?, get("M")?)?,
            &vals,
        ),
        "grunbaum" => scalar_json(formula, bounds::grunbaum_lower(get("s")?)?, &vals),
        "varentropy" => scalar_json(
            formula,
            bounds::varentropy_bound(get_n("n")?, get("kappa")?)?,
            &vals,
        ),
        "large-dev" => scalar_json(formula, bounds::large_dev_lower(get_n("n")?, get("s")?)?, &vals),
        "const-c" => scalar_json(formula, bounds::const_c(get("p")?, get("s")?)?, &vals),
        "const-d0" => scalar_json(formula, bounds::const_d0(get_n("n")?, get("s")?)?, &vals),
        "const-c0" => scalar_json(formula, bounds::const_c0(get_n("n")?, get("s")?)?, &vals),
        "const-c2" => scalar_json(formula, bounds::const_c2(get("s")?)?, &vals),
        "tail-deviation" => bound_json(&bounds::tail_bound_deviation(
            get("u")?,
            get_n("n")?,
            get("s")?,
            &bound_cfg,
        )),
        "max-density" => bound_json(&bounds::max_density_bound(get_n("n")?, get("s")?, &bound_cfg)),
        "smoothing-l1" => bound_json(&bounds::smoothing_l1_bound(
            get("t")?,
            get_n("n")?,
            get("s")?,
            &bound_cfg,
        )),
        "thm-tv-bl" => bound_json(&bounds::thm_tv_from_bl(
            get("d_bl")?,
            get_n("n")?,
            get("s")?,
            &bound_cfg,
        )),
        "thm-w1-bl" => bound_json(&bounds::thm_w1_from_bl(
            get("d_bl")?,
            get_n("n")?,
            get("s")?,
            &bound_cfg,
        )),
        "thm-wq-wp" => bound_json(&bounds::thm_wq_from_wp(
            get("w_p")?,
            get("p")?,
            get("q")?,
            get_n("n")?,
            get("s")?,
            &bound_cfg,
        )),
        "thm-kl-tv" => bound_json(&bounds::thm_kl_from_tv(
            get("d_tv")?,
            get_n("n")?,
            get("s")?,
            &bound_cfg,
        )),
        "thm-tsallis-tv" => bound_json(&bounds::thm_tsallis_from_tv(
            get("d_tv")?,
            get_n("n")?,
            get("s")?,
            get("p")?,
            get("M")?,
            &bound_cfg,
        )),
        other => return Err(Error::Config(format!("unknown formula `{other}`"))),
    };
    println!("{}", serde_json::to_string_pretty(&out).expect("json"));
    Ok(())
}

fn run_verify(
    common: &CommonOpts,
    out: &Option<PathBuf>,
    format: &str,
    fit_constants: bool,
) -> Result<bool, Error> {
    let cfg = load_config(common)?;
    let format = ReportFormat::from_str(format)?;
    let rows = harness::run_suite(&cfg)?;
    let text = harness::render(&rows, format)?;
    write_or_print(&text, out)?;
    let violated = rows.iter().filter(|r| r.verdict == Verdict::Violated).count();
    eprintln!(
        "{} checks: {} holds, {} holds-vacuous, {} violated, {} invalid-domain, {} infinite",
        rows.len(),
        rows.iter().filter(|r| r.verdict == Verdict::Holds).count(),
        rows.iter().filter(|r| r.verdict == Verdict::HoldsVacuous).count(),
        violated,
        rows.iter().filter(|r| r.verdict == Verdict::InvalidDomain).count(),
        rows.iter().filter(|r| r.verdict == Verdict::Infinite).count(),
    );
    if fit_constants {
        let fitted = harness::fit_suite(&cfg)?;
        eprintln!(
            "fitted constants: {}",
            serde_json::to_string(&fitted).expect("json")
        );
    }
    Ok(violated == 0)
}

fn run_fit(common: &CommonOpts, out: &Option<PathBuf>, format: &str) -> Result<(), Error> {
    let cfg = load_config(common)?;
    let fitted = harness::fit_suite(&cfg)?;
    let text = match format {
        "json" => {
            let mut s = serde_json::to_string_pretty(&fitted).expect("json");
            s.push('\n');
            s
        }
        "csv" => {
            let mut s = String::from("formula,constant\n");
            for (k, v) in &fitted {
                s.push_str(&format!("{k},{v}\n"));
            }
            s
        }
        other => return Err(Error::Config(format!("format must be csv or json, got `{other}`"))),
    };
    write_or_print(&text, out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result: Result<bool, Error> = match &cli.command {
        Command::Dist {
            metric,
            common,
            pair,
            order,
        } => run_dist(metric, common, pair, *order).map(|()| true),
        Command::Bound {
            formula,
            inputs,
            config,
        } => run_bound(formula, inputs, config).map(|()| true),
        Command::Verify {
            common,
            out,
            format,
            fit_constants,
        } => run_verify(common, out, format, *fit_constants),
        Command::Fit { common, out, format } => run_fit(common, out, format).map(|()| true),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
