//! Parametric s-concave distribution families.
//!
//! Every spec is an (optional) affine image of a base family. Affine maps
//! preserve the convexity parameter `s`, so the bookkeeping set up at
//! construction survives isotropization.

use crate::error::{Error, Result};
use crate::measures::convexity::ConvexityParams;
use crate::measures::empirical::EmpiricalMeasure;
use crate::measures::tails::{Tail, TailProfile};
use crate::quad;
use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{ChiSquared, Distribution, StandardNormal};
use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal, StudentsT};
use statrs::function::gamma::ln_gamma;

const LN_2PI: f64 = 1.837_877_066_409_345_5;

/// Base families before affine reparametrization.
#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    StdGaussian { n: usize },
    /// Heavy-tailed density `C (1+|x|^2)^{-(n+beta)/2}` with `beta > 0`;
    /// this is `s`-concave with `s = -1/beta`.
    CauchyType { n: usize, beta: f64 },
    /// Density `e^{-(x+1)}` on `x >= -1`: a centered standard exponential.
    ExponentialCentered,
    UniformInterval { a: f64, b: f64 },
}

#[derive(Debug, Clone)]
struct Affine {
    shift: DVector<f64>,
    scale: DMatrix<f64>,
    inv: DMatrix<f64>,
    abs_det: f64,
}

impl Affine {
    fn new(shift: DVector<f64>, scale: DMatrix<f64>) -> Result<Self> {
        let n = shift.len();
        if scale.nrows() != n || scale.ncols() != n {
            return Err(Error::Construction("affine scale shape mismatch".into()));
        }
        let det = scale.determinant();
        if det.abs() < 1e-300 || !det.is_finite() {
            return Err(Error::Construction("affine scale not invertible".into()));
        }
        let inv = scale
            .clone()
            .try_inverse()
            .ok_or_else(|| Error::Construction("affine scale not invertible".into()))?;
        Ok(Affine {
            shift,
            scale,
            inv,
            abs_det: det.abs(),
        })
    }

    fn identity(n: usize) -> Self {
        Affine {
            shift: DVector::zeros(n),
            scale: DMatrix::identity(n, n),
            inv: DMatrix::identity(n, n),
            abs_det: 1.0,
        }
    }

    /// `x = scale * z + shift`.
    fn forward(&self, z: &DVector<f64>) -> DVector<f64> {
        &self.scale * z + &self.shift
    }

    fn backward(&self, x: &DVector<f64>) -> DVector<f64> {
        &self.inv * (x - &self.shift)
    }

    /// Composition: first `self`, then `outer`.
    fn then(&self, outer: &Affine) -> Result<Affine> {
        Affine::new(
            &outer.scale * &self.shift + &outer.shift,
            &outer.scale * &self.scale,
        )
    }
}

/// Serializable form of a distribution spec.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum FamilyDoc {
    StdGaussian { n: usize },
    Gaussian { mean: Vec<f64>, covariance: Vec<Vec<f64>> },
    CauchyType { n: usize, beta: f64 },
    ExponentialCentered,
    UniformInterval { a: f64, b: f64 },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AffineDoc {
    pub shift: Vec<f64>,
    pub scale: Vec<Vec<f64>>,
}

/// JSON document form: `{family, params, affine: {shift, scale}, seed-policy}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpecDoc {
    #[serde(flatten)]
    pub family: FamilyDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub affine: Option<AffineDoc>,
    #[serde(
        rename = "seed-policy",
        default,
        skip_serializing_if = "Option::is_none"
    )]
    pub seed_policy: Option<String>,
}

/// A parametric s-concave measure with exact convexity bookkeeping, density,
/// sampler and (in 1D) CDF/quantile access.
#[derive(Debug, Clone)]
pub struct DistributionSpec {
    family: Family,
    affine: Option<Affine>,
    conv: ConvexityParams,
    /// Normalizing constant of the base density.
    normalization: f64,
}

impl DistributionSpec {
    pub fn std_gaussian(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Construction("dimension must be >= 1".into()));
        }
        Ok(DistributionSpec {
            family: Family::StdGaussian { n },
            affine: None,
            conv: ConvexityParams::from_s(0.0, n)?,
            normalization: (-0.5 * n as f64 * LN_2PI).exp(),
        })
    }

    /// General Gaussian: a standard Gaussian pushed through the Cholesky
    /// factor of `cov` and shifted by `mean`.
    pub fn gaussian(mean: Vec<f64>, cov: Vec<Vec<f64>>) -> Result<Self> {
        let n = mean.len();
        if n == 0 || cov.len() != n || cov.iter().any(|r| r.len() != n) {
            return Err(Error::Construction("gaussian mean/covariance shape mismatch".into()));
        }
        let sigma = DMatrix::from_fn(n, n, |i, j| cov[i][j]);
        if (&sigma - sigma.transpose()).amax() > 1e-10 {
            return Err(Error::Construction("covariance must be symmetric".into()));
        }
        let chol = sigma
            .clone()
            .cholesky()
            .ok_or_else(|| Error::Construction("covariance must be positive definite".into()))?;
        let base = DistributionSpec::std_gaussian(n)?;
        base.pushforward(DVector::from_vec(mean), chol.l())
    }

    pub fn cauchy_type(n: usize, beta: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Construction("dimension must be >= 1".into()));
        }
        if !(beta > 0.0) || !beta.is_finite() {
            return Err(Error::Construction(format!("cauchy-type needs beta > 0, got {beta}")));
        }
        let nf = n as f64;
        // C = Gamma((n+beta)/2) / (pi^{n/2} Gamma(beta/2))
        let ln_c = ln_gamma((nf + beta) / 2.0)
            - ln_gamma(beta / 2.0)
            - 0.5 * nf * std::f64::consts::PI.ln();
        Ok(DistributionSpec {
            family: Family::CauchyType { n, beta },
            affine: None,
            conv: ConvexityParams::from_s(-1.0 / beta, n)?,
            normalization: ln_c.exp(),
        })
    }

    pub fn exponential_centered() -> Self {
        DistributionSpec {
            family: Family::ExponentialCentered,
            affine: None,
            conv: ConvexityParams::from_s(0.0, 1).expect("s = 0 is valid"),
            normalization: 1.0,
        }
    }

    pub fn uniform_interval(a: f64, b: f64) -> Result<Self> {
        if !(a < b) || !a.is_finite() || !b.is_finite() {
            return Err(Error::Construction(format!("uniform-interval needs a < b, got [{a}, {b}]")));
        }
        Ok(DistributionSpec {
            family: Family::UniformInterval { a, b },
            affine: None,
            conv: ConvexityParams::from_s(1.0, 1).expect("s = 1 is valid in 1D"),
            normalization: 1.0 / (b - a),
        })
    }

    pub fn from_doc(doc: &SpecDoc) -> Result<Self> {
        let base = match &doc.family {
            FamilyDoc::StdGaussian { n } => DistributionSpec::std_gaussian(*n)?,
            FamilyDoc::Gaussian { mean, covariance } => {
                DistributionSpec::gaussian(mean.clone(), covariance.clone())?
            }
            FamilyDoc::CauchyType { n, beta } => DistributionSpec::cauchy_type(*n, *beta)?,
            FamilyDoc::ExponentialCentered => DistributionSpec::exponential_centered(),
            FamilyDoc::UniformInterval { a, b } => DistributionSpec::uniform_interval(*a, *b)?,
        };
        match &doc.affine {
            None => Ok(base),
            Some(aff) => {
                let n = base.dim();
                if aff.shift.len() != n || aff.scale.len() != n {
                    return Err(Error::Construction("affine dimension mismatch".into()));
                }
                let scale = DMatrix::from_fn(n, n, |i, j| aff.scale[i][j]);
                base.pushforward(DVector::from_vec(aff.shift.clone()), scale)
            }
        }
    }

    pub fn to_doc(&self) -> SpecDoc {
        let family = match &self.family {
            Family::StdGaussian { n } => FamilyDoc::StdGaussian { n: *n },
            Family::CauchyType { n, beta } => FamilyDoc::CauchyType { n: *n, beta: *beta },
            Family::ExponentialCentered => FamilyDoc::ExponentialCentered,
            Family::UniformInterval { a, b } => FamilyDoc::UniformInterval { a: *a, b: *b },
        };
        let affine = self.affine.as_ref().map(|a| AffineDoc {
            shift: a.shift.iter().copied().collect(),
            scale: (0..a.scale.nrows())
                .map(|i| (0..a.scale.ncols()).map(|j| a.scale[(i, j)]).collect())
                .collect(),
        });
        SpecDoc {
            family,
            affine,
            seed_policy: None,
        }
    }

    /// Affine image `x = scale * X + shift`; preserves `s`.
    pub fn pushforward(&self, shift: DVector<f64>, scale: DMatrix<f64>) -> Result<Self> {
        let n = self.dim();
        if n == 1 && scale[(0, 0)] < 0.0 {
            return Err(Error::Construction("1D affine scale must be positive".into()));
        }
        let new = Affine::new(shift, scale)?;
        let composed = match &self.affine {
            None => new,
            Some(existing) => existing.then(&new)?,
        };
        Ok(DistributionSpec {
            family: self.family.clone(),
            affine: Some(composed),
            conv: self.conv,
            normalization: self.normalization,
        })
    }

    pub fn dim(&self) -> usize {
        match &self.family {
            Family::StdGaussian { n } | Family::CauchyType { n, .. } => *n,
            Family::ExponentialCentered | Family::UniformInterval { .. } => 1,
        }
    }

    pub fn conv(&self) -> ConvexityParams {
        self.conv
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn normalization(&self) -> f64 {
        self.normalization
    }

    /// True iff this is exactly the standard Gaussian (no affine applied,
    /// or an identity affine).
    pub fn is_std_gaussian(&self) -> bool {
        matches!(self.family, Family::StdGaussian { .. })
            && match &self.affine {
                None => true,
                Some(a) => {
                    a.shift.amax() < 1e-12
                        && (&a.scale - DMatrix::identity(a.scale.nrows(), a.scale.ncols())).amax()
                            < 1e-12
                }
            }
    }

    fn base_ln_density(&self, z: &DVector<f64>) -> f64 {
        match &self.family {
            Family::StdGaussian { n } => {
                -0.5 * (*n as f64) * LN_2PI - 0.5 * z.norm_squared()
            }
            Family::CauchyType { n, beta } => {
                self.normalization.ln() - 0.5 * (*n as f64 + beta) * (1.0 + z.norm_squared()).ln()
            }
            Family::ExponentialCentered => {
                let x = z[0];
                if x >= -1.0 {
                    -(x + 1.0)
                } else {
                    f64::NEG_INFINITY
                }
            }
            Family::UniformInterval { a, b } => {
                let x = z[0];
                if x >= *a && x <= *b {
                    -(b - a).ln()
                } else {
                    f64::NEG_INFINITY
                }
            }
        }
    }

    pub fn log_density(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.dim() {
            return Err(Error::Precondition(format!(
                "point dimension {} does not match spec dimension {}",
                x.len(),
                self.dim()
            )));
        }
        let xv = DVector::from_column_slice(x);
        Ok(match &self.affine {
            None => self.base_ln_density(&xv),
            Some(a) => self.base_ln_density(&a.backward(&xv)) - a.abs_det.ln(),
        })
    }

    pub fn density(&self, x: &[f64]) -> Result<f64> {
        Ok(self.log_density(x)?.exp())
    }

    /// Shorthand for 1D densities.
    pub fn density_1d(&self, x: f64) -> f64 {
        self.density(&[x]).unwrap_or(0.0)
    }

    fn require_1d(&self) -> Result<()> {
        if self.dim() != 1 {
            return Err(Error::Precondition("operation requires dim = 1".into()));
        }
        Ok(())
    }

    fn affine_1d(&self) -> (f64, f64) {
        match &self.affine {
            None => (0.0, 1.0),
            Some(a) => (a.shift[0], a.scale[(0, 0)]),
        }
    }

    fn base_support_1d(&self) -> (f64, f64) {
        match &self.family {
            Family::StdGaussian { .. } | Family::CauchyType { .. } => {
                (f64::NEG_INFINITY, f64::INFINITY)
            }
            Family::ExponentialCentered => (-1.0, f64::INFINITY),
            Family::UniformInterval { a, b } => (*a, *b),
        }
    }

    /// Support interval of the (affine-transformed) 1D density.
    pub fn support_1d(&self) -> Result<(f64, f64)> {
        self.require_1d()?;
        let (lo, hi) = self.base_support_1d();
        let (m, s) = self.affine_1d();
        Ok((s * lo + m, s * hi + m))
    }

    fn base_tails_1d(&self) -> (Tail, Tail) {
        match &self.family {
            Family::StdGaussian { .. } => (Tail::scaled(1.0, 0.0, 0.0), Tail::scaled(1.0, 0.0, 0.0)),
            Family::CauchyType { beta, .. } => {
                let t = Tail::scaled(0.0, 0.0, 1.0 + beta);
                (t, t)
            }
            Family::ExponentialCentered => {
                (Tail::scaled(0.0, 0.0, 0.0), Tail::scaled(0.0, 1.0, 0.0))
            }
            Family::UniformInterval { .. } => {
                (Tail::scaled(0.0, 0.0, 0.0), Tail::scaled(0.0, 0.0, 0.0))
            }
        }
    }

    /// Tail asymptotics of the 1D density, adjusted for the affine map.
    pub fn tail_profile_1d(&self) -> Result<TailProfile> {
        self.require_1d()?;
        let (lo, hi) = self.support_1d()?;
        let (left, right) = self.base_tails_1d();
        let (m, s) = self.affine_1d();
        // x = s z + m: -log f(x) = -log f_z((x-m)/s) + log s.
        let map = |t: Tail, sign: f64| Tail {
            gauss: t.gauss / (s * s),
            lin: t.lin / s - sign * t.gauss * m / (s * s),
            logpow: t.logpow,
        };
        Ok(TailProfile {
            lo,
            hi,
            left: map(left, -1.0),
            right: map(right, 1.0),
        })
    }

    fn base_cdf_1d(&self, z: f64) -> f64 {
        match &self.family {
            Family::StdGaussian { .. } => Normal::standard().cdf(z),
            Family::CauchyType { beta, .. } => {
                // X = T / sqrt(beta) with T ~ t_beta.
                StudentsT::new(0.0, 1.0 / beta.sqrt(), *beta)
                    .expect("validated at construction")
                    .cdf(z)
            }
            Family::ExponentialCentered => {
                if z < -1.0 {
                    0.0
                } else {
                    1.0 - (-(z + 1.0)).exp()
                }
            }
            Family::UniformInterval { a, b } => ((z - a) / (b - a)).clamp(0.0, 1.0),
        }
    }

    fn base_quantile_1d(&self, u: f64) -> f64 {
        match &self.family {
            Family::StdGaussian { .. } => Normal::standard().inverse_cdf(u),
            Family::CauchyType { beta, .. } => {
                // statrs' inverse regularized beta is unreliable in the
                // extreme tails; switch to the polynomial tail asymptotic
                // P(Z > t) ~ C t^{-beta} / beta there.
                let eps = 1e-8;
                if u < eps {
                    -(self.normalization / (beta * u)).powf(1.0 / beta)
                } else if u > 1.0 - eps {
                    (self.normalization / (beta * (1.0 - u))).powf(1.0 / beta)
                } else {
                    StudentsT::new(0.0, 1.0 / beta.sqrt(), *beta)
                        .expect("validated at construction")
                        .inverse_cdf(u)
                }
            }
            Family::ExponentialCentered => -1.0 - (1.0 - u).ln(),
            Family::UniformInterval { a, b } => a + u * (b - a),
        }
    }

    pub fn cdf_1d(&self, x: f64) -> Result<f64> {
        self.require_1d()?;
        let (m, s) = self.affine_1d();
        Ok(self.base_cdf_1d((x - m) / s))
    }

    pub fn quantile_1d(&self, u: f64) -> Result<f64> {
        self.require_1d()?;
        if !(u > 0.0 && u < 1.0) {
            return Err(Error::domain("u", u, "(0, 1)"));
        }
        let (m, s) = self.affine_1d();
        Ok(s * self.base_quantile_1d(u) + m)
    }

    fn sample_base(&self, rng: &mut ChaCha8Rng) -> DVector<f64> {
        match &self.family {
            Family::StdGaussian { n } => {
                DVector::from_fn(*n, |_, _| StandardNormal.sample(rng))
            }
            Family::CauchyType { n, beta } => {
                if *n == 1 {
                    // Inverse CDF keeps the 1D path deterministic and exact.
                    let u: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
                    DVector::from_element(1, self.base_quantile_1d(u))
                } else {
                    // Gaussian / chi scale mixture: Z / sqrt(W), W ~ chi2(beta).
                    let chi = ChiSquared::new(*beta).expect("beta > 0");
                    let w: f64 = chi.sample(rng);
                    let g = DVector::from_fn(*n, |_, _| {
                        let v: f64 = StandardNormal.sample(rng);
                        v
                    });
                    g / w.sqrt()
                }
            }
            Family::ExponentialCentered | Family::UniformInterval { .. } => {
                let u: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
                DVector::from_element(1, self.base_quantile_1d(u))
            }
        }
    }

    /// Draw `m` i.i.d. points with uniform weights; deterministic given the
    /// seed.
    pub fn sample(&self, seed: u64, m: usize) -> Result<EmpiricalMeasure> {
        if m == 0 {
            return Err(Error::Precondition("sample size must be >= 1".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let aff = self.affine.clone().unwrap_or_else(|| Affine::identity(self.dim()));
        let mut points = Vec::with_capacity(m);
        for _ in 0..m {
            let z = self.sample_base(&mut rng);
            let x = aff.forward(&z);
            points.push(x.iter().copied().collect());
        }
        EmpiricalMeasure::uniform(points)
    }

    fn base_mean_var(&self) -> Result<(f64, f64)> {
        match &self.family {
            Family::StdGaussian { .. } => Ok((0.0, 1.0)),
            Family::CauchyType { beta, .. } => {
                if *beta <= 1.0 {
                    Err(Error::Precondition(format!(
                        "cauchy-type with beta = {beta} <= 1 has no mean"
                    )))
                } else if *beta <= 2.0 {
                    Ok((0.0, f64::INFINITY))
                } else {
                    Ok((0.0, 1.0 / (beta - 2.0)))
                }
            }
            Family::ExponentialCentered => Ok((0.0, 1.0)),
            Family::UniformInterval { a, b } => Ok(((a + b) / 2.0, (b - a) * (b - a) / 12.0)),
        }
    }

    /// Exact mean vector (closed form for every family).
    pub fn mean_vec(&self) -> Result<Vec<f64>> {
        let (mb, _) = self.base_mean_var()?;
        let n = self.dim();
        let base_mean = DVector::from_element(n, mb);
        Ok(match &self.affine {
            None => base_mean.iter().copied().collect(),
            Some(a) => a.forward(&base_mean).iter().copied().collect(),
        })
    }

    /// Exact covariance matrix. The base families are rotation-invariant
    /// (or 1D), so the base covariance is `v I` and the affine image has
    /// covariance `v S S^T`.
    pub fn covariance(&self) -> Result<DMatrix<f64>> {
        let (_, v) = self.base_mean_var()?;
        if !v.is_finite() {
            return Err(Error::Precondition("infinite variance regime".into()));
        }
        let n = self.dim();
        Ok(match &self.affine {
            None => DMatrix::identity(n, n) * v,
            Some(a) => &a.scale * a.scale.transpose() * v,
        })
    }

    /// Full affine whitening to zero mean and identity covariance.
    ///
    /// Closed-form moments exist for every family here, so `sample_budget`
    /// is only consulted as a fallback; it is kept in the signature for
    /// callers that build specs without analytic moments.
    pub fn isotropize(&self, _sample_budget: usize) -> Result<Self> {
        if self.conv.s <= -0.5 {
            return Err(Error::Precondition("infinite variance regime".into()));
        }
        let mean = DVector::from_vec(self.mean_vec()?);
        let sigma = self.covariance()?;
        let n = self.dim();
        let eig = nalgebra::SymmetricEigen::new(sigma);
        let mut w = DMatrix::zeros(n, n);
        for k in 0..n {
            let lam = eig.eigenvalues[k];
            if !(lam > 0.0) {
                return Err(Error::Precondition("degenerate covariance".into()));
            }
            let col = eig.eigenvectors.column(k);
            w += col * col.transpose() / lam.sqrt();
        }
        let shift = -&w * &mean;
        self.pushforward(shift, w)
    }

    /// `E |X|^p` with analytic divergence detection; `+inf` when the tail
    /// exponent rules out finiteness.
    pub fn abs_moment(&self, p: f64, budget: usize, seed: u64) -> Result<f64> {
        if p < 1.0 {
            return Err(Error::domain("p", p, "p >= 1"));
        }
        if self.dim() == 1 {
            let profile = self.tail_profile_1d()?;
            if !profile.abs_moment_finite(p) {
                return Ok(f64::INFINITY);
            }
            return Ok(quad::integrate_real_line(
                |x| x.abs().powf(p) * self.density_1d(x),
                1e-10,
            ));
        }
        // nD: tail finiteness is family-analytic, value by Monte Carlo.
        let finite = match &self.family {
            Family::StdGaussian { .. } => true,
            Family::CauchyType { beta, .. } => p < *beta,
            _ => true,
        };
        if !finite {
            return Ok(f64::INFINITY);
        }
        let cloud = self.sample(seed, budget.max(1))?;
        let mut acc = 0.0;
        for (pt, &w) in cloud.points().iter().zip(cloud.weights()) {
            let norm: f64 = pt.iter().map(|v| v * v).sum::<f64>().sqrt();
            acc += w * norm.powf(p);
        }
        Ok(acc)
    }

    /// `E e^{c |X|^2 / 2}` for `c > 0`, with analytic finiteness decision by
    /// comparing log-density growth against the Gaussian weight.
    pub fn exp_quadratic_moment(&self, c: f64) -> Result<f64> {
        if !(c > 0.0) {
            return Err(Error::domain("c", c, "c > 0"));
        }
        if self.dim() == 1 {
            let profile = self.tail_profile_1d()?;
            if !profile.exp_quadratic_finite(c) {
                return Ok(f64::INFINITY);
            }
            return Ok(quad::integrate_real_line(
                |x| (0.5 * c * x * x).exp() * self.density_1d(x),
                1e-10,
            ));
        }
        match &self.family {
            Family::StdGaussian { .. } => {
                let sigma = self.covariance()?;
                let mean = DVector::from_vec(self.mean_vec()?);
                let n = self.dim();
                let eig = nalgebra::SymmetricEigen::new(sigma.clone());
                if eig.eigenvalues.iter().any(|&l| c * l >= 1.0) {
                    return Ok(f64::INFINITY);
                }
                // det(I - c Sigma)^{-1/2} exp(c/2 mu^T (I - c Sigma)^{-1} mu)
                let id = DMatrix::identity(n, n);
                let a = &id - &sigma * c;
                let det = a.determinant();
                let sol = a
                    .lu()
                    .solve(&mean)
                    .ok_or_else(|| Error::Solver("singular I - c*Sigma".into()))?;
                Ok(det.powf(-0.5) * (0.5 * c * mean.dot(&sol)).exp())
            }
            // Polynomial tails lose against any Gaussian weight.
            Family::CauchyType { .. } => Ok(f64::INFINITY),
            _ => unreachable!("1D-only families handled above"),
        }
    }

    fn entropy_quadrature(&self) -> (f64, f64) {
        let neg_log = |x: f64| {
            let lf = self.log_density(&[x]).unwrap_or(f64::NEG_INFINITY);
            if lf == f64::NEG_INFINITY {
                (0.0, 0.0)
            } else {
                let f = lf.exp();
                (-f * lf, f * lf * lf)
            }
        };
        let h = quad::integrate_real_line(|x| neg_log(x).0, 1e-9);
        let second = quad::integrate_real_line(|x| neg_log(x).1, 1e-9);
        let var = (second - h * h).max(0.0);
        (h, var)
    }

    fn entropy_monte_carlo(&self, budget: usize, seed: u64) -> Result<(f64, f64, f64, f64)> {
        let cloud = self.sample(seed, budget.max(2))?;
        let vals: Vec<f64> = cloud
            .points()
            .iter()
            .map(|p| -self.log_density(p).unwrap_or(f64::NEG_INFINITY))
            .collect();
        let m = vals.len() as f64;
        let mean = vals.iter().sum::<f64>() / m;
        let mut m2 = 0.0;
        let mut m4 = 0.0;
        for v in &vals {
            let d = v - mean;
            m2 += d * d;
            m4 += d * d * d * d;
        }
        m2 /= m;
        m4 /= m;
        let se_mean = (m2 / m).sqrt();
        let se_var = ((m4 - m2 * m2).max(0.0) / m).sqrt();
        Ok((mean, m2, se_mean, se_var))
    }

    /// Differential entropy `E[-log f(X)]`; quadrature in 1D (no standard
    /// error), Monte Carlo with standard error otherwise.
    pub fn differential_entropy(&self, budget: usize, seed: u64) -> Result<(f64, Option<f64>)> {
        if self.dim() == 1 {
            Ok((self.entropy_quadrature().0, None))
        } else {
            let (h, _, se, _) = self.entropy_monte_carlo(budget, seed)?;
            Ok((h, Some(se)))
        }
    }

    /// Var-entropy `Var(log f(X))`.
    pub fn varentropy(&self, budget: usize, seed: u64) -> Result<(f64, Option<f64>)> {
        if self.dim() == 1 {
            Ok((self.entropy_quadrature().1, None))
        } else {
            let (_, v, _, se) = self.entropy_monte_carlo(budget, seed)?;
            Ok((v, Some(se)))
        }
    }

    /// Numerically locate the supremum of a 1D density. All families here
    /// are unimodal, so a golden-section search over the bulk is valid.
    pub fn sup_density_1d(&self) -> Result<f64> {
        self.require_1d()?;
        let (lo, hi) = self.support_1d()?;
        let a = if lo.is_finite() { lo } else { self.quantile_1d(1e-9)? };
        let b = if hi.is_finite() { hi } else { self.quantile_1d(1.0 - 1e-9)? };
        let (_, neg_max) = quad::golden_min(|x| -self.density_1d(x), a, b, 1e-12);
        // Endpoint maxima (exponential, uniform) are handled explicitly.
        Ok((-neg_max).max(self.density_1d(a)).max(self.density_1d(b)))
    }
}

/// Deterministic per-worker seed derivation (splitmix64 step).
pub fn derive_seed(root: u64, index: u64) -> u64 {
    let mut z = root
        .wrapping_add(0x9e37_79b9_7f4a_7c15u64.wrapping_mul(index.wrapping_add(1)));
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn normalizations_against_quadrature() {
        // Adaptive-quadrature oracle for the mass of each 1D density.
        for spec in [
            DistributionSpec::std_gaussian(1).unwrap(),
            DistributionSpec::cauchy_type(1, 3.0).unwrap(),
            DistributionSpec::cauchy_type(1, 0.7).unwrap(),
            DistributionSpec::exponential_centered(),
            DistributionSpec::uniform_interval(0.0, 1.0).unwrap(),
        ] {
            let mass = quad::integrate_real_line(|x| spec.density_1d(x), 1e-10);
            assert_abs_diff_eq!(mass, 1.0, epsilon = 1e-6);
        }
    }

    #[test]
    fn cauchy_beta3_matches_closed_form() {
        // f(x) = (2/pi)(1+x^2)^{-2}, variance 1.
        let spec = DistributionSpec::cauchy_type(1, 3.0).unwrap();
        assert_abs_diff_eq!(spec.normalization(), 2.0 / std::f64::consts::PI, epsilon = 1e-12);
        assert_abs_diff_eq!(
            spec.density_1d(0.0),
            2.0 / std::f64::consts::PI,
            epsilon = 1e-12
        );
        let var = quad::integrate_real_line(|x| x * x * spec.density_1d(x), 1e-10);
        assert_abs_diff_eq!(var, 1.0, epsilon = 1e-6);
        assert_abs_diff_eq!(spec.conv().s, -1.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(spec.conv().kappa, -0.25, epsilon = 1e-15);
    }

    #[test]
    fn std_gaussian_values() {
        let g1 = DistributionSpec::std_gaussian(1).unwrap();
        assert_abs_diff_eq!(g1.density_1d(0.0), 0.3989422804014327, epsilon = 1e-12);
        let g2 = DistributionSpec::std_gaussian(2).unwrap();
        assert_abs_diff_eq!(
            g2.normalization(),
            1.0 / (2.0 * std::f64::consts::PI),
            epsilon = 1e-15
        );
        assert_eq!(g2.conv().s, 0.0);
    }

    #[test]
    fn exponential_centered_moments() {
        let e = DistributionSpec::exponential_centered();
        let mean = quad::integrate_half_line(|x| x * e.density_1d(x), -1.0, 1e-10);
        let var = quad::integrate_half_line(|x| x * x * e.density_1d(x), -1.0, 1e-10);
        assert_abs_diff_eq!(mean, 0.0, epsilon = 1e-8);
        assert_abs_diff_eq!(var, 1.0, epsilon = 1e-8);
        // P(X <= 0) = 1 - e^{-1}.
        let u = 1.0 - (-1.0f64).exp();
        assert_abs_diff_eq!(e.quantile_1d(u).unwrap(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn density_outside_support_is_zero() {
        let u = DistributionSpec::uniform_interval(-(3.0f64.sqrt()), 3.0f64.sqrt()).unwrap();
        assert_eq!(u.density_1d(2.0), 0.0);
        assert_eq!(u.log_density(&[2.0]).unwrap(), f64::NEG_INFINITY);
    }

    #[test]
    fn cdf_quantile_roundtrip() {
        for spec in [
            DistributionSpec::std_gaussian(1).unwrap(),
            DistributionSpec::cauchy_type(1, 3.0).unwrap(),
            DistributionSpec::exponential_centered(),
            DistributionSpec::uniform_interval(0.0, 1.0).unwrap(),
        ] {
            for u in [1e-4, 0.1, 0.5, 0.9, 1.0 - 1e-4] {
                let x = spec.quantile_1d(u).unwrap();
                assert_abs_diff_eq!(spec.cdf_1d(x).unwrap(), u, epsilon = 1e-8);
            }
        }
        assert!(DistributionSpec::std_gaussian(1).unwrap().quantile_1d(0.0).is_err());
        assert!(DistributionSpec::std_gaussian(1).unwrap().quantile_1d(1.2).is_err());
    }

    #[test]
    fn symmetry_medians() {
        let g = DistributionSpec::std_gaussian(1).unwrap();
        assert_abs_diff_eq!(g.quantile_1d(0.5).unwrap(), 0.0, epsilon = 1e-12);
        let c = DistributionSpec::cauchy_type(1, 3.0).unwrap();
        assert_abs_diff_eq!(c.cdf_1d(0.0).unwrap(), 0.5, epsilon = 1e-12);
    }

    #[test]
    fn sampling_law_of_large_numbers() {
        let g = DistributionSpec::std_gaussian(1).unwrap();
        let m = 10_000;
        let cloud = g.sample(7, m).unwrap();
        let mean = cloud.mean()[0];
        assert!(mean.abs() < 4.0 / (m as f64).sqrt());

        let u = DistributionSpec::uniform_interval(0.0, 1.0).unwrap();
        let one = u.sample(123, 1).unwrap();
        let x = one.point(0)[0];
        assert!((0.0..=1.0).contains(&x));

        let c = DistributionSpec::cauchy_type(1, 3.0).unwrap();
        let cloud = c.sample(42, 100_000).unwrap();
        let var = cloud.marginal_variances()[0];
        assert!((var - 1.0).abs() < 0.1, "sample variance {var}");
    }

    #[test]
    fn sampling_is_deterministic() {
        let c = DistributionSpec::cauchy_type(2, 4.0).unwrap();
        let a = c.sample(9, 50).unwrap();
        let b = c.sample(9, 50).unwrap();
        assert_eq!(a.points(), b.points());
    }

    #[test]
    fn isotropize_families() {
        // Standard Gaussian: already isotropic.
        let g = DistributionSpec::std_gaussian(2).unwrap().isotropize(0).unwrap();
        assert!(g.mean_vec().unwrap().iter().all(|v| v.abs() < 1e-12));

        // Uniform(0,1) -> uniform(-sqrt3, sqrt3).
        let u = DistributionSpec::uniform_interval(0.0, 1.0).unwrap();
        let iso = u.isotropize(0).unwrap();
        let (lo, hi) = iso.support_1d().unwrap();
        assert_abs_diff_eq!(lo, -(3.0f64.sqrt()), epsilon = 1e-10);
        assert_abs_diff_eq!(hi, 3.0f64.sqrt(), epsilon = 1e-10);

        // Cauchy-type beta=3 is already isotropic up to tiny scale correction.
        let c = DistributionSpec::cauchy_type(1, 3.0).unwrap();
        let iso = c.isotropize(0).unwrap();
        let (_, s) = iso.affine_1d();
        assert_abs_diff_eq!(s, 1.0, epsilon = 1e-3);

        // Heavy tail without variance refuses.
        let heavy = DistributionSpec::cauchy_type(1, 1.5).unwrap();
        assert!(heavy.isotropize(0).is_err());
    }

    #[test]
    fn isotropize_reestimation_gate() {
        let g = DistributionSpec::gaussian(vec![3.0, -1.0], vec![vec![4.0, 1.0], vec![1.0, 2.0]])
            .unwrap();
        let iso = g.isotropize(0).unwrap();
        let cloud = iso.sample(11, 200_000).unwrap();
        for m in iso.mean_vec().unwrap() {
            assert!(m.abs() <= 1e-3);
        }
        for v in cloud.marginal_variances() {
            assert!((v - 1.0).abs() <= 1e-2, "marginal variance {v}");
        }
    }

    #[test]
    fn abs_moments() {
        let g = DistributionSpec::std_gaussian(1).unwrap();
        assert_abs_diff_eq!(g.abs_moment(2.0, 0, 0).unwrap(), 1.0, epsilon = 1e-7);

        let c = DistributionSpec::cauchy_type(1, 3.0).unwrap();
        assert!(c.abs_moment(4.0, 0, 0).unwrap().is_infinite());
        assert!(c.abs_moment(3.0, 0, 0).unwrap().is_infinite());
        assert!(c.abs_moment(2.0, 0, 0).unwrap().is_finite());

        let r3 = 3.0f64.sqrt();
        let u = DistributionSpec::uniform_interval(-r3, r3).unwrap();
        assert_abs_diff_eq!(u.abs_moment(1.0, 0, 0).unwrap(), r3 / 2.0, epsilon = 1e-8);
    }

    #[test]
    fn exp_quadratic_moments() {
        let r3 = 3.0f64.sqrt();
        let u = DistributionSpec::uniform_interval(-r3, r3).unwrap();
        let m = u.exp_quadratic_moment(1.0).unwrap();
        // Quadrature oracle: 2 * (1/(2 sqrt3)) * int_0^{sqrt3} e^{x^2/2} dx.
        let oracle = quad::integrate(|x| (0.5 * x * x).exp() / (2.0 * r3), 0.0, r3, 1e-12) * 2.0;
        assert_abs_diff_eq!(m, oracle, epsilon = 1e-8);
        assert!(m > 1.0 && m < (1.5f64).exp());

        assert!(DistributionSpec::std_gaussian(1)
            .unwrap()
            .exp_quadratic_moment(1.0)
            .unwrap()
            .is_infinite());
        assert!(DistributionSpec::cauchy_type(1, 3.0)
            .unwrap()
            .exp_quadratic_moment(0.05)
            .unwrap()
            .is_infinite());
        assert!(DistributionSpec::exponential_centered()
            .exp_quadratic_moment(0.5)
            .unwrap()
            .is_infinite());
    }

    #[test]
    fn entropies() {
        let g = DistributionSpec::std_gaussian(1).unwrap();
        let (h, _) = g.differential_entropy(0, 0).unwrap();
        assert_abs_diff_eq!(h, 0.5 * (2.0 * std::f64::consts::PI * std::f64::consts::E).ln(), epsilon = 1e-6);
        let (v, _) = g.varentropy(0, 0).unwrap();
        assert_abs_diff_eq!(v, 0.5, epsilon = 1e-6);

        let r3 = 3.0f64.sqrt();
        let u = DistributionSpec::uniform_interval(-r3, r3).unwrap();
        let (h, _) = u.differential_entropy(0, 0).unwrap();
        assert_abs_diff_eq!(h, (2.0 * r3).ln(), epsilon = 1e-6);
        let (v, _) = u.varentropy(0, 0).unwrap();
        assert_abs_diff_eq!(v, 0.0, epsilon = 1e-6);

        let e = DistributionSpec::exponential_centered();
        let (h, _) = e.differential_entropy(0, 0).unwrap();
        assert_abs_diff_eq!(h, 1.0, epsilon = 1e-6);
    }

    #[test]
    fn sup_density() {
        let c = DistributionSpec::cauchy_type(1, 3.0).unwrap();
        assert_abs_diff_eq!(c.sup_density_1d().unwrap(), 2.0 / std::f64::consts::PI, epsilon = 1e-8);
        let e = DistributionSpec::exponential_centered();
        assert_abs_diff_eq!(e.sup_density_1d().unwrap(), 1.0, epsilon = 1e-8);
    }

    #[test]
    fn spec_doc_roundtrip() {
        let c = DistributionSpec::cauchy_type(1, 3.0)
            .unwrap()
            .isotropize(0)
            .unwrap();
        let doc = c.to_doc();
        let json = serde_json::to_string(&doc).unwrap();
        let back: SpecDoc = serde_json::from_str(&json).unwrap();
        let spec = DistributionSpec::from_doc(&back).unwrap();
        for x in [-2.0, 0.0, 0.7] {
            assert_abs_diff_eq!(spec.density_1d(x), c.density_1d(x), epsilon = 1e-12);
        }
    }

    #[test]
    fn construction_errors() {
        assert!(DistributionSpec::cauchy_type(1, -1.0).is_err());
        assert!(DistributionSpec::uniform_interval(2.0, 1.0).is_err());
        assert!(DistributionSpec::gaussian(vec![0.0], vec![vec![-1.0]]).is_err());
        assert!(DistributionSpec::gaussian(
            vec![0.0, 0.0],
            vec![vec![1.0, 0.5], vec![0.3, 1.0]]
        )
        .is_err());
    }
}
