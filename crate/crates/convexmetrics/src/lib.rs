//! Distances, divergences and explicit comparison bounds for the class of
//! s-concave (convex) probability measures.
//!
//! The crate has four layers:
//!
//! - [`measures`]: parametric s-concave distribution families (Gaussian,
//!   uniform, centered exponential, heavy-tailed Cauchy type) with exact
//!   convexity bookkeeping, sampling, quantiles, moments and the smoothing
//!   operators (Moreau envelope, Gaussian convolution).
//! - [`transport`]: exact and entropic optimal transport between weighted
//!   point clouds.
//! - [`distances`]: estimators for total variation, bounded Lipschitz,
//!   Wasserstein, Rényi and Tsallis distances/divergences.
//! - [`bounds`]: every explicit constant and comparison inequality relating
//!   those distances on isotropic s-concave measures, as evaluatable
//!   formulas.
//! - [`harness`]: experiment runner that computes distances, evaluates
//!   bounds, checks inequality chains, fits the unnamed universal constants
//!   and emits CSV/JSON reports.
//!
//! Convention: total variation is the L¹ distance of densities, so it ranges
//! over `[0, 2]`. All inequalities in [`bounds`] use this convention.

pub mod bounds;
pub mod distances;
pub mod error;
pub mod harness;
pub mod measures;
pub mod quad;
pub mod transport;

pub use bounds::{BoundConfig, BoundResult};
pub use distances::DistanceEstimate;
pub use error::{Error, Result};
pub use measures::{ConvexityParams, DistributionSpec, EmpiricalMeasure};
