//! Parametric s-concave distribution families with convexity bookkeeping,
//! sampling, quantiles, moments and smoothing operators.

pub mod convexity;
pub mod empirical;
pub mod family;
pub mod quantile;
pub mod smoothing;
pub mod tails;

pub use convexity::{generalized_mean, kappa_from_s, s_from_kappa, ConvexityParams};
pub use empirical::EmpiricalMeasure;
pub use family::{derive_seed, DistributionSpec, Family, FamilyDoc, SpecDoc};
pub use quantile::QuantileTable;
pub use smoothing::{
    gaussian_convolve_1d, grad_l1_norm_1d, huber, l1_distance_to_smoothed, moreau_envelope_1d,
};
pub use tails::{renyi_finite, Tail, TailProfile};
