//! The Teichmüller space of the torus realized as the upper half-plane.
//!
//! A point `τ` of the upper half-plane names the marked flat torus
//! `ℂ / (ℤ + τℤ)`, rescaled to area one where a canonical metric is needed.
//! The crate computes and cross-checks the distances between such tori:
//!
//! - [`metrics::lambda_metric`]: log of the least Lipschitz constant of a
//!   marking-compatible map, realized by the affine comparison map;
//! - [`metrics::teichmuller_metric`]: half the log of the least
//!   quasiconformal distortion;
//! - [`metrics::kappa_metric`]: log of the largest stretch of a closed curve;
//! - [`metrics::kappa_prime`], [`metrics::sorvali_dilatation`],
//!   [`metrics::s_kappa_prime`]: the same ratios for lattices `ℤ + τℤ`;
//! - [`metrics::wp_distance`]: the genus-one Weil-Petersson distance.
//!
//! The Lipschitz and Teichmüller metrics both equal half the Poincaré
//! distance. [`extremal`] builds a family of non-affine maps that are also
//! Lipschitz-extremal, and [`oracle`] holds the brute-force estimators used
//! to verify all of the above.

pub mod cli;
pub mod error;
pub mod extremal;
pub mod halfplane;
pub mod linmap;
pub mod metrics;
pub mod oracle;
pub mod torus;
pub mod verify;

pub use error::{Error, Result};
pub use extremal::PiecewiseStretchMap;
pub use halfplane::{HPoint, IntMatrix2, SlMatrix};
pub use linmap::LinearMap2;
pub use metrics::{MetricKind, MetricReport};
pub use torus::{CurveClass, MarkedTorus, Normalization};
