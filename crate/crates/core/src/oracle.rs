//! Brute-force estimators used to cross-check the closed forms: sampled
//! Lipschitz constants on quotient tori, operator norms over sampled
//! directions, and quadrature of conformal path lengths.
//!
//! Sampled suprema are lower bounds; quadratures converge. None of the
//! routines here call the closed-form code they are meant to check.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::halfplane::HPoint;
use crate::linmap::LinearMap2;
use crate::torus::{torus_distance, MarkedTorus};

/// Grids with at most this many points per axis are checked on every pair.
pub const FULL_PAIR_GRID_LIMIT: usize = 60;
/// Number of random pairs drawn on larger grids.
pub const RANDOM_PAIR_COUNT: usize = 1_000_000;

const BOUNDARY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SamplingConfig {
    pub grid_n: usize,
    pub direction_samples: usize,
    pub path_samples: usize,
    pub seed: u64,
}

impl Default for SamplingConfig {
    fn default() -> Self {
        Self { grid_n: 200, direction_samples: 100_000, path_samples: 10_000, seed: 0x5eed }
    }
}

impl SamplingConfig {
    pub fn validate(&self) -> Result<()> {
        if self.grid_n < 2 {
            return Err(Error::InvalidArgument(format!("grid_n must be >= 2, got {}", self.grid_n)));
        }
        if self.direction_samples < 4 {
            return Err(Error::InvalidArgument(format!(
                "direction_samples must be >= 4, got {}",
                self.direction_samples
            )));
        }
        if self.path_samples < 2 {
            return Err(Error::InvalidArgument(format!("path_samples must be >= 2, got {}", self.path_samples)));
        }
        Ok(())
    }
}

/// Checks that opposite edges of the source parallelogram land on points that
/// agree in the target torus.
fn boundary_mismatch<F>(map: &F, from: &MarkedTorus, to: &MarkedTorus, samples: usize) -> f64
where
    F: Fn(Complex64) -> Complex64,
{
    let (w1, w2) = (from.omega1(), from.omega2());
    let mut worst = 0.0f64;
    for k in 0..=samples {
        let t = k as f64 / samples as f64;
        worst = worst.max(torus_distance(to, map(w2 * t), map(w1 + w2 * t)));
        worst = worst.max(torus_distance(to, map(w1 * t), map(w1 * t + w2)));
    }
    worst
}

/// Largest observed ratio `d_to(f(x), f(y)) / d_from(x, y)` over pairs of
/// points of a `grid_n × grid_n` grid on the fundamental parallelogram of
/// `from`.
///
/// `map` is evaluated on the closed parallelogram `[0,1]ω₁ + [0,1]ω₂`; its
/// values are read modulo the lattice of `to`.
pub fn sampled_lipschitz<F>(map: F, from: &MarkedTorus, to: &MarkedTorus, cfg: &SamplingConfig) -> Result<f64>
where
    F: Fn(Complex64) -> Complex64 + Sync,
{
    cfg.validate()?;
    let mismatch = boundary_mismatch(&map, from, to, 16);
    if mismatch > BOUNDARY_TOL {
        return Err(Error::IncompatibleMap(mismatch));
    }
    let n = cfg.grid_n;
    let step = 1.0 / n as f64;
    let points: Vec<Complex64> =
        (0..n * n).map(|k| from.omega1() * ((k / n) as f64 * step) + from.omega2() * ((k % n) as f64 * step)).collect();
    let images: Vec<Complex64> = points.iter().map(|&p| map(p)).collect();
    let ratio =
        |a: usize, b: usize| torus_distance(to, images[a], images[b]) / torus_distance(from, points[a], points[b]);

    let best = if n <= FULL_PAIR_GRID_LIMIT {
        let len = points.len();
        (0..len)
            .into_par_iter()
            .map(|a| ((a + 1)..len).map(|b| ratio(a, b)).fold(0.0f64, f64::max))
            .reduce(|| 0.0, f64::max)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let len = points.len();
        let pairs: Vec<(usize, usize)> = (0..RANDOM_PAIR_COUNT)
            .map(|_| {
                let a = rng.random_range(0..len);
                let mut b = rng.random_range(0..len - 1);
                if b >= a {
                    b += 1;
                }
                (a, b)
            })
            .collect();
        pairs.par_iter().map(|&(a, b)| ratio(a, b)).reduce(|| 0.0, f64::max)
    };
    Ok(best)
}

/// Largest `|M u|` over `direction_samples` unit vectors evenly spaced on a
/// half circle, starting at the positive real axis.
pub fn direction_sampled_norm(map: &LinearMap2, cfg: &SamplingConfig) -> Result<f64> {
    if cfg.direction_samples < 4 {
        return Err(Error::InvalidArgument(format!("direction_samples must be >= 4, got {}", cfg.direction_samples)));
    }
    let samples = cfg.direction_samples;
    let best = (0..samples)
        .map(|k| {
            let theta = std::f64::consts::PI * k as f64 / samples as f64;
            let (s, c) = theta.sin_cos();
            let x = map.a11 * c + map.a12 * s;
            let y = map.a21 * c + map.a22 * s;
            x.hypot(y)
        })
        .fold(0.0f64, f64::max);
    Ok(best)
}

/// Density `1 / y²` of the hyperbolic metric.
pub fn poincare_weight(z: HPoint) -> f64 {
    1.0 / (z.im() * z.im())
}

/// Density `1 / (2 y²)` of the genus-one Weil-Petersson metric.
pub fn weil_petersson_weight(z: HPoint) -> f64 {
    0.5 / (z.im() * z.im())
}

/// Length of the hyperbolic geodesic from `z1` to `z2` under the conformal
/// metric `weight(z)·|dz|²`, by composite Simpson quadrature on
/// `path_samples` nodes.
///
/// The geodesic is parametrized directly as a vertical segment or an arc of a
/// circle centred on the real axis.
pub fn hyperbolic_path_length<W>(z1: HPoint, z2: HPoint, weight: W, cfg: &SamplingConfig) -> Result<f64>
where
    W: Fn(HPoint) -> f64,
{
    if cfg.path_samples < 2 {
        return Err(Error::InvalidArgument(format!("path_samples must be >= 2, got {}", cfg.path_samples)));
    }
    if z1 == z2 {
        return Ok(0.0);
    }
    let intervals = cfg.path_samples - 1;
    // (point, |dz/ds|) along a parameter s ∈ [s0, s1]
    type Path = Box<dyn Fn(f64) -> (HPoint, f64)>;
    let (s0, s1, point): (f64, f64, Path) = if z1.re() == z2.re() {
        let x = z1.re();
        (z1.im(), z2.im(), Box::new(move |y| (HPoint::new(x, y).expect("positive height"), 1.0)))
    } else {
        let (x1, x2) = (z1.re(), z2.re());
        let center = (z2.abs().powi(2) - z1.abs().powi(2)) / (2.0 * (x2 - x1));
        let radius = (z1.re() - center).hypot(z1.im());
        let angle = |z: HPoint| z.im().atan2(z.re() - center);
        (
            angle(z1),
            angle(z2),
            Box::new(move |theta: f64| {
                let (s, c) = theta.sin_cos();
                (HPoint::new(center + radius * c, radius * s).expect("arc stays in the half-plane"), radius)
            }),
        )
    };
    let h = (s1 - s0) / intervals as f64;
    let integrand = |s: f64| {
        let (z, speed) = point(s);
        weight(z).sqrt() * speed
    };
    let f: Vec<f64> = (0..=intervals).map(|k| integrand(s0 + h * k as f64)).collect();
    Ok((simpson(&f) * h).abs())
}

// Composite Simpson on equally spaced samples, unit spacing; an odd number of
// intervals closes with the 3/8 rule.
fn simpson(f: &[f64]) -> f64 {
    let n = f.len() - 1;
    if n == 1 {
        return 0.5 * (f[0] + f[1]);
    }
    let even = if n.is_multiple_of(2) { n } else { n - 3 };
    let mut sum = 0.0;
    for i in (0..even).step_by(2) {
        sum += (f[i] + 4.0 * f[i + 1] + f[i + 2]) / 3.0;
    }
    if even < n {
        sum += 3.0 / 8.0 * (f[even] + 3.0 * f[even + 1] + 3.0 * f[even + 2] + f[even + 3]);
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torus::Normalization;

    fn unit_area(re: f64, im: f64) -> MarkedTorus {
        MarkedTorus::new(HPoint::new(re, im).unwrap(), Normalization::UnitArea)
    }

    #[test]
    fn config_validation() {
        assert!(SamplingConfig::default().validate().is_ok());
        assert!(SamplingConfig { grid_n: 1, ..Default::default() }.validate().is_err());
        assert!(SamplingConfig { direction_samples: 3, ..Default::default() }.validate().is_err());
        assert!(SamplingConfig { path_samples: 1, ..Default::default() }.validate().is_err());
    }

    #[test]
    fn identity_map_is_one_lipschitz() {
        let t = unit_area(0.3, 1.2);
        let cfg = SamplingConfig { grid_n: 20, ..Default::default() };
        let l = sampled_lipschitz(|z| z, &t, &t, &cfg).unwrap();
        assert!((l - 1.0).abs() < 1e-9);
    }

    #[test]
    fn incompatible_map_rejected() {
        let t = unit_area(0.0, 1.0);
        let cfg = SamplingConfig { grid_n: 10, ..Default::default() };
        let err = sampled_lipschitz(|z| z * 0.5, &t, &t, &cfg).unwrap_err();
        assert!(matches!(err, Error::IncompatibleMap(_)));
    }

    #[test]
    fn direction_norm_examples() {
        let cfg = SamplingConfig::default();
        assert!((direction_sampled_norm(&LinearMap2::IDENTITY, &cfg).unwrap() - 1.0).abs() < 1e-15);
        let l = direction_sampled_norm(&LinearMap2::diag(2.0, 0.5), &cfg).unwrap();
        assert!((l - 2.0).abs() < 1e-8);
        let l = direction_sampled_norm(&LinearMap2::new(1.0, 1.0, 0.0, 1.0), &cfg).unwrap();
        assert!((l - (1.0 + 5f64.sqrt()) / 2.0).abs() < 1e-8);
    }

    #[test]
    fn path_length_examples() {
        let cfg = SamplingConfig::default();
        let two_i = HPoint::new(0.0, 2.0).unwrap();
        assert_eq!(hyperbolic_path_length(HPoint::I, HPoint::I, poincare_weight, &cfg).unwrap(), 0.0);
        let l = hyperbolic_path_length(HPoint::I, two_i, poincare_weight, &cfg).unwrap();
        assert!((l - 2f64.ln()).abs() < 1e-12);
        let l = hyperbolic_path_length(HPoint::I, two_i, weil_petersson_weight, &cfg).unwrap();
        assert!((l - 2f64.ln() / 2f64.sqrt()).abs() < 1e-12);
        // arc case: i to 1+i
        let l = hyperbolic_path_length(HPoint::I, HPoint::new(1.0, 1.0).unwrap(), poincare_weight, &cfg).unwrap();
        let golden = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((l - 2.0 * golden.ln()).abs() < 1e-12);
    }

    #[test]
    fn sampling_is_deterministic() {
        let (a, b) = (unit_area(0.0, 1.0), unit_area(0.4, 1.7));
        let m = crate::linmap::affine_comparison_map(&a, &b).unwrap();
        let cfg = SamplingConfig { grid_n: 80, ..Default::default() };
        let first = sampled_lipschitz(|z| m.apply(z), &a, &b, &cfg).unwrap();
        let second = sampled_lipschitz(|z| m.apply(z), &a, &b, &cfg).unwrap();
        assert_eq!(first.to_bits(), second.to_bits());
    }
}
