//! A two-parameter family of non-affine maps from the square torus onto the
//! rectangular torus `[0, r] × [0, 1/r]`, all of which attain the extremal
//! Lipschitz constant `r`.
//!
//! Each map is linear in `x` and piecewise linear in `y`: the strip
//! `y ≤ 1/2 − ε` is sent onto `[0, 1/r − δ]` and the rest onto
//! `[1/r − δ, 1/r]`.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::halfplane::HPoint;
use crate::linmap::LinearMap2;
use crate::oracle::{self, SamplingConfig};
use crate::torus::{MarkedTorus, Normalization};

/// The constraint a parameter triple violates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum FamilyViolation {
    NonFinite,
    /// `r > 1` fails.
    StretchNotAboveOne {
        r: f64,
    },
    /// `ε ∈ (−1/2, 1/2)` fails.
    EpsOutOfRange {
        eps: f64,
    },
    /// `δ > max(0, 1/r − r/2 + εr)` fails.
    DeltaTooSmall {
        delta: f64,
        bound: f64,
    },
    /// `δ < min(1/r, r/2 + εr)` fails.
    DeltaTooLarge {
        delta: f64,
        bound: f64,
    },
}

impl fmt::Display for FamilyViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FamilyViolation::NonFinite => write!(f, "parameters must be finite"),
            FamilyViolation::StretchNotAboveOne { r } => write!(f, "r > 1 required, got r = {r}"),
            FamilyViolation::EpsOutOfRange { eps } => write!(f, "eps must lie in (-1/2, 1/2), got {eps}"),
            FamilyViolation::DeltaTooSmall { delta, bound } => {
                write!(f, "delta > max(0, 1/r - r/2 + eps*r) = {bound} required, got {delta}")
            }
            FamilyViolation::DeltaTooLarge { delta, bound } => {
                write!(f, "delta < min(1/r, r/2 + eps*r) = {bound} required, got {delta}")
            }
        }
    }
}

/// Open interval of admissible `δ` for the given `r` and `ε`.
pub fn delta_bounds(r: f64, eps: f64) -> (f64, f64) {
    let lower = (1.0 / r - r / 2.0 + eps * r).max(0.0);
    let upper = (1.0 / r).min(r / 2.0 + eps * r);
    (lower, upper)
}

pub fn validate_params(r: f64, eps: f64, delta: f64) -> std::result::Result<(), FamilyViolation> {
    if !(r.is_finite() && eps.is_finite() && delta.is_finite()) {
        return Err(FamilyViolation::NonFinite);
    }
    if r <= 1.0 {
        return Err(FamilyViolation::StretchNotAboveOne { r });
    }
    if eps <= -0.5 || eps >= 0.5 {
        return Err(FamilyViolation::EpsOutOfRange { eps });
    }
    let (lower, upper) = delta_bounds(r, eps);
    if delta <= lower {
        return Err(FamilyViolation::DeltaTooSmall { delta, bound: lower });
    }
    if delta >= upper {
        return Err(FamilyViolation::DeltaTooLarge { delta, bound: upper });
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PiecewiseStretchMap {
    r: f64,
    eps: f64,
    delta: f64,
}

impl PiecewiseStretchMap {
    pub fn new(r: f64, eps: f64, delta: f64) -> Result<Self> {
        validate_params(r, eps, delta).map_err(Error::InvalidFamily)?;
        Ok(Self { r, eps, delta })
    }

    /// The affine member `(x, y) ↦ (rx, y/r)`.
    pub fn affine(r: f64) -> Result<Self> {
        Self::new(r, 0.0, 0.5 / r)
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// Height of the seam in the domain.
    pub fn seam(&self) -> f64 {
        0.5 - self.eps
    }

    fn bottom_slope(&self) -> f64 {
        (1.0 / self.r - self.delta) / (0.5 - self.eps)
    }

    fn top_slope(&self) -> f64 {
        self.delta / (0.5 + self.eps)
    }

    /// Derivative on `y < 1/2 − ε`.
    pub fn bottom_block(&self) -> LinearMap2 {
        LinearMap2::diag(self.r, self.bottom_slope())
    }

    /// Derivative on `y > 1/2 − ε`.
    pub fn top_block(&self) -> LinearMap2 {
        LinearMap2::diag(self.r, self.top_slope())
    }

    /// Whether the map coincides with `(x, y) ↦ (rx, y/r)`. This happens on
    /// the whole line `δ = (1/2 + ε)/r`, not only at `ε = 0`.
    pub fn is_affine(&self, tol: f64) -> bool {
        (self.bottom_slope() - 1.0 / self.r).abs() <= tol && (self.top_slope() - 1.0 / self.r).abs() <= tol
    }

    pub fn evaluate(&self, x: f64, y: f64) -> Result<(f64, f64)> {
        if !(0.0..=1.0).contains(&x) || !(0.0..=1.0).contains(&y) {
            return Err(Error::OutsideDomain(x, y));
        }
        Ok(self.evaluate_unchecked(x, y))
    }

    fn evaluate_unchecked(&self, x: f64, y: f64) -> (f64, f64) {
        let seam = self.seam();
        let v = if y <= seam {
            self.bottom_slope() * y
        } else {
            (1.0 / self.r - self.delta) + self.top_slope() * (y - seam)
        };
        (self.r * x, v)
    }

    /// Largest entry of the two diagonal derivative blocks.
    pub fn lipschitz_constant(&self) -> f64 {
        let b = self.bottom_block();
        let t = self.top_block();
        [b.a11, b.a22, t.a11, t.a22].into_iter().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Largest quasiconformal distortion over the two regions.
    pub fn qc_distortion(&self) -> f64 {
        let k_bottom = self.bottom_block().qc_distortion().expect("valid parameters give positive slopes");
        let k_top = self.top_block().qc_distortion().expect("valid parameters give positive slopes");
        k_bottom.max(k_top)
    }

    /// Source torus (the unit square) and target torus (`[0,r] × [0,1/r]`),
    /// both of area one.
    pub fn tori(&self) -> (MarkedTorus, MarkedTorus) {
        let square = MarkedTorus::new(HPoint::I, Normalization::UnitArea);
        let rect_tau = HPoint::new(0.0, 1.0 / (self.r * self.r)).expect("r is finite");
        (square, MarkedTorus::new(rect_tau, Normalization::UnitArea))
    }

    /// Lipschitz constant of the map estimated on a `grid_n × grid_n` grid with
    /// quotient distances; a lower bound for [`Self::lipschitz_constant`].
    pub fn sampled_lipschitz(&self, grid_n: usize) -> Result<f64> {
        let cfg = SamplingConfig { grid_n, ..SamplingConfig::default() };
        self.sampled_lipschitz_with(&cfg)
    }

    pub fn sampled_lipschitz_with(&self, cfg: &SamplingConfig) -> Result<f64> {
        let (square, rect) = self.tori();
        let map = |z: Complex64| {
            // grid points can carry a rounding error of an ulp past the edge
            let (x, y) = self.evaluate_unchecked(z.re.clamp(0.0, 1.0), z.im.clamp(0.0, 1.0));
            Complex64::new(x, y)
        };
        oracle::sampled_lipschitz(map, &square, &rect, cfg)
    }
}

pub fn family_lipschitz_constant(map: &PiecewiseStretchMap) -> f64 {
    map.lipschitz_constant()
}

pub fn family_qc_distortion(map: &PiecewiseStretchMap) -> f64 {
    map.qc_distortion()
}

pub fn sampled_family_lipschitz(map: &PiecewiseStretchMap, grid_n: usize) -> Result<f64> {
    map.sampled_lipschitz(grid_n)
}
