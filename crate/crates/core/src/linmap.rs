//! Real linear maps of the plane: the affine comparison map between marked
//! tori, its Lipschitz constant and its quasiconformal distortion.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::torus::MarkedTorus;

/// The matrix `[[a11, a12], [a21, a22]]` acting on `ℝ² ≅ ℂ` by
/// `x + iy ↦ (a11 x + a12 y) + i(a21 x + a22 y)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinearMap2 {
    pub a11: f64,
    pub a12: f64,
    pub a21: f64,
    pub a22: f64,
}

impl LinearMap2 {
    pub const IDENTITY: LinearMap2 = LinearMap2 { a11: 1.0, a12: 0.0, a21: 0.0, a22: 1.0 };

    pub fn new(a11: f64, a12: f64, a21: f64, a22: f64) -> Self {
        Self { a11, a12, a21, a22 }
    }

    pub fn diag(a: f64, b: f64) -> Self {
        Self::new(a, 0.0, 0.0, b)
    }

    pub fn det(&self) -> f64 {
        self.a11 * self.a22 - self.a12 * self.a21
    }

    pub fn apply(&self, z: Complex64) -> Complex64 {
        Complex64::new(self.a11 * z.re + self.a12 * z.im, self.a21 * z.re + self.a22 * z.im)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &LinearMap2) -> LinearMap2 {
        LinearMap2 {
            a11: self.a11 * inner.a11 + self.a12 * inner.a21,
            a12: self.a11 * inner.a12 + self.a12 * inner.a22,
            a21: self.a21 * inner.a11 + self.a22 * inner.a21,
            a22: self.a21 * inner.a12 + self.a22 * inner.a22,
        }
    }

    pub fn invert(&self) -> Result<LinearMap2> {
        let det = self.det();
        if det == 0.0 || !det.is_finite() {
            return Err(Error::Singular);
        }
        Ok(LinearMap2 { a11: self.a22 / det, a12: -self.a12 / det, a21: -self.a21 / det, a22: self.a11 / det })
    }

    pub fn transpose(&self) -> LinearMap2 {
        LinearMap2::new(self.a11, self.a21, self.a12, self.a22)
    }

    /// Operator norm: the square root of the largest eigenvalue of `M·Mᵀ`.
    pub fn lipschitz_constant(&self) -> f64 {
        let p = self.a11 * self.a11 + self.a12 * self.a12;
        let r = self.a21 * self.a21 + self.a22 * self.a22;
        let q = self.a11 * self.a21 + self.a12 * self.a22;
        // Both terms are nonnegative, so nothing cancels.
        let top = 0.5 * (p + r) + (0.5 * (p - r)).hypot(q);
        top.sqrt()
    }

    /// Complex derivatives `(φ_z, φ_z̄)` of the map viewed as `ℂ → ℂ`.
    pub fn wirtinger(&self) -> (Complex64, Complex64) {
        // φ_x = a11 + i a21, φ_y = a12 + i a22
        let phi_x = Complex64::new(self.a11, self.a21);
        let phi_y = Complex64::new(self.a12, self.a22);
        let i = Complex64::i();
        (0.5 * (phi_x - i * phi_y), 0.5 * (phi_x + i * phi_y))
    }

    /// Quasiconformal distortion `(|φ_z| + |φ_z̄|) / (|φ_z| − |φ_z̄|)`.
    pub fn qc_distortion(&self) -> Result<f64> {
        let det = self.det();
        if det <= 0.0 || !det.is_finite() {
            return Err(Error::OrientationReversing(det));
        }
        let (dz, dzbar) = self.wirtinger();
        let sum = dz.norm() + dzbar.norm();
        // |φ_z|² − |φ_z̄|² = det, so the difference is det / sum.
        Ok(sum * sum / det)
    }
}

pub fn lipschitz_constant(map: &LinearMap2) -> f64 {
    map.lipschitz_constant()
}

pub fn qc_distortion(map: &LinearMap2) -> Result<f64> {
    map.qc_distortion()
}

pub fn invert(map: &LinearMap2) -> Result<LinearMap2> {
    map.invert()
}

/// `outer ∘ inner`.
pub fn compose(outer: &LinearMap2, inner: &LinearMap2) -> LinearMap2 {
    outer.compose(inner)
}

/// The unique linear map sending the marked basis of `from` onto the marked
/// basis of `to`.
pub fn affine_comparison_map(from: &MarkedTorus, to: &MarkedTorus) -> Result<LinearMap2> {
    if from.normalization() != to.normalization() {
        return Err(Error::NormalizationMismatch);
    }
    let source = LinearMap2::new(from.omega1().re, from.omega2().re, from.omega1().im, from.omega2().im);
    let target = LinearMap2::new(to.omega1().re, to.omega2().re, to.omega1().im, to.omega2().im);
    Ok(target.compose(&source.invert()?))
}

/// Maps of the shape `x + iy ↦ x/d + cy + i·dy`, i.e. `[[1/d, c], [0, d]]`.
///
/// Every comparison map between unit-area tori with first generator on the
/// positive real axis has this shape.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StandardForm {
    pub c: f64,
    pub d: f64,
}

impl StandardForm {
    pub fn new(c: f64, d: f64) -> Result<Self> {
        if d == 0.0 || !d.is_finite() || !c.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "standard form needs finite c and nonzero d, got c={c}, d={d}"
            )));
        }
        Ok(Self { c, d })
    }

    /// Reads `c` and `d` off an upper-triangular map with determinant one.
    pub fn from_map(map: &LinearMap2, tol: f64) -> Result<Self> {
        if map.a21.abs() > tol || (map.det() - 1.0).abs() > tol {
            return Err(Error::InvalidArgument("map is not in standard form".into()));
        }
        Self::new(map.a12, map.a22)
    }

    pub fn to_map(self) -> LinearMap2 {
        LinearMap2::new(1.0 / self.d, self.c, 0.0, self.d)
    }

    /// `sqrt((d² + d⁻² + c² + sqrt((d² + d⁻² + c²)² − 4)) / 2)`.
    pub fn lipschitz_constant(self) -> f64 {
        let d2 = self.d * self.d;
        let s = d2 + 1.0 / d2 + self.c * self.c;
        (0.5 * (s + (s * s - 4.0).max(0.0).sqrt())).sqrt()
    }

    /// `|φ_z| = ½ sqrt((d + 1/d)² + c²)`, `|φ_z̄| = ½ sqrt((d − 1/d)² + c²)`.
    pub fn wirtinger_moduli(self) -> (f64, f64) {
        let (d, c) = (self.d, self.c);
        (0.5 * ((d + 1.0 / d).powi(2) + c * c).sqrt(), 0.5 * ((d - 1.0 / d).powi(2) + c * c).sqrt())
    }
}
