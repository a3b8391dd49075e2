//! Marked flat tori, curve classes and their lengths.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::halfplane::HPoint;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Normalization {
    /// Basis `1/√Im τ, τ/√Im τ`; the fundamental parallelogram has area one.
    UnitArea,
    /// Basis `1, τ`.
    UnitGenerator,
}

/// A primitive pair `(m, n)` naming the free homotopy class of the closed
/// curve `m·ω₁ + n·ω₂`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CurveClass {
    m: i64,
    n: i64,
}

/// Result of reducing an arbitrary nonzero pair to its primitive part.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReducedClass {
    pub class: CurveClass,
    /// How many times the primitive class is iterated (1 when the input was
    /// already primitive).
    pub multiplicity: u64,
}

impl ReducedClass {
    pub fn was_reduced(&self) -> bool {
        self.multiplicity > 1
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl CurveClass {
    /// Accepts only primitive pairs.
    pub fn primitive(m: i64, n: i64) -> Result<Self> {
        let r = Self::reduce(m, n)?;
        if r.was_reduced() {
            Err(Error::NotPrimitive(m, n))
        } else {
            Ok(r.class)
        }
    }

    /// Reduces `(m, n)` to its primitive part, reporting the multiplicity.
    pub fn reduce(m: i64, n: i64) -> Result<ReducedClass> {
        if m == 0 && n == 0 {
            return Err(Error::ZeroClass);
        }
        let g = gcd(m.unsigned_abs(), n.unsigned_abs());
        let g_signed = g as i64;
        Ok(ReducedClass { class: CurveClass { m: m / g_signed, n: n / g_signed }, multiplicity: g })
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn n(&self) -> i64 {
        self.n
    }
}

impl fmt::Display for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.m, self.n)
    }
}

/// A marked flat torus `ℂ / (ℤω₁ + ℤω₂)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MarkedTorus {
    tau: HPoint,
    omega1: Complex64,
    omega2: Complex64,
    normalization: Normalization,
    // Lagrange-reduced basis of the same lattice and the integer coordinates
    // of each reduced vector in the marked basis.
    reduced: [Complex64; 2],
    reduced_coords: [(i64, i64); 2],
}

impl MarkedTorus {
    pub fn new(tau: HPoint, normalization: Normalization) -> Self {
        let (omega1, omega2) = match normalization {
            Normalization::UnitArea => {
                let s = tau.im().sqrt();
                (Complex64::new(1.0 / s, 0.0), tau.to_complex() / s)
            }
            Normalization::UnitGenerator => (Complex64::new(1.0, 0.0), tau.to_complex()),
        };
        let (reduced, reduced_coords) = lagrange_reduce(omega1, omega2);
        Self { tau, omega1, omega2, normalization, reduced, reduced_coords }
    }

    pub fn tau(&self) -> HPoint {
        self.tau
    }

    pub fn omega1(&self) -> Complex64 {
        self.omega1
    }

    pub fn omega2(&self) -> Complex64 {
        self.omega2
    }

    pub fn normalization(&self) -> Normalization {
        self.normalization
    }

    /// Signed area `Im(ω̄₁ ω₂)` of the fundamental parallelogram.
    pub fn area(&self) -> f64 {
        (self.omega1.conj() * self.omega2).im
    }

    pub fn lattice_vector(&self, m: i64, n: i64) -> Complex64 {
        self.omega1 * m as f64 + self.omega2 * n as f64
    }

    /// Real coordinates `(s, t)` with `z = s·ω₁ + t·ω₂`.
    pub fn coordinates(&self, z: Complex64) -> (f64, f64) {
        coordinates_in(self.omega1, self.omega2, z)
    }

    /// Lagrange-reduced basis `b₁, b₂` of the lattice (`|b₁| ≤ |b₂|`, and
    /// `|b₁ · b₂| ≤ |b₁|² / 2`).
    pub fn reduced_basis(&self) -> [Complex64; 2] {
        self.reduced
    }

    /// Integer coordinates of the reduced basis vectors in the marked basis.
    pub fn reduced_coordinates(&self) -> [(i64, i64); 2] {
        self.reduced_coords
    }

    /// Representative of `z` in the half-open parallelogram `[0,1)ω₁ + [0,1)ω₂`.
    pub fn wrap(&self, z: Complex64) -> Complex64 {
        let (s, t) = self.coordinates(z);
        self.omega1 * (s - s.floor()) + self.omega2 * (t - t.floor())
    }
}

pub fn make_torus(tau: HPoint, normalization: Normalization) -> MarkedTorus {
    MarkedTorus::new(tau, normalization)
}

fn coordinates_in(b1: Complex64, b2: Complex64, z: Complex64) -> (f64, f64) {
    let det = b1.re * b2.im - b1.im * b2.re;
    let s = (z.re * b2.im - z.im * b2.re) / det;
    let t = (b1.re * z.im - b1.im * z.re) / det;
    (s, t)
}

fn lagrange_reduce(w1: Complex64, w2: Complex64) -> ([Complex64; 2], [(i64, i64); 2]) {
    let (mut b1, mut b2) = (w1, w2);
    let (mut c1, mut c2) = ((1i64, 0i64), (0i64, 1i64));
    loop {
        if b2.norm_sqr() < b1.norm_sqr() {
            std::mem::swap(&mut b1, &mut b2);
            std::mem::swap(&mut c1, &mut c2);
        }
        let mu = (b2 * b1.conj()).re / b1.norm_sqr();
        if mu.abs() <= 0.5 {
            break;
        }
        let k = mu.round() as i64;
        c2 = (c2.0 - k * c1.0, c2.1 - k * c1.1);
        b2 = w1 * c2.0 as f64 + w2 * c2.1 as f64;
    }
    ([b1, b2], [c1, c2])
}

/// Length of the shortest closed curve in the class, `|m·ω₁ + n·ω₂|`.
pub fn curve_length(torus: &MarkedTorus, class: CurveClass) -> f64 {
    torus.lattice_vector(class.m, class.n).norm()
}

/// Flat distance on the quotient: `min over lattice vectors v of |x − y + v|`.
pub fn torus_distance(torus: &MarkedTorus, x: Complex64, y: Complex64) -> f64 {
    let [b1, b2] = torus.reduced;
    let (s, t) = coordinates_in(b1, b2, x - y);
    let centered = b1 * (s - s.round()) + b2 * (t - t.round());
    let mut best = f64::INFINITY;
    for i in -2..=2 {
        for j in -2..=2 {
            best = best.min((centered + b1 * i as f64 + b2 * j as f64).norm_sqr());
        }
    }
    best.sqrt()
}

/// Shortest essential closed curve: its class and length.
pub fn systole(torus: &MarkedTorus) -> (CurveClass, f64) {
    let (m, n) = torus.reduced_coords[0];
    let class = CurveClass::primitive(m, n).expect("reduced basis vectors are primitive");
    (class, torus.reduced[0].norm())
}
