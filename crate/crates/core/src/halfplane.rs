//! Upper half-plane geometry: points, the Poincaré distance, Möbius actions,
//! geodesics and reduction to the modular fundamental domain.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Default tolerance for identity checks (determinants, witness matrices).
pub const DEFAULT_TOL: f64 = 1e-12;

const REDUCTION_ITERATION_CAP: usize = 10_000;

/// A point of the upper half-plane, i.e. a marked torus class.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HPoint {
    re: f64,
    im: f64,
}

impl HPoint {
    pub const I: HPoint = HPoint { re: 0.0, im: 1.0 };

    pub fn new(re: f64, im: f64) -> Result<Self> {
        if re.is_finite() && im.is_finite() && im > 0.0 {
            Ok(Self { re, im })
        } else {
            Err(Error::InvalidPoint { re, im })
        }
    }

    pub fn from_complex(z: Complex64) -> Result<Self> {
        Self::new(z.re, z.im)
    }

    pub fn re(&self) -> f64 {
        self.re
    }

    pub fn im(&self) -> f64 {
        self.im
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    pub fn abs(self) -> f64 {
        self.re.hypot(self.im)
    }
}

impl fmt::Display for HPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // `im` is strictly positive so the sign is always `+`.
        write!(f, "{}+{}i", self.re, self.im)
    }
}

fn is_decimal(s: &str) -> bool {
    let mut digits = 0;
    let mut dots = 0;
    for ch in s.chars() {
        match ch {
            '0'..='9' => digits += 1,
            '.' => dots += 1,
            _ => return false,
        }
    }
    digits > 0 && dots <= 1
}

/// Parses `[-]<real>[+|-]<real>i` with decimal reals and no whitespace.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let err = || Error::Parse(s.to_owned());
    let body = s.strip_suffix('i').ok_or_else(err)?;
    let split =
        body.char_indices().skip(1).filter(|&(_, c)| c == '+' || c == '-').map(|(i, _)| i).last().ok_or_else(err)?;
    let (re_str, im_str) = body.split_at(split);
    let re_digits = re_str.strip_prefix('-').unwrap_or(re_str);
    let im_digits = &im_str[1..];
    if !is_decimal(re_digits) || !is_decimal(im_digits) {
        return Err(err());
    }
    let re: f64 = re_str.parse().map_err(|_| err())?;
    let im: f64 = im_str.parse().map_err(|_| err())?;
    Ok(Complex64::new(re, im))
}

impl FromStr for HPoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        HPoint::from_complex(parse_complex(s)?)
    }
}

impl Serialize for HPoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for HPoint {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Hyperbolic distance for the metric `(dx² + dy²) / y²`.
///
/// Evaluated as `2 asinh(|z1 - z2| / (2 sqrt(y1 y2)))`, which is algebraically
/// the usual `log((|z1 - z̄2| + |z1 - z2|) / (|z1 - z̄2| - |z1 - z2|))` without
/// the cancellation in the denominator for nearby points.
pub fn poincare_distance(z1: HPoint, z2: HPoint) -> f64 {
    let chord = (z1.re - z2.re).hypot(z1.im - z2.im);
    2.0 * (chord / (2.0 * (z1.im * z2.im).sqrt())).asinh()
}

/// Anything that acts on the half-plane by `z ↦ (az + b) / (cz + d)`.
pub trait Mobius {
    fn coefficients(&self) -> [f64; 4];

    fn apply(&self, z: HPoint) -> HPoint {
        let [a, b, c, d] = self.coefficients();
        let z = z.to_complex();
        let den = c * z + d;
        let w = (a * z + b) / den;
        let det = a * d - b * c;
        // Im(Mz) = det · Im z / |cz + d|² keeps the sign exact.
        let im = det * z.im / den.norm_sqr();
        HPoint { re: w.re, im }
    }
}

pub fn mobius_apply<M: Mobius + ?Sized>(m: &M, z: HPoint) -> HPoint {
    m.apply(z)
}

/// An element of SL(2, ℤ).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntMatrix2 {
    a: i64,
    b: i64,
    c: i64,
    d: i64,
}

impl IntMatrix2 {
    pub const IDENTITY: IntMatrix2 = IntMatrix2 { a: 1, b: 0, c: 0, d: 1 };
    /// `z ↦ z + 1`
    pub const T: IntMatrix2 = IntMatrix2 { a: 1, b: 1, c: 0, d: 1 };
    /// `z ↦ -1/z`
    pub const S: IntMatrix2 = IntMatrix2 { a: 0, b: -1, c: 1, d: 0 };

    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        let det = a as i128 * d as i128 - b as i128 * c as i128;
        if det == 1 {
            Ok(Self { a, b, c, d })
        } else {
            Err(Error::NotUnimodular(det as f64))
        }
    }

    pub fn translation(n: i64) -> Self {
        Self { a: 1, b: n, c: 0, d: 1 }
    }

    pub fn entries(&self) -> [i64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    /// Matrix product `self · rhs`.
    pub fn mul(&self, rhs: &IntMatrix2) -> IntMatrix2 {
        IntMatrix2 {
            a: self.a * rhs.a + self.b * rhs.c,
            b: self.a * rhs.b + self.b * rhs.d,
            c: self.c * rhs.a + self.d * rhs.c,
            d: self.c * rhs.b + self.d * rhs.d,
        }
    }

    pub fn inverse(&self) -> IntMatrix2 {
        IntMatrix2 { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }
}

impl fmt::Display for IntMatrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

impl Mobius for IntMatrix2 {
    fn coefficients(&self) -> [f64; 4] {
        [self.a as f64, self.b as f64, self.c as f64, self.d as f64]
    }
}

/// A real matrix of determinant one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlMatrix {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
}

impl SlMatrix {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        Self::with_tolerance(a, b, c, d, DEFAULT_TOL)
    }

    pub fn with_tolerance(a: f64, b: f64, c: f64, d: f64, tol: f64) -> Result<Self> {
        let det = a * d - b * c;
        if (det - 1.0).abs() <= tol {
            Ok(Self { a, b, c, d })
        } else {
            Err(Error::NotUnimodular(det))
        }
    }

    pub fn mul(&self, rhs: &SlMatrix) -> SlMatrix {
        SlMatrix {
            a: self.a * rhs.a + self.b * rhs.c,
            b: self.a * rhs.b + self.b * rhs.d,
            c: self.c * rhs.a + self.d * rhs.c,
            d: self.c * rhs.b + self.d * rhs.d,
        }
    }
}

impl From<IntMatrix2> for SlMatrix {
    fn from(m: IntMatrix2) -> Self {
        let [a, b, c, d] = m.coefficients();
        SlMatrix { a, b, c, d }
    }
}

impl Mobius for SlMatrix {
    fn coefficients(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }
}

/// Closed fundamental domain `|Re z| ≤ 1/2, |z| ≥ 1`, with slack `tol`.
pub fn in_fundamental_domain(z: HPoint, tol: f64) -> bool {
    z.re.abs() <= 0.5 + tol && z.re * z.re + z.im * z.im >= 1.0 - tol
}

/// Moves `z` into the standard fundamental domain of SL(2, ℤ).
///
/// Returns the reduced point `w` together with the matrix `M` such that
/// `M · z = w`. The point is always recomputed from `z` through the
/// accumulated matrix, so the witness reproduces it exactly. Boundary points
/// are not canonicalized.
pub fn reduce_to_fundamental_domain(z: HPoint) -> (HPoint, IntMatrix2) {
    let mut m = IntMatrix2::IDENTITY;
    let mut w = z;
    for _ in 0..REDUCTION_ITERATION_CAP {
        let shift = w.re.round();
        if w.re.abs() > 0.5 && shift != 0.0 {
            m = IntMatrix2::translation(-(shift as i64)).mul(&m);
        } else if w.re * w.re + w.im * w.im < 1.0 - 4.0 * f64::EPSILON {
            m = IntMatrix2::S.mul(&m);
        } else {
            break;
        }
        w = m.apply(z);
    }
    (w, m)
}

/// Point at fraction `t` of the hyperbolic distance from `z1` to `z2` along
/// the geodesic joining them.
pub fn geodesic_point(z1: HPoint, z2: HPoint, t: f64) -> Result<HPoint> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::ParameterOutOfRange(t));
    }
    if t == 0.0 {
        return Ok(z1);
    }
    if t == 1.0 {
        return Ok(z2);
    }
    if z1 == z2 {
        return Err(Error::CoincidentPoints);
    }
    // Normalize z1 to i, pass to the disk with the Cayley map (i ↦ 0), walk
    // radially, then undo both maps.
    let i = Complex64::i();
    let w2 = (z2.to_complex() - z1.re) / z1.im;
    let u = (w2 - i) / (w2 + i);
    let dist = poincare_distance(z1, z2);
    let v = u / u.norm() * (0.5 * t * dist).tanh();
    let w = i * (1.0 + v) / (1.0 - v);
    HPoint::from_complex(z1.re + z1.im * w)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(re: f64, im: f64) -> HPoint {
        HPoint::new(re, im).unwrap()
    }

    #[test]
    fn rejects_lower_half_plane_and_non_finite() {
        assert!(HPoint::new(0.0, 0.0).is_err());
        assert!(HPoint::new(1.0, -2.0).is_err());
        assert!(HPoint::new(f64::NAN, 1.0).is_err());
        assert!(HPoint::new(0.0, f64::INFINITY).is_err());
    }

    #[test]
    fn parses_literals() {
        assert_eq!("0.5+0.866i".parse::<HPoint>().unwrap(), p(0.5, 0.866));
        assert_eq!("-2+1i".parse::<HPoint>().unwrap(), p(-2.0, 1.0));
        assert_eq!("0+.5i".parse::<HPoint>().unwrap(), p(0.0, 0.5));
        for bad in ["", "i", "1", "1+i", "1 + 2i", "1e3+1i", "inf+1i", "1+2", "1+-2i", "1..0+1i", "--1+1i"] {
            assert!(matches!(bad.parse::<HPoint>(), Err(Error::Parse(_))), "{bad}");
        }
        assert!(matches!("0-1i".parse::<HPoint>(), Err(Error::InvalidPoint { .. })));
        assert!(matches!("3+0i".parse::<HPoint>(), Err(Error::InvalidPoint { .. })));
    }

    #[test]
    fn display_parses_back() {
        let z = p(-0.1234567890123, 3.25);
        assert_eq!(z.to_string().parse::<HPoint>().unwrap(), z);
    }

    #[test]
    fn distance_identity() {
        assert_eq!(poincare_distance(HPoint::I, HPoint::I), 0.0);
    }

    #[test]
    fn distance_matches_log_formula() {
        let (z1, z2) = (p(0.3, 0.7), p(-1.2, 2.5));
        let a = (z1.to_complex() - z2.to_complex().conj()).norm();
        let b = (z1.to_complex() - z2.to_complex()).norm();
        let expected = ((a + b) / (a - b)).ln();
        assert!((poincare_distance(z1, z2) - expected).abs() < 1e-14);
    }

    #[test]
    fn mobius_examples() {
        let z = p(0.3, 1.7);
        assert_eq!(IntMatrix2::IDENTITY.apply(z), z);
        assert_eq!(IntMatrix2::T.apply(HPoint::I), p(1.0, 1.0));
        assert_eq!(IntMatrix2::S.apply(HPoint::I), p(0.0, 1.0));
    }

    #[test]
    fn non_unimodular_rejected() {
        assert!(IntMatrix2::new(2, 0, 0, 1).is_err());
        assert!(SlMatrix::new(2.0, 0.0, 0.0, 1.0).is_err());
        assert!(SlMatrix::new(2.0, 0.0, 0.0, 0.5).is_ok());
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(reduce_to_fundamental_domain(HPoint::I), (HPoint::I, IntMatrix2::IDENTITY));
        let (w, m) = reduce_to_fundamental_domain(p(1.0, 1.0));
        assert_eq!(w, HPoint::I);
        assert_eq!(m, IntMatrix2::new(1, -1, 0, 1).unwrap());
    }

    #[test]
    fn geodesic_examples() {
        let z1 = p(0.2, 0.9);
        assert_eq!(geodesic_point(z1, p(1.0, 1.0), 0.0).unwrap(), z1);
        assert_eq!(geodesic_point(HPoint::I, p(1.0, 1.0), 1.0).unwrap(), p(1.0, 1.0));
        // Midpoint on the imaginary axis is the geometric mean.
        let mid = geodesic_point(HPoint::I, p(0.0, 4.0), 0.5).unwrap();
        assert!(mid.re().abs() < 1e-14 && (mid.im() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn geodesic_errors() {
        assert_eq!(geodesic_point(HPoint::I, HPoint::I, 0.5), Err(Error::CoincidentPoints));
        assert!(matches!(geodesic_point(HPoint::I, p(1.0, 1.0), 1.5), Err(Error::ParameterOutOfRange(_))));
        assert!(matches!(geodesic_point(HPoint::I, p(1.0, 1.0), -0.1), Err(Error::ParameterOutOfRange(_))));
    }

    #[test]
    fn geodesic_point_splits_distance() {
        let (z1, z2) = (p(-1.5, 0.4), p(2.0, 3.0));
        let d = poincare_distance(z1, z2);
        for k in 1..10 {
            let t = k as f64 / 10.0;
            let w = geodesic_point(z1, z2, t).unwrap();
            assert!((poincare_distance(z1, w) - t * d).abs() < 1e-9);
            assert!((poincare_distance(z1, w) + poincare_distance(w, z2) - d).abs() < 1e-9);
        }
    }
}
