//! Distances on the Teichmüller space of the torus.
//!
//! | function | quantity |
//! |----------|----------|
//! | [`lambda_metric`] | log of the least Lipschitz constant between unit-area tori |
//! | [`teichmuller_metric`] | half the log of the least quasiconformal distortion |
//! | [`kappa_metric`] | log of the largest curve-length ratio, unit-area tori |
//! | [`kappa_prime`] | log of the largest curve-length ratio, lattices `ℤ + τℤ` |
//! | [`sorvali_dilatation`], [`s_kappa_prime`] | two-sided max / mean of `kappa_prime` |
//! | [`wp_distance`] | Weil-Petersson distance `|dτ|² / (2 Im τ²)` |
//!
//! Curve-ratio metrics are suprema over infinitely many classes; they are
//! computed by enumerating the classes of length at most `N · (|b₁| + |b₂|)`
//! on the source torus, `b` a reduced basis (see [`max_curve_ratio`]).

use std::cmp::Ordering;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::halfplane::{poincare_distance, HPoint};
use crate::linmap::affine_comparison_map;
use crate::torus::{gcd, CurveClass, MarkedTorus, Normalization};

pub const DEFAULT_ENUMERATION_BOUND: u32 = 500;

/// Below this, a curve-ratio gap counts as "attained".
pub const ATTAINED_TOL: f64 = 1e-14;

// Ratios this close (relatively) to the maximum compete for the witness.
const WITNESS_TIE_TOL: f64 = 1e-13;

fn unit_area(t: HPoint) -> MarkedTorus {
    MarkedTorus::new(t, Normalization::UnitArea)
}

fn unit_generator(t: HPoint) -> MarkedTorus {
    MarkedTorus::new(t, Normalization::UnitGenerator)
}

/// Lipschitz metric: `log L` of the affine comparison map between the
/// unit-area tori.
pub fn lambda_metric(t1: HPoint, t2: HPoint) -> f64 {
    if t1 == t2 {
        return 0.0;
    }
    let map = affine_comparison_map(&unit_area(t1), &unit_area(t2)).expect("unit-area bases are nondegenerate");
    map.lipschitz_constant().ln()
}

/// Teichmüller metric `½ log K` of the affine comparison map.
pub fn teichmuller_metric(t1: HPoint, t2: HPoint) -> f64 {
    0.5 * teichmuller_log_k(t1, t2)
}

/// `log K` of the affine comparison map (the Teichmüller metric without the
/// factor one half).
pub fn teichmuller_log_k(t1: HPoint, t2: HPoint) -> f64 {
    if t1 == t2 {
        return 0.0;
    }
    let map = affine_comparison_map(&unit_generator(t1), &unit_generator(t2)).expect("lattice bases are nondegenerate");
    map.qc_distortion().expect("comparison maps preserve orientation").ln()
}

pub fn wp_tensor(t: HPoint) -> f64 {
    0.5 / (t.im() * t.im())
}

pub fn wp_distance(t1: HPoint, t2: HPoint) -> f64 {
    poincare_distance(t1, t2) / std::f64::consts::SQRT_2
}

/// Largest curve-length ratio found by enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurveRatio {
    /// `log` of the largest ratio.
    pub value: f64,
    pub witness: CurveClass,
}

fn witness_key(m: i64, n: i64) -> (i64, i64, i64) {
    (m.abs() + n.abs(), n.abs(), n)
}

// Sign convention for a class: `m > 0`, or `m = 0` and `n > 0`.
fn canonical_sign(m: i64, n: i64) -> (i64, i64) {
    if m < 0 || (m == 0 && n < 0) {
        (-m, -n)
    } else {
        (m, n)
    }
}

/// Radius of the enumeration disk on the source torus for bound `N`:
/// `N · (|b₁| + |b₂|)` with `b` a reduced basis.
pub fn enumeration_radius(from: &MarkedTorus, bound: u32) -> f64 {
    let [b1, b2] = from.reduced_basis();
    bound as f64 * (b1.norm() + b2.norm())
}

/// Maximizes `|m ζ₁ + n ζ₂| / |m ω₁ + n ω₂|` over the primitive classes whose
/// geodesic on `from` has length at most [`enumeration_radius`].
///
/// The disk depends only on the lattice, not on the marking, and contains
/// both reduced basis vectors for every `N ≥ 1`; disks grow with `N`, so the
/// estimate is nondecreasing in `N`. A box `max(|m|, |n|) ≤ N` in marked
/// coordinates would miss the long vectors needed to approximate directions
/// close to a short generator of a thin torus.
///
/// The scan runs over lattice points `i b₁ + j b₂` of the upper half-disk and
/// compares squared lengths; non-primitive points repeat the ratio of their
/// primitive part, so no gcd is needed there. Points within a relative
/// `1e-13` of the maximum are then reduced to primitive classes and rescored
/// from the marked basis. The witness is the class of smallest `|m| + |n|`
/// (then smallest `|n|`, then smallest `n`) among them, with sign fixed by
/// `m > 0` or `m = 0, n > 0`.
pub fn max_curve_ratio(from: &MarkedTorus, to: &MarkedTorus, bound: u32) -> Result<CurveRatio> {
    if bound == 0 {
        return Err(Error::InvalidArgument("enumeration bound N must be >= 1".into()));
    }
    let [b1, b2] = from.reduced_basis();
    let [c1, c2] = from.reduced_coordinates();
    let d1 = to.lattice_vector(c1.0, c1.1);
    let d2 = to.lattice_vector(c2.0, c2.1);

    let radius = enumeration_radius(from, bound);
    let len1 = b1.norm();
    let height = from.area().abs() / len1;
    let shift = (b2 * b1.conj()).re / (len1 * len1);
    let rows = (radius / height).floor() as i64;
    let row_range = |j: i64| {
        let jf = j as f64;
        let half = (radius * radius - (jf * height).powi(2)).max(0.0).sqrt() / len1;
        let lo = if j == 0 { 1 } else { (-jf * shift - half).ceil() as i64 };
        (lo, (-jf * shift + half).floor() as i64)
    };
    let squared_ratio = |i: i64, j: i64| {
        let (i, j) = (i as f64, j as f64);
        (d1 * i + d2 * j).norm_sqr() / (b1 * i + b2 * j).norm_sqr()
    };

    let best_sq = (0..=rows)
        .into_par_iter()
        .map(|j| {
            let (lo, hi) = row_range(j);
            (lo..=hi).map(|i| squared_ratio(i, j)).fold(0.0f64, f64::max)
        })
        .reduce(|| 0.0, f64::max);

    // squared ratios, so twice the relative tolerance, plus rounding slack
    let cutoff = best_sq * (1.0 - 4.0 * WITNESS_TIE_TOL);
    let mut candidates: Vec<(i64, i64)> = (0..=rows)
        .into_par_iter()
        .flat_map_iter(|j| {
            let (lo, hi) = row_range(j);
            (lo..=hi).filter(move |&i| squared_ratio(i, j) >= cutoff).map(move |i| {
                let g = gcd(i.unsigned_abs(), j.unsigned_abs()) as i64;
                let (i, j) = (i / g, j / g);
                canonical_sign(i * c1.0 + j * c2.0, i * c1.1 + j * c2.1)
            })
        })
        .collect();
    candidates.sort_unstable();
    candidates.dedup();

    let ratio = |(m, n): (i64, i64)| to.lattice_vector(m, n).norm() / from.lattice_vector(m, n).norm();
    let best = candidates.iter().map(|&c| ratio(c)).fold(0.0f64, f64::max);
    let threshold = best * (1.0 - WITNESS_TIE_TOL);
    let (wm, wn) = candidates
        .iter()
        .copied()
        .filter(|&c| ratio(c) >= threshold)
        .min_by_key(|&(m, n)| witness_key(m, n))
        .expect("the maximizing point is a candidate");

    Ok(CurveRatio { value: best.ln(), witness: CurveClass::primitive(wm, wn)? })
}

/// Curve-ratio metric with its distance to the Lipschitz metric.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KappaEstimate {
    pub value: f64,
    pub witness: CurveClass,
    /// `lambda_metric − value`; nonnegative up to rounding.
    pub gap: f64,
    /// Whether the supremum is reached by the witness (gap ≤ [`ATTAINED_TOL`]) rather
    /// than only approached.
    pub attained: bool,
}

pub fn kappa_metric(t1: HPoint, t2: HPoint, bound: u32) -> Result<KappaEstimate> {
    let ratio = max_curve_ratio(&unit_area(t1), &unit_area(t2), bound)?;
    let gap = lambda_metric(t1, t2) - ratio.value;
    Ok(KappaEstimate { value: ratio.value, witness: ratio.witness, gap, attained: gap <= ATTAINED_TOL })
}

/// Curve-ratio quantity for the normalization with first generator 1; not
/// symmetric.
pub fn kappa_prime_with_witness(t1: HPoint, t2: HPoint, bound: u32) -> Result<CurveRatio> {
    max_curve_ratio(&unit_generator(t1), &unit_generator(t2), bound)
}

pub fn kappa_prime(t1: HPoint, t2: HPoint, bound: u32) -> Result<f64> {
    Ok(kappa_prime_with_witness(t1, t2, bound)?.value)
}

/// `max(κ′(t1, t2), κ′(t2, t1))`.
pub fn sorvali_dilatation(t1: HPoint, t2: HPoint, bound: u32) -> Result<f64> {
    Ok(kappa_prime(t1, t2, bound)?.max(kappa_prime(t2, t1, bound)?))
}

/// `(κ′(t1, t2) + κ′(t2, t1)) / 2`.
pub fn s_kappa_prime(t1: HPoint, t2: HPoint, bound: u32) -> Result<f64> {
    Ok(0.5 * (kappa_prime(t1, t2, bound)? + kappa_prime(t2, t1, bound)?))
}

/// The two-sided bound `d ≤ D ≤ 2d` between the dilatation metric `d` and the
/// Teichmüller distance `D`, evaluated for both conventions of `D`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SorvaliInequality {
    pub dilatation: f64,
    /// `D = ½ log K`
    pub teich_half_log_k: f64,
    /// `D = log K`
    pub teich_log_k: f64,
    pub holds_half_log_k: bool,
    pub holds_log_k: bool,
}

impl SorvaliInequality {
    pub fn evaluate(dilatation: f64, log_k: f64, tol: f64) -> Self {
        let holds = |d_teich: f64| dilatation <= d_teich + tol && d_teich <= 2.0 * dilatation + tol;
        let half = 0.5 * log_k;
        Self {
            dilatation,
            teich_half_log_k: half,
            teich_log_k: log_k,
            holds_half_log_k: holds(half),
            holds_log_k: holds(log_k),
        }
    }

    /// Which convention satisfies the bound, if exactly one does.
    pub fn satisfying_convention(&self) -> &'static str {
        match (self.holds_half_log_k, self.holds_log_k) {
            (true, true) => "both",
            (true, false) => "half-log-K",
            (false, true) => "log-K",
            (false, false) => "neither",
        }
    }
}

/// Enumeration tolerance: curve-ratio estimates at the default bound sit
/// within this of their suprema.
pub const ENUMERATION_TOL: f64 = 1e-6;

pub fn sorvali_inequality(t1: HPoint, t2: HPoint, bound: u32) -> Result<SorvaliInequality> {
    let d = sorvali_dilatation(t1, t2, bound)?;
    Ok(SorvaliInequality::evaluate(d, teichmuller_log_k(t1, t2), ENUMERATION_TOL))
}

/// Every distance between two points of the Teichmüller space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricReport {
    pub tau_from: HPoint,
    pub tau_to: HPoint,
    pub lambda: f64,
    pub teich: f64,
    pub kappa_enumerated: f64,
    pub kappa_witness: Option<CurveClass>,
    pub kappa_gap: f64,
    pub kappa_attained: bool,
    pub kappa_prime_fwd: f64,
    pub kappa_prime_rev: f64,
    pub sorvali_d: f64,
    pub s_kappa_prime: f64,
    pub wp: f64,
    pub poincare: f64,
    pub sorvali_holds_half_log_k: bool,
    pub sorvali_holds_log_k: bool,
}

/// Fixed CSV column order.
pub const CSV_COLUMNS: [&str; 12] = [
    "tau_from",
    "tau_to",
    "lambda",
    "teich",
    "kappa_enumerated",
    "kappa_gap",
    "kappa_prime_fwd",
    "kappa_prime_rev",
    "sorvali_d",
    "s_kappa_prime",
    "wp",
    "poincare",
];

impl MetricReport {
    /// Compact JSON with shortest round-trip numbers.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }

    /// Numeric CSV fields in [`CSV_COLUMNS`] order (after the two points).
    pub fn csv_values(&self) -> [f64; 10] {
        [
            self.lambda,
            self.teich,
            self.kappa_enumerated,
            self.kappa_gap,
            self.kappa_prime_fwd,
            self.kappa_prime_rev,
            self.sorvali_d,
            self.s_kappa_prime,
            self.wp,
            self.poincare,
        ]
    }
}

pub fn full_report(t1: HPoint, t2: HPoint, bound: u32) -> Result<MetricReport> {
    let kappa = kappa_metric(t1, t2, bound)?;
    let fwd = kappa_prime(t1, t2, bound)?;
    let rev = kappa_prime(t2, t1, bound)?;
    let sorvali_d = fwd.max(rev);
    let sorvali = SorvaliInequality::evaluate(sorvali_d, teichmuller_log_k(t1, t2), ENUMERATION_TOL);
    Ok(MetricReport {
        tau_from: t1,
        tau_to: t2,
        lambda: lambda_metric(t1, t2),
        teich: teichmuller_metric(t1, t2),
        kappa_enumerated: kappa.value,
        kappa_witness: Some(kappa.witness),
        kappa_gap: kappa.gap,
        kappa_attained: kappa.attained,
        kappa_prime_fwd: fwd,
        kappa_prime_rev: rev,
        sorvali_d,
        s_kappa_prime: 0.5 * (fwd + rev),
        wp: wp_distance(t1, t2),
        poincare: poincare_distance(t1, t2),
        sorvali_holds_half_log_k: sorvali.holds_half_log_k,
        sorvali_holds_log_k: sorvali.holds_log_k,
    })
}

/// Name of a single distance, as accepted on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MetricKind {
    Lambda,
    Teich,
    Kappa,
    KappaPrime,
    Sorvali,
    SkappaPrime,
    Wp,
    Poincare,
}

impl MetricKind {
    pub fn distance(self, t1: HPoint, t2: HPoint, bound: u32) -> Result<f64> {
        Ok(match self {
            MetricKind::Lambda => lambda_metric(t1, t2),
            MetricKind::Teich => teichmuller_metric(t1, t2),
            MetricKind::Kappa => kappa_metric(t1, t2, bound)?.value,
            MetricKind::KappaPrime => kappa_prime(t1, t2, bound)?,
            MetricKind::Sorvali => sorvali_dilatation(t1, t2, bound)?,
            MetricKind::SkappaPrime => s_kappa_prime(t1, t2, bound)?,
            MetricKind::Wp => wp_distance(t1, t2),
            MetricKind::Poincare => poincare_distance(t1, t2),
        })
    }
}

/// Order used to pick among tied witnesses.
pub fn compare_classes(a: &CurveClass, b: &CurveClass) -> Ordering {
    witness_key(a.m(), a.n()).cmp(&witness_key(b.m(), b.n()))
}
