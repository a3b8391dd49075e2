//! Self-check run by `flat-torus verify`: every identity the library relies
//! on, evaluated against the brute-force oracles on seeded random samples.
//!
//! Sample counts are smaller than in the acceptance tests; tolerances are the
//! same.

use std::f64::consts::LN_2;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::extremal::{delta_bounds, PiecewiseStretchMap};
use crate::halfplane::{
    in_fundamental_domain, poincare_distance, reduce_to_fundamental_domain, HPoint, IntMatrix2, Mobius,
};
use crate::linmap::{affine_comparison_map, LinearMap2};
use crate::metrics::{
    kappa_metric, kappa_prime, lambda_metric, s_kappa_prime, sorvali_inequality, teichmuller_metric, wp_distance,
    wp_tensor,
};
use crate::oracle::{self, SamplingConfig};
use crate::torus::{MarkedTorus, Normalization};

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Point with `Re ∈ [−2, 2]`, `Im ∈ [0.2, 5]`.
pub fn random_point<R: Rng>(rng: &mut R) -> HPoint {
    HPoint::new(rng.random_range(-2.0..2.0), rng.random_range(0.2..5.0)).expect("positive")
}

/// Orientation-preserving map rescaled to determinant one.
pub fn random_unimodular_map<R: Rng>(rng: &mut R) -> LinearMap2 {
    loop {
        let m = LinearMap2::new(
            rng.random_range(-2.0..2.0),
            rng.random_range(-2.0..2.0),
            rng.random_range(-2.0..2.0),
            rng.random_range(-2.0..2.0),
        );
        let det = m.det();
        if det > 0.05 {
            let s = det.sqrt().recip();
            return LinearMap2::new(m.a11 * s, m.a12 * s, m.a21 * s, m.a22 * s);
        }
    }
}

/// Random element of SL(2, ℤ) as a word of length up to `len` in `T`, `T⁻¹`, `S`.
pub fn random_modular<R: Rng>(rng: &mut R, len: usize) -> IntMatrix2 {
    let gens = [IntMatrix2::T, IntMatrix2::T.inverse(), IntMatrix2::S];
    (0..rng.random_range(0..=len)).fold(IntMatrix2::IDENTITY, |acc, _| gens[rng.random_range(0..3)].mul(&acc))
}

fn outcome(name: &'static str, worst: f64, tol: f64) -> CheckOutcome {
    CheckOutcome { name, passed: worst <= tol, detail: format!("worst {worst:.3e} (tol {tol:.0e})") }
}

fn unit_area(t: HPoint) -> MarkedTorus {
    MarkedTorus::new(t, Normalization::UnitArea)
}

pub fn run_all(seed: u64) -> Vec<CheckOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let dir_cfg = SamplingConfig::default();

    // Lipschitz closed form against sampled directions.
    let worst = (0..100)
        .map(|_| {
            let m = random_unimodular_map(&mut rng);
            let sampled = oracle::direction_sampled_norm(&m, &dir_cfg).expect("valid config");
            let closed = m.lipschitz_constant();
            if sampled > closed + 1e-9 {
                f64::INFINITY
            } else {
                closed - sampled
            }
        })
        .fold(0.0, f64::max);
    out.push(outcome("lipschitz closed form vs sampled directions", worst, 1e-6));

    // Affine maps are sampled-extremal.
    let grid = SamplingConfig { grid_n: 200, ..SamplingConfig::default() };
    let worst = (0..3)
        .map(|_| {
            let (a, b) = (unit_area(random_point(&mut rng)), unit_area(random_point(&mut rng)));
            let m = affine_comparison_map(&a, &b).expect("nondegenerate");
            let l = m.lipschitz_constant();
            let s = oracle::sampled_lipschitz(|z| m.apply(z), &a, &b, &grid).expect("affine maps are compatible");
            if s > l + 1e-9 {
                f64::INFINITY
            } else {
                (l - s) / l
            }
        })
        .fold(0.0, f64::max);
    out.push(outcome("affine map attains sampled Lipschitz constant", worst, 0.01));

    // Metric axioms for lambda.
    let worst = (0..200)
        .map(|_| {
            let (x, y, z) = (random_point(&mut rng), random_point(&mut rng), random_point(&mut rng));
            let sym = (lambda_metric(x, y) - lambda_metric(y, x)).abs();
            let tri = (lambda_metric(x, z) - lambda_metric(x, y) - lambda_metric(y, z)).max(0.0);
            let zero = lambda_metric(x, x).abs();
            let sep = if lambda_metric(x, y) > 1e-9 { 0.0 } else { f64::INFINITY };
            sym.max(tri).max(zero).max(sep)
        })
        .fold(0.0, f64::max);
    out.push(outcome("lambda is a metric", worst, 1e-12));

    // K = L² and lambda = teich = poincare / 2.
    let worst = (0..200)
        .map(|_| {
            let m = random_unimodular_map(&mut rng);
            let l2 = m.lipschitz_constant().powi(2);
            (m.qc_distortion().expect("det one") - l2).abs() / l2.max(1.0)
        })
        .fold(0.0, f64::max);
    out.push(outcome("qc distortion equals squared Lipschitz constant", worst, 1e-12));
    let worst = (0..200)
        .map(|_| {
            let (x, y) = (random_point(&mut rng), random_point(&mut rng));
            let lam = lambda_metric(x, y);
            (lam - teichmuller_metric(x, y)).abs().max((lam - 0.5 * poincare_distance(x, y)).abs())
        })
        .fold(0.0, f64::max);
    out.push(outcome("lambda = teich = poincare / 2", worst, 1e-12));

    // Curve ratios approach lambda.
    let worst = (0..5)
        .map(|_| {
            let (x, y) = (random_point(&mut rng), random_point(&mut rng));
            let k = kappa_metric(x, y, 500).expect("N >= 1");
            if k.gap < -1e-12 {
                f64::INFINITY
            } else {
                k.gap
            }
        })
        .fold(0.0, f64::max);
    out.push(outcome("kappa approaches lambda at N = 500", worst, 1e-6));
    let anchor = kappa_metric(HPoint::I, HPoint::new(0.0, 2.0).expect("valid"), 5).expect("N >= 1");
    out.push(CheckOutcome {
        name: "kappa(i, 2i) attained by (0, 1)",
        passed: anchor.gap.abs() <= 1e-12 && (anchor.witness.m(), anchor.witness.n()) == (0, 1),
        detail: format!("gap {:.3e}, witness {}", anchor.gap, anchor.witness),
    });

    // Stretch family.
    let mut family_ok = true;
    let mut detail = String::new();
    for r in [1.5, 2.0, 3.0] {
        for eps in [-0.3, 0.0, 0.3] {
            let (lo, hi) = delta_bounds(r, eps);
            let delta = lo + 0.37 * (hi - lo);
            let f = PiecewiseStretchMap::new(r, eps, delta).expect("interior parameters");
            let sampled = f.sampled_lipschitz(200).expect("compatible");
            let l_ok = f.lipschitz_constant() == r && sampled <= r + 1e-9 && sampled >= 0.99 * r;
            let k = f.qc_distortion();
            let k_ok = if f.is_affine(1e-12) { (k - r * r).abs() < 1e-12 } else { k > r * r + 1e-9 };
            if !(l_ok && k_ok) {
                family_ok = false;
                detail = format!("r={r} eps={eps} delta={delta}: sampled {sampled}, K {k}");
            }
        }
    }
    out.push(CheckOutcome { name: "stretch family is Lipschitz-extremal", passed: family_ok, detail });

    // kappa' and the Sorvali bound.
    let two_i = HPoint::new(0.0, 2.0).expect("valid");
    let fwd = kappa_prime(HPoint::I, two_i, 1).expect("N >= 1");
    let rev = kappa_prime(two_i, HPoint::I, 1).expect("N >= 1");
    out.push(outcome("kappa'(i, 2i) = log 2, kappa'(2i, i) = 0", (fwd - LN_2).abs().max(rev.abs()), 1e-12));
    let worst = (0..5)
        .map(|_| {
            let (x, y) = (random_point(&mut rng), random_point(&mut rng));
            (s_kappa_prime(x, y, 500).expect("N >= 1") - teichmuller_metric(x, y)).abs()
        })
        .fold(0.0, f64::max);
    out.push(outcome("symmetrized kappa' = teich at N = 500", worst, 1e-6));
    let ineq = sorvali_inequality(HPoint::I, two_i, 10).expect("N >= 1");
    out.push(CheckOutcome {
        name: "Sorvali bound holds for the log K convention",
        passed: ineq.holds_log_k && !ineq.holds_half_log_k,
        detail: format!("d = {}, convention {}", ineq.dilatation, ineq.satisfying_convention()),
    });

    // Weil-Petersson.
    let path_cfg = SamplingConfig::default();
    let mut closed_worst = (wp_tensor(HPoint::I) - 0.5).abs();
    let mut path_worst = 0.0f64;
    for _ in 0..20 {
        let (x, y) = (random_point(&mut rng), random_point(&mut rng));
        let wp = wp_distance(x, y);
        closed_worst = closed_worst.max((wp - poincare_distance(x, y) / 2f64.sqrt()).abs());
        let path =
            oracle::hyperbolic_path_length(x, y, oracle::weil_petersson_weight, &path_cfg).expect("valid config");
        path_worst = path_worst.max((path - wp).abs());
    }
    out.push(outcome("Weil-Petersson = poincare / sqrt 2", closed_worst, 1e-9));
    out.push(outcome("Weil-Petersson path quadrature", path_worst, 1e-9));

    // Fundamental domain.
    let worst = (0..300)
        .map(|_| {
            let z = HPoint::new(rng.random_range(-5.0..5.0), rng.random_range(0.01..3.0)).expect("positive");
            let (w, m) = reduce_to_fundamental_domain(z);
            let back = m.apply(z);
            let err = (back.re() - w.re()).abs().max((back.im() - w.im()).abs());
            if in_fundamental_domain(w, 1e-12) {
                err
            } else {
                f64::INFINITY
            }
        })
        .fold(0.0, f64::max);
    out.push(outcome("fundamental-domain reduction", worst, 1e-12));
    let worst = (0..50)
        .map(|_| {
            let (x, y) = (random_point(&mut rng), random_point(&mut rng));
            let m = random_modular(&mut rng, 6);
            (lambda_metric(m.apply(x), m.apply(y)) - lambda_metric(x, y)).abs()
        })
        .fold(0.0, f64::max);
    out.push(outcome("lambda is invariant under change of marking", worst, 1e-12));

    out
}
