use num_complex::Complex64;
use proptest::prelude::*;

use flat_torus::extremal::{delta_bounds, family_lipschitz_constant, family_qc_distortion, PiecewiseStretchMap};
use flat_torus::halfplane::{
    geodesic_point, in_fundamental_domain, poincare_distance, reduce_to_fundamental_domain, Mobius, SlMatrix,
};
use flat_torus::linmap::{affine_comparison_map, compose, invert, StandardForm};
use flat_torus::metrics::{kappa_metric, lambda_metric, teichmuller_metric, wp_distance, MetricReport};
use flat_torus::torus::{curve_length, systole, torus_distance};
use flat_torus::{CurveClass, HPoint, IntMatrix2, LinearMap2, MarkedTorus, Normalization};

fn wide_point() -> impl Strategy<Value = HPoint> {
    (-5.0..5.0f64, 0.1..10.0f64).prop_map(|(x, y)| HPoint::new(x, y).unwrap())
}

fn moduli_point() -> impl Strategy<Value = HPoint> {
    (-2.0..2.0f64, 0.2..5.0f64).prop_map(|(x, y)| HPoint::new(x, y).unwrap())
}

fn sl2r() -> impl Strategy<Value = SlMatrix> {
    (0.3..2.0f64, prop::bool::ANY, -2.0..2.0f64, -2.0..2.0f64).prop_map(|(a, neg, b, c)| {
        let a = if neg { -a } else { a };
        SlMatrix::new(a, b, c, (1.0 + b * c) / a).unwrap()
    })
}

fn sl2z() -> impl Strategy<Value = IntMatrix2> {
    prop::collection::vec(0..3usize, 0..8).prop_map(|word| {
        let gens = [IntMatrix2::T, IntMatrix2::T.inverse(), IntMatrix2::S];
        word.into_iter().fold(IntMatrix2::IDENTITY, |acc, g| gens[g].mul(&acc))
    })
}

fn unimodular_map() -> impl Strategy<Value = LinearMap2> {
    (-2.0..2.0f64, -2.0..2.0f64, -2.0..2.0f64, -2.0..2.0f64)
        .prop_filter("orientation-preserving", |(a, b, c, d)| a * d - b * c > 0.05)
        .prop_map(|(a, b, c, d)| {
            let s = (a * d - b * c).sqrt().recip();
            LinearMap2::new(a * s, b * s, c * s, d * s)
        })
}

fn unit_area(t: HPoint) -> MarkedTorus {
    MarkedTorus::new(t, Normalization::UnitArea)
}

fn near(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

proptest! {
    #[test]
    fn poincare_is_a_metric(x in wide_point(), y in wide_point(), z in wide_point()) {
        prop_assert_eq!(poincare_distance(x, y), poincare_distance(y, x));
        prop_assert_eq!(poincare_distance(x, x), 0.0);
        prop_assert!(poincare_distance(x, z) <= poincare_distance(x, y) + poincare_distance(y, z) + 1e-12);
    }

    #[test]
    fn poincare_is_mobius_invariant(x in wide_point(), y in wide_point(), m in sl2r()) {
        let (a, b) = (m.apply(x), m.apply(y));
        prop_assert!(near(poincare_distance(a, b), poincare_distance(x, y), 1e-12));
    }

    #[test]
    fn geodesic_points_split_the_distance(x in wide_point(), y in wide_point(), t in 0.0..1.0f64) {
        prop_assume!(x != y);
        let p = geodesic_point(x, y, t).unwrap();
        let d = poincare_distance(x, y);
        prop_assert!(near(poincare_distance(x, p), t * d, 1e-9));
        prop_assert!(near(poincare_distance(p, y), (1.0 - t) * d, 1e-9));
    }

    #[test]
    fn reduction_lands_in_fundamental_domain(x in -50.0..50.0f64, y in 1e-4..20.0f64) {
        let z = HPoint::new(x, y).unwrap();
        let (w, m) = reduce_to_fundamental_domain(z);
        prop_assert!(in_fundamental_domain(w, 1e-12));
        let back = m.apply(z);
        prop_assert!((back.re() - w.re()).abs() <= 1e-12 && (back.im() - w.im()).abs() <= 1e-12);
    }

    #[test]
    fn point_text_round_trips(x in -1e6..1e6f64, y in 1e-6..1e6f64) {
        let p = HPoint::new(x, y).unwrap();
        let q: HPoint = p.to_string().parse().unwrap();
        prop_assert_eq!(p, q);
    }

    #[test]
    fn unit_area_tori_have_area_one(t in wide_point()) {
        let torus = unit_area(t);
        prop_assert!((torus.area() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn torus_distance_is_a_metric(
        t in moduli_point(),
        p in prop::array::uniform6(-3.0..3.0f64),
        lift in (-3i64..=3, -3i64..=3),
    ) {
        let torus = unit_area(t);
        let x = Complex64::new(p[0], p[1]);
        let y = Complex64::new(p[2], p[3]);
        let z = Complex64::new(p[4], p[5]);
        let d = |a, b| torus_distance(&torus, a, b);
        prop_assert!((d(x, y) - d(y, x)).abs() <= 1e-12);
        prop_assert!(d(x, x) <= 1e-12);
        prop_assert!(d(x, z) <= d(x, y) + d(y, z) + 1e-12);
        // bounded by the Euclidean distance of any pair of lifts
        let shifted = y + torus.lattice_vector(lift.0, lift.1);
        prop_assert!(d(x, y) <= (x - shifted).norm() + 1e-12);
        prop_assert!(d(x, shifted) <= 1e-12 + d(x, y));
    }

    #[test]
    fn systole_is_shortest(t in moduli_point()) {
        let torus = unit_area(t);
        let (class, len) = systole(&torus);
        prop_assert!((curve_length(&torus, class) - len).abs() <= 1e-12);
        for m in -50i64..=50 {
            for n in -50i64..=50 {
                if let Ok(c) = CurveClass::primitive(m, n) {
                    prop_assert!(len <= curve_length(&torus, c) + 1e-12);
                }
            }
        }
    }

    #[test]
    fn standard_form_matches_singular_value(c in -10.0..10.0f64, d in 0.1..10.0f64) {
        let s = StandardForm::new(c, d).unwrap();
        prop_assert!(near(s.lipschitz_constant(), s.to_map().lipschitz_constant(), 1e-12));
    }

    #[test]
    fn lipschitz_of_inverse(m in unimodular_map()) {
        let inv = invert(&m).unwrap();
        prop_assert!(near(m.lipschitz_constant(), inv.lipschitz_constant(), 1e-12));
    }

    #[test]
    fn distortion_is_squared_lipschitz(m in unimodular_map()) {
        let l = m.lipschitz_constant();
        prop_assert!(near(m.qc_distortion().unwrap(), l * l, 1e-12));
    }

    #[test]
    fn lipschitz_is_submultiplicative(m in unimodular_map(), n in unimodular_map()) {
        let lhs = compose(&m, &n).lipschitz_constant();
        prop_assert!(lhs <= m.lipschitz_constant() * n.lipschitz_constant() + 1e-12);
    }

    #[test]
    fn comparison_maps_compose(a in moduli_point(), b in moduli_point(), c in moduli_point()) {
        let (t1, t2, t3) = (unit_area(a), unit_area(b), unit_area(c));
        let direct = affine_comparison_map(&t1, &t3).unwrap();
        let chained = compose(&affine_comparison_map(&t2, &t3).unwrap(), &affine_comparison_map(&t1, &t2).unwrap());
        for (p, q) in [
            (direct.a11, chained.a11),
            (direct.a12, chained.a12),
            (direct.a21, chained.a21),
            (direct.a22, chained.a22),
        ] {
            prop_assert!(near(p, q, 1e-12), "{direct:?} vs {chained:?}");
        }
    }

    #[test]
    fn lambda_identities(x in moduli_point(), y in moduli_point()) {
        let lam = lambda_metric(x, y);
        prop_assert!((lam - lambda_metric(y, x)).abs() <= 1e-12);
        prop_assert!((lam - teichmuller_metric(x, y)).abs() <= 1e-12);
        prop_assert!((lam - 0.5 * poincare_distance(x, y)).abs() <= 1e-12);
        prop_assert!((wp_distance(x, y) - poincare_distance(x, y) / 2f64.sqrt()).abs() <= 1e-12);
        if x != y {
            prop_assert!(lam > 0.0);
        }
    }

    #[test]
    fn lambda_is_marking_invariant(x in moduli_point(), y in moduli_point(), m in sl2z()) {
        prop_assert!((lambda_metric(m.apply(x), m.apply(y)) - lambda_metric(x, y)).abs() <= 1e-12);
    }

    #[test]
    fn kappa_is_monotone_and_bounded(x in moduli_point(), y in moduli_point()) {
        let lam = lambda_metric(x, y);
        let mut previous = f64::NEG_INFINITY;
        for n in [1u32, 2, 4, 8, 16, 32] {
            let k = kappa_metric(x, y, n).unwrap();
            prop_assert!(k.value >= previous);
            prop_assert!(k.value <= lam + 1e-12);
            previous = k.value;
        }
    }

    #[test]
    fn stretch_family_properties(
        r in 1.05..4.0f64,
        eps in -0.45..0.45f64,
        u in 0.02..0.98f64,
        v in 0.02..0.98f64,
    ) {
        let (lo, hi) = delta_bounds(r, eps);
        prop_assume!(hi - lo > 1e-6);
        let f = PiecewiseStretchMap::new(r, eps, lo + u * (hi - lo)).unwrap();
        prop_assert_eq!(family_lipschitz_constant(&f), r);
        prop_assert!(f.bottom_block().a22 > 0.0 && f.top_block().a22 > 0.0);
        let k = family_qc_distortion(&f);
        if f.is_affine(1e-12) {
            prop_assert!((k - r * r).abs() <= 1e-12);
        } else {
            prop_assert!(k > r * r);
        }
        // a second member with a different delta differs somewhere on the grid
        let g = PiecewiseStretchMap::new(r, eps, lo + v * (hi - lo)).unwrap();
        prop_assume!((u - v).abs() > 1e-3);
        let differs = (0..=20).any(|j| {
            let y = j as f64 / 20.0;
            (f.evaluate(0.5, y).unwrap().1 - g.evaluate(0.5, y).unwrap().1).abs() > 1e-9
        });
        prop_assert!(differs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn report_json_round_trips(x in moduli_point(), y in moduli_point()) {
        let report = flat_torus::metrics::full_report(x, y, 20).unwrap();
        let text = serde_json::to_string(&report).unwrap();
        let back: MetricReport = serde_json::from_str(&text).unwrap();
        let (a, b) = (report.csv_values(), back.csv_values());
        for (p, q) in a.iter().zip(b.iter()) {
            prop_assert_eq!(p.to_bits(), q.to_bits());
        }
        prop_assert_eq!(report, back);
    }
}

/// Closed representatives of a class: lifts from `p` to `p + v` with periodic
/// wiggles. Their polygonal lengths are all at least `|v|`, and the straight
/// member attains it.
#[test]
fn curve_length_matches_sampled_representatives() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
    let samples = 10_000;
    for _ in 0..10 {
        let tau = HPoint::new(rng.random_range(-2.0..2.0), rng.random_range(0.2..5.0)).unwrap();
        let torus = unit_area(tau);
        let class = loop {
            if let Ok(c) = CurveClass::primitive(rng.random_range(-6..=6), rng.random_range(-6..=6)) {
                break c;
            }
        };
        let v = torus.lattice_vector(class.m(), class.n());
        let start = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        let mut best = f64::INFINITY;
        for k in 0..8 {
            let amp = Complex64::new(rng.random_range(-0.3..0.3), rng.random_range(-0.3..0.3)) * k as f64;
            let freq = rng.random_range(1..4) as f64;
            let point = |s: f64| start + v * s + amp * (std::f64::consts::TAU * freq * s).sin();
            let length: f64 = (0..samples)
                .map(|i| (point((i + 1) as f64 / samples as f64) - point(i as f64 / samples as f64)).norm())
                .sum();
            // the sampled closed curve returns to its start in the quotient
            assert!(torus_distance(&torus, point(0.0), point(1.0)) < 1e-9);
            assert!(length >= curve_length(&torus, class) * (1.0 - 1e-12));
            best = best.min(length);
        }
        let exact = curve_length(&torus, class);
        assert!((best - exact).abs() <= 0.01 * exact, "{class} on {tau}: {best} vs {exact}");
    }
}

/// Brute-force search over short words in T, T⁻¹, S for the smallest-height
/// image in the fundamental domain.
#[test]
fn reduction_matches_word_search() {
    let z = HPoint::new(2.3, 0.1).unwrap();
    let (w, m) = reduce_to_fundamental_domain(z);
    let gens = [IntMatrix2::T, IntMatrix2::T.inverse(), IntMatrix2::S];
    let mut frontier = vec![IntMatrix2::IDENTITY];
    let mut found = None;
    for _ in 0..8 {
        for g in &frontier {
            let image = g.apply(z);
            if in_fundamental_domain(image, 1e-12) {
                found = Some(image);
            }
        }
        if found.is_some() {
            break;
        }
        frontier = frontier.iter().flat_map(|g| gens.iter().map(move |h| h.mul(g))).collect();
    }
    let image = found.expect("a word of length at most 7 reaches the fundamental domain");
    assert!((image.re() - w.re()).abs() < 1e-12 && (image.im() - w.im()).abs() < 1e-12);
    assert!((w.re()).abs() < 1e-12 && (w.im() - 1.0).abs() < 1e-12, "2.3+0.1i reduces to {w} via {m}");
}
