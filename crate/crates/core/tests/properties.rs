use std::f64::consts::PI;

use cantor_spectral::herz::herz_interpolant;
use cantor_spectral::model::{inner_from_measure, projection_norms, RadiusPolicy};
use cantor_spectral::weights::norme_sandwich;
use cantor_spectral::{Complex64, FourierSeries, PerfectSymmetricSet, Weight};
use proptest::prelude::*;

fn poly(max_degree: usize) -> impl Strategy<Value = FourierSeries> {
    (0..=max_degree).prop_flat_map(|d| {
        prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 2 * d + 1).prop_map(move |cs| {
            let d = d as i64;
            FourierSeries::from_pairs(
                (-d..=d).zip(cs).map(|(n, (re, im))| (n, Complex64::new(re, im))).collect::<Vec<_>>(),
            )
        })
    })
}

fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * (1.0 + a.norm().max(b.norm()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn covers_nest(q in 3u32..8, n in 1u32..8) {
        let set = PerfectSymmetricSet::from_q(q).unwrap();
        let fine = set.level_cover(n).unwrap();
        let coarse = set.level_cover(n - 1).unwrap();
        prop_assert!(fine.nests_in(&coarse));
        prop_assert_eq!(fine.arcs.len(), 1 << n);
    }

    #[test]
    fn float_covers_nest(xi in 0.05f64..0.49, n in 1u32..8) {
        let set = PerfectSymmetricSet::new(xi).unwrap();
        prop_assert!(set.level_cover(n).unwrap().nests_in(&set.level_cover(n - 1).unwrap()));
    }

    #[test]
    fn distance_enclosure_shrinks(t in 0.0f64..(2.0 * PI), n in 1u32..12) {
        let set = PerfectSymmetricSet::from_q(3).unwrap();
        let angle = cantor_spectral::Angle::new(t).unwrap();
        let a = set.distance_to_set(angle, n, Default::default()).unwrap();
        let b = set.distance_to_set(angle, n + 1, Default::default()).unwrap();
        prop_assert!(a.lower <= a.upper);
        prop_assert!(a.width() <= 2.0 * PI * 3f64.powi(-(n as i32)) + 1e-12);
        prop_assert!(b.width() <= a.width() + 1e-12);
        prop_assert!(b.lower >= a.lower - 1e-12 && b.upper <= a.upper + 1e-12);
    }

    #[test]
    fn weighted_algebra_inequality(f in poly(20), g in poly(20), s in 0.0f64..4.0) {
        let w = Weight::polynomial(s).unwrap();
        let lhs = f.multiply(&g).weighted_norm(&w).unwrap();
        let rhs = f.weighted_norm(&w).unwrap() * g.weighted_norm(&w).unwrap();
        prop_assert!(lhs <= rhs * (1.0 + 1e-12) + 1e-14, "{} > {}", lhs, rhs);
    }

    #[test]
    fn sandwich_on_random_polynomials(f in poly(30), s in 1.0f64..4.0) {
        let r = norme_sandwich(&f, s).unwrap();
        prop_assert!(r.holds, "{:?}", r);
    }

    #[test]
    fn interpolation_is_linear(
        f in poly(12), g in poly(12),
        a in -2.0f64..2.0, b in -2.0f64..2.0,
        nodes in 2usize..40, s in 0.0f64..2.9,
    ) {
        let (a, b) = (Complex64::new(a, 0.3), Complex64::new(b, -0.7));
        let h = &f.scale(a) + &g.scale(b);
        let (fi, gi, hi) = (
            herz_interpolant(&f, nodes, s).unwrap(),
            herz_interpolant(&g, nodes, s).unwrap(),
            herz_interpolant(&h, nodes, s).unwrap(),
        );
        for m in -60i64..=60 {
            prop_assert!(close(hi.coeff(m), a * fi.coeff(m) + b * gi.coeff(m), 1e-11));
        }
    }

    #[test]
    fn aliased_frequencies_share_interpolant(n in -30i64..30, k in -3i64..3, nodes in 2usize..40, s in 0.0f64..1.0) {
        let one = Complex64::new(1.0, 0.0);
        let a = herz_interpolant(&FourierSeries::monomial(n, one), nodes, s).unwrap();
        let b = herz_interpolant(&FourierSeries::monomial(n + k * nodes as i64, one), nodes, s).unwrap();
        for m in -80i64..=80 {
            prop_assert!(close(a.coeff(m), b.coeff(m), 1e-12));
        }
    }

    #[test]
    fn interpolant_matches_node_values(f in poly(10), nodes in 2usize..32) {
        let g = herz_interpolant(&f, nodes, 0.0).unwrap();
        for k in 0..nodes {
            let t = 2.0 * PI * k as f64 / nodes as f64;
            prop_assert!(close(g.eval(t).unwrap(), f.evaluate(t), 1e-12));
        }
    }

    #[test]
    fn derivatives_compose(f in poly(15), a in 0u32..4, b in 0u32..4, t in 0.0f64..(2.0 * PI)) {
        let lhs = f.derivative(a).derivative(b);
        let rhs = f.derivative(a + b);
        for (n, c) in rhs.iter() {
            prop_assert!(close(lhs.coeff(n), c, 1e-14));
        }
        prop_assert!(close(f.derivative_at(a + b, t), rhs.evaluate(t), 1e-11));
    }

    #[test]
    fn series_json_round_trip(f in poly(10)) {
        let back = FourierSeries::from_json(&f.to_json().unwrap()).unwrap();
        for (n, c) in f.iter() {
            prop_assert_eq!(back.coeff(n), c);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn projection_norms_decrease(q in 3u32..6, level in 0u32..7, m in 16usize..200) {
        let set = PerfectSymmetricSet::from_q(q).unwrap();
        let mu = set.cantor_measure(level, Default::default()).unwrap();
        let v = inner_from_measure(&mu, m, RadiusPolicy::default()).unwrap();
        let t = projection_norms(&v, m).unwrap();
        prop_assert!(t.pnorm2.windows(2).all(|w| w[1] <= w[0]));
        prop_assert!(t.pnorm2.iter().all(|&p| p <= 1.0 && p >= -1e-10));
        prop_assert!((t.pnorm2[0] - (1.0 - (-2f64).exp())).abs() < 1e-10);
    }
}
