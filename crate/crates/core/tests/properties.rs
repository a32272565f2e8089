use eccentric_casimir::geometry::Geometry;
use eccentric_casimir::kernel::{
    build_eccentric, default_inner_cut, log_det_i_minus_a, Polarization,
};
use eccentric_casimir::specfun::{BesselLadder, Wide};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn wronskian_holds(lx in -3.0f64..4.0, n in 0i64..400) {
        let x = 10f64.powf(lx);
        let l = BesselLadder::new(x, n as usize + 1).unwrap();
        let w = (l.i(n) * l.k(n + 1) + l.i(n + 1) * l.k(n)).scale(x).to_f64();
        prop_assert!((w - 1.0).abs() < 1e-12, "x = {x}, n = {n}, w = {w}");
    }

    #[test]
    fn k_recurrence_holds(lx in -2.0f64..3.0, n in 1i64..300) {
        let x = 10f64.powf(lx);
        let l = BesselLadder::new(x, n as usize + 1).unwrap();
        let lhs = l.k(n + 1) - l.k(n - 1);
        let rhs = l.k(n).scale(2.0 * n as f64 / x);
        prop_assert!(((lhs - rhs) / rhs).to_f64().abs() < 1e-12);
    }

    #[test]
    fn validation_matches_definition(alpha in 0.5f64..4.0, delta in -0.5f64..3.0) {
        let ok = Geometry::new(alpha, delta).is_ok();
        let expected = alpha > 1.0 && delta >= 0.0 && delta < alpha - 1.0 - 1e-9;
        if (delta - (alpha - 1.0)).abs() > 1e-9 {
            prop_assert_eq!(ok, expected);
        }
    }

    #[test]
    fn log_det_is_non_positive(alpha in 1.2f64..4.0, frac in 0.0f64..0.8, beta in 0.05f64..8.0) {
        let g = Geometry::new(alpha, frac * (alpha - 1.0)).unwrap();
        for pol in Polarization::BOTH {
            let m = build_eccentric(pol, &g, beta, 16, default_inner_cut(16, beta, g.delta)).unwrap();
            let ld = log_det_i_minus_a(&m).unwrap();
            prop_assert!(ld <= 1e-15 && ld.is_finite(), "{ld}");
        }
    }

    #[test]
    fn wide_products_match_logs(a in -300.0f64..300.0, b in -300.0f64..300.0) {
        let (x, y) = (Wide::from_f64(10f64.powf(a / 10.0)), Wide::from_f64(10f64.powf(b / 10.0)));
        let ln = (x * y).ln_abs();
        prop_assert!((ln - (a + b) / 10.0 * std::f64::consts::LN_10).abs() < 1e-12 * (1.0 + ln.abs()));
    }
}
