use eccentric_casimir::energy::*;
use eccentric_casimir::geometry::*;

fn geo(alpha: f64, delta: f64) -> Geometry {
    Geometry::new(alpha, delta).unwrap()
}

#[test]
fn concentric_regression_value() {
    let e = concentric_energy(2.0, &NumericsPolicy::with_rel_tol(1e-10)).unwrap();
    assert!((e.em / -1.412_855_855_505_1 - 1.0).abs() < 1e-9, "{e:?}");
    assert!((e.tm / -0.780_044_784_636_3 - 1.0).abs() < 1e-9, "{e:?}");
    let coarse = concentric_energy(2.0, &NumericsPolicy::with_rel_tol(1e-6)).unwrap();
    assert!((coarse.em / e.em - 1.0).abs() < 1e-6);
}

#[test]
fn concentric_tends_to_pfa() {
    let p = NumericsPolicy::with_rel_tol(1e-7);
    let ratio = |a: f64| concentric_energy(a, &p).unwrap().em / pfa_concentric_energy(&geo(a, 0.0));
    let (r1, r2, r3) = (ratio(1.1), ratio(1.05), ratio(1.02));
    assert!(r1 > 0.8 && r1 < 1.2, "{r1}");
    assert!((r2 - 1.0).abs() < 0.15, "{r2}");
    assert!((r3 - 1.0).abs() < (r2 - 1.0).abs() && (r2 - 1.0).abs() < (r1 - 1.0).abs());
}

#[test]
fn exact_near_contact_matches_pfa_scale() {
    let p = NumericsPolicy {
        rel_tol: 1e-5,
        max_order_cut: 512,
        ..NumericsPolicy::default()
    };
    let g = geo(1.05, 0.0);
    let r = exact_energy(&g, &p).unwrap().em / pfa_concentric_energy(&g);
    assert!((r - 1.0).abs() < 0.15, "{r}");
}

#[test]
fn dirichlet_dominates_at_large_alpha() {
    let e = concentric_energy(10.0, &NumericsPolicy::default()).unwrap();
    assert!(e.tm.abs() > e.te.abs());
    assert!(e.tm < 0.0 && e.te < 0.0);
}

#[test]
fn eccentricity_lowers_the_energy() {
    let p = NumericsPolicy::with_rel_tol(1e-8);
    let e0 = exact_energy(&geo(2.0, 0.0), &p).unwrap();
    let mut last = e0.em;
    for d in [0.1, 0.3, 0.6] {
        let e = exact_energy(&geo(2.0, d), &p).unwrap();
        assert!(e.em < last, "delta {d}");
        assert!(e.tm < e0.tm && e.te < e0.te);
        last = e.em;
    }
}

#[test]
fn refinement_stays_inside_error_estimate() {
    let g = geo(2.0, 0.3);
    let a = exact_energy(&g, &NumericsPolicy::with_rel_tol(1e-6)).unwrap();
    let b = exact_energy(&g, &NumericsPolicy::with_rel_tol(5e-7)).unwrap();
    assert!(
        (a.em - b.em).abs() < a.err_estimate,
        "{} vs {}",
        (a.em - b.em).abs(),
        a.err_estimate
    );
}

#[test]
fn delta_e_has_quadratic_response() {
    let p = NumericsPolicy::with_rel_tol(1e-9);
    let pert = perturbative_delta_e(2.0, &p).unwrap().em;
    let dev = |d: f64| (exact_delta_e(&geo(2.0, d), &p).unwrap().em / (d * d) / pert - 1.0).abs();
    let (big, small) = (dev(0.04), dev(0.02));
    assert!(small < big);
    // O(δ²): halving δ cuts the deviation by about four
    assert!(big / small > 3.0 && big / small < 5.0, "{big} {small}");
}

#[test]
fn delta_e_agrees_with_energy_difference() {
    let p = NumericsPolicy::with_rel_tol(1e-10);
    let g = geo(1.5, 0.2);
    let direct = exact_delta_e(&g, &p).unwrap();
    let diff = exact_energy(&g, &p).unwrap().em - exact_energy(&geo(1.5, 0.0), &p).unwrap().em;
    assert!(
        (direct.em / diff - 1.0).abs() < 1e-7,
        "{} {diff}",
        direct.em
    );
}

#[test]
fn required_order_cut_grows_near_contact() {
    let p = NumericsPolicy::with_rel_tol(1e-6);
    let needed = |alpha: f64| {
        let g = geo(alpha, 0.0);
        let target = concentric_energy(alpha, &NumericsPolicy::with_rel_tol(1e-9))
            .unwrap()
            .em;
        (1..)
            .map(|k| 2 * k)
            .find(|&n| {
                let e = exact_energy_at_cut(&g, &p, n).unwrap().em;
                (e / target - 1.0).abs() < 1e-5
            })
            .unwrap()
    };
    let (n1, n2) = (needed(1.4), needed(1.2));
    let ratio = n2 as f64 / n1 as f64;
    assert!(ratio > 1.4 && ratio < 3.0, "{n1} {n2}");
}

#[test]
fn cylinder_plane_weakens_with_distance() {
    let p = NumericsPolicy::default();
    let energies: Vec<PolarizedEnergy> = [1.5, 2.0, 3.0, 5.0]
        .iter()
        .map(|&h| cylinder_plane_energy(&CylinderPlaneGeometry::new(h).unwrap(), &p).unwrap())
        .collect();
    for w in energies.windows(2) {
        assert!(w[1].em.abs() < w[0].em.abs());
    }
    let far = energies.last().unwrap();
    assert!(far.tm.abs() > 5.0 * far.te.abs());
}

#[test]
fn eccentric_pair_approaches_cylinder_plane() {
    let p = NumericsPolicy::default();
    let plane = cylinder_plane_energy(&CylinderPlaneGeometry::new(2.0).unwrap(), &p).unwrap();
    let dev = |alpha: f64| {
        let e = exact_energy(&geo(alpha, alpha - 2.0), &p).unwrap();
        (e.em / plane.em - 1.0).abs()
    };
    let (d10, d100) = (dev(10.0), dev(100.0));
    // deviation falls off like 1/alpha
    assert!(d100 < d10 / 5.0 && d100 < 0.02, "{d10} {d100}");
}

#[test]
fn invalid_inputs_are_rejected() {
    let p = NumericsPolicy::default();
    assert_eq!(
        concentric_energy(1.0, &p).unwrap_err().name(),
        "InvalidRadiusRatio"
    );
    assert_eq!(
        perturbative_delta_e(0.5, &p).unwrap_err().name(),
        "InvalidRadiusRatio"
    );
    assert_eq!(
        cylinder_plane_energy(&CylinderPlaneGeometry { h_over_a: 0.9 }, &p)
            .unwrap_err()
            .name(),
        "InvalidPlaneDistance"
    );
    let g = Geometry {
        alpha: 2.0,
        delta: 1.5,
        a: None,
        length: None,
    };
    assert_eq!(exact_energy(&g, &p).unwrap_err().name(), "GeometryOverlap");
}
