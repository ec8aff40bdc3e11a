mod common;

use common::{poch, q};
use dml_core::densities::{
    bures_det_density, density_grid_csv, density_moment, det_density, exact_density_moment, hs_det_density,
    integrate_unit, lemma_factors, locate_crossing, product_density, Metric,
};
use proptest::prelude::*;
use rug::Rational;

const METRICS: [Metric; 2] = [Metric::Hs, Metric::Bures];

#[test]
fn normalized() {
    for m in METRICS {
        let total = density_moment(m, 0).unwrap();
        assert!((total - 1.0).abs() < 1e-10, "{m}: {total}");
    }
}

#[test]
fn nonnegative_on_grid() {
    for m in METRICS {
        for i in 1..=10_000 {
            let t = i as f64 / 10_000.0;
            let f = det_density(m, t).unwrap();
            assert!(f >= 0.0 && f.is_finite(), "{m} t={t}");
        }
    }
}

#[test]
fn exact_moments_from_pochhammers() {
    for n in 0..=30u32 {
        let hs =
            poch(&q(4, 1), 2 * n) * poch(&q(2, 1), 2 * n) / (poch(&q(5, 1), 2 * n) * poch(&q(11, 2), 2 * n));
        assert_eq!(exact_density_moment(Metric::Hs, n), hs);
        let bures = poch(&q(3, 2), 2 * n) / (poch(&q(4, 1), 2 * n) * Rational::from((n + 1) * (2 * n + 1)));
        assert_eq!(exact_density_moment(Metric::Bures, n), bures);
    }
    assert_eq!(exact_density_moment(Metric::Hs, 1), q(16, 143));
    assert_eq!(exact_density_moment(Metric::Bures, 1), q(1, 32));
}

#[test]
fn numeric_moments_to_order_thirty() {
    for m in METRICS {
        for n in 0..=30 {
            let exact = exact_density_moment(m, n).to_f64();
            let numeric = density_moment(m, n).unwrap();
            assert!(
                ((numeric - exact) / exact).abs() < 1e-8,
                "{m} n={n}: {numeric} vs {exact}"
            );
        }
        assert!(density_moment(m, 31).is_err());
    }
}

#[test]
fn crossing() {
    let t = locate_crossing(0.005, 0.1).unwrap();
    assert!((t - 0.0217).abs() < 5e-4, "{t}");
    assert!((t - 0.021702).abs() < 1e-5, "{t}");
    // one sign change on a fine grid
    let changes = (1..2000)
        .map(|i| i as f64 / 2000.0)
        .map(|t| hs_det_density(t).unwrap() > bures_det_density(t).unwrap())
        .collect::<Vec<_>>()
        .windows(2)
        .filter(|w| w[0] != w[1])
        .count();
    assert_eq!(changes, 1);
    assert!(hs_det_density(0.5).unwrap() > bures_det_density(0.5).unwrap());
    assert!(hs_det_density(0.01).unwrap() < bures_det_density(0.01).unwrap());
    assert!(locate_crossing(0.3, 0.6).is_err());
}

#[test]
fn product_lemma_reproduces_closed_forms() {
    for m in METRICS {
        let (f1, f2) = lemma_factors(m);
        for i in 1..50 {
            let x = i as f64 / 50.0;
            let conv = product_density(f1, f2, x).unwrap();
            let closed = det_density(m, x).unwrap();
            assert!((conv - closed).abs() < 1e-6, "{m} x={x}: {conv} vs {closed}");
        }
    }
}

#[test]
fn lemma_factors_are_densities() {
    for m in METRICS {
        let (f1, f2) = lemma_factors(m);
        assert!((integrate_unit(f1, 0.0, 1.0).unwrap() - 1.0).abs() < 1e-10);
        assert!((integrate_unit(f2, 0.0, 1.0).unwrap() - 1.0).abs() < 1e-10);
    }
}

#[test]
fn uniform_product_is_log() {
    for x in [0.01, 0.2, 0.5, 0.9] {
        let f = product_density(|_| 1.0, |_| 1.0, x).unwrap();
        assert!((f + f64::ln(x)).abs() < 1e-10);
    }
    assert!(product_density(|_| 1.0, |_| 1.0, 0.0).is_err());
    assert!(product_density(|_| 1.0, |_| 1.0, 1.2).is_err());
}

#[test]
fn endpoint_behaviour() {
    assert_eq!(hs_det_density(0.0).unwrap(), 63.0 / 4.0);
    assert_eq!(hs_det_density(1.0).unwrap(), 0.0);
    assert!(bures_det_density(-0.1).is_err());
    let mut h = 1e-6;
    while h <= 1e-2 {
        for m in METRICS {
            let r = det_density(m, 1.0 - h).unwrap() / h.powf(3.5);
            assert!(r.is_finite() && r < 1e4, "{m} h={h}: {r}");
        }
        h *= 1.5;
    }
}

#[test]
fn grid_export() {
    let csv = density_grid_csv(9).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("t,f_hs,f_bures"));
    assert_eq!(lines.count(), 9);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn densities_defined_inside(t in 1e-9f64..1.0) {
        prop_assert!(hs_det_density(t).unwrap() >= 0.0);
        prop_assert!(bures_det_density(t).unwrap() >= 0.0);
    }

    #[test]
    fn cdf_is_monotone(a in 0.0f64..1.0, b in 0.0f64..1.0) {
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let mass = integrate_unit(|t| hs_det_density(t).unwrap(), lo, hi).unwrap();
        prop_assert!(mass >= -1e-12 && mass <= 1.0 + 1e-10);
    }
}
