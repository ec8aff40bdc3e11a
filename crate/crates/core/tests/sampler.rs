mod common;

use common::q;
use dml_core::densities::{hs_det_density, integrate_unit};
use dml_core::moments::{bivariate_moment, f0_det_moment, pt_moment};
use dml_core::sampler::cholesky::sphere_octant_point;
use dml_core::sampler::linalg::CMatrix;
use dml_core::sampler::rng::chunks;
use dml_core::sampler::stats::accumulate;
use dml_core::sampler::{
    cholesky_jacobian, cholesky_map, determinant, dirichlet_monomial_expectation, dirichlet_monomial_mc,
    finite_difference_jacobian, fixture_matrix, joint_histogram, mc_moments, mc_separability_probability,
    partial_transpose, sample_bures, sample_hs, Accumulator, DensityMatrixSample, Ensemble, Measure, Ring,
    RngStream,
};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn maximally_mixed() -> DensityMatrixSample {
    let m = CMatrix::identity(4, 4) * Complex64::new(0.25, 0.0);
    DensityMatrixSample::new(Ring::Real, (2, 2), m).unwrap()
}

#[test]
fn every_sample_is_a_state() {
    let mut r = rng(1);
    for ring in [Ring::Real, Ring::Complex, Ring::Quaternion] {
        for d in [4, 6] {
            for _ in 0..200 {
                let rho = sample_hs(ring, d, &mut r).unwrap();
                assert!(rho.is_state(1e-12), "{ring} hs d={d}");
                assert_eq!(rho.dim(), d);
            }
        }
    }
    for ring in [Ring::Real, Ring::Complex] {
        for _ in 0..200 {
            let rho = sample_bures(ring, 4, &mut r).unwrap();
            assert!(rho.is_state(1e-12), "{ring} bures");
        }
    }
    assert!(sample_hs(Ring::Real, 5, &mut r).is_err());
    assert!(sample_bures(Ring::Complex, 6, &mut r).is_err());
    assert!(sample_bures(Ring::Quaternion, 4, &mut r).is_err());
}

#[test]
fn partial_transpose_properties() {
    let mut r = rng(2);
    for ring in [Ring::Real, Ring::Complex, Ring::Quaternion] {
        for d in [4, 6] {
            let rho = sample_hs(ring, d, &mut r).unwrap();
            let pt = partial_transpose(&rho);
            assert_eq!(partial_transpose(&pt), rho);
            assert!((pt.trace() - 1.0).abs() < 1e-12);
            assert!(pt.hermiticity_error() < 1e-15);
        }
    }
    let mixed = maximally_mixed();
    assert_eq!(partial_transpose(&mixed), mixed);
    assert!((determinant(&mixed) - 1.0 / 256.0).abs() < 1e-18);
}

#[test]
fn extremal_state() {
    let rho = fixture_matrix();
    let s3 = 3f64.sqrt();
    let det = determinant(&rho);
    let pt = determinant(&partial_transpose(&rho));
    assert!((det - (2.0 * s3 - 3.0) / 576.0).abs() < 1e-15);
    assert!((det - 0.000805732).abs() < 1e-9);
    assert!((pt - (-3.0 - 2.0 * s3) / 576.0).abs() < 1e-15);
    assert!((pt + 0.0112224).abs() < 1e-7);
    assert!((det * pt + 1.0 / 110592.0).abs() < 1e-17);
    assert!(rho.is_state(1e-12));
}

#[test]
fn real_products_respect_lower_bound() {
    let e = Ensemble::new(Ring::Real, Measure::Hs, 4).unwrap();
    let mut r = rng(3);
    for _ in 0..100_000 {
        let (det, pt) = e.draw(&mut r);
        assert!(det * pt >= -1.0 / 110592.0 - 1e-15);
        assert!((0.0..=1.0 / 256.0 + 1e-15).contains(&det));
        assert!((-1.0 / 16.0 - 1e-15..=1.0 / 256.0 + 1e-15).contains(&pt));
    }
}

#[test]
fn jacobian_lemma() {
    let mut c = [0.0; 10];
    for i in [0, 4, 7, 9] {
        c[i] = 0.5;
    }
    let (rho, jac) = cholesky_map(&c).unwrap();
    assert!((jac - 1.0 / 64.0).abs() < 1e-15);
    assert!(((finite_difference_jacobian(&c, 1e-5) - jac) / jac).abs() < 1e-6);
    assert!((rho.trace() - 1.0).abs() < 1e-15);

    let mut r = rng(4);
    for _ in 0..100 {
        let c = sphere_octant_point(&mut r);
        let (rho, jac) = cholesky_map(&c).unwrap();
        let fd = finite_difference_jacobian(&c, 1e-5);
        assert!(((fd - jac) / jac).abs() < 1e-6, "{fd} vs {jac}");
        let diag: f64 = [0, 4, 7, 9].iter().map(|&i| c[i] * c[i]).product();
        assert!((rho.determinant() - diag).abs() < 1e-15);
        assert!((rho.trace() - 1.0).abs() < 1e-12);
    }
    let mut off = [0.1; 10];
    assert!(cholesky_map(&off).is_err());
    off = c;
    off[0] = -0.5;
    assert!(cholesky_map(&off).is_err());
}

#[test]
fn dirichlet_monomials() {
    let zero = [0u32; 10];
    assert_eq!(dirichlet_monomial_expectation(&zero, 0).unwrap(), 1);
    for k in 0..8 {
        assert_eq!(
            dirichlet_monomial_expectation(&zero, k).unwrap(),
            f0_det_moment(&q(1, 2), k),
            "k={k}"
        );
    }
    let mut e = zero;
    e[1] = 1;
    assert_eq!(dirichlet_monomial_expectation(&e, 2).unwrap(), 0);
    let mut e = zero;
    e[0] = 1;
    assert!(dirichlet_monomial_expectation(&e, 0).is_err());

    for (exps, k) in [
        ([0, 2, 0, 0, 0, 0, 0, 0, 0, 0], 0),
        ([2, 0, 0, 2, 2, 0, 0, 0, 0, 0], 1),
    ] {
        let exact = dirichlet_monomial_expectation(&exps, k).unwrap().to_f64();
        let mc = dirichlet_monomial_mc(&exps, k, 400_000, 9);
        assert!(mc.within(exact, 4.0), "{exps:?}: {} vs {exact}", mc.mean);
    }
}

#[test]
fn small_moment_checks() {
    let orders = [(0, 1), (1, 1), (2, 0)];
    let real = Ensemble::new(Ring::Real, Measure::Hs, 4).unwrap();
    let s = mc_moments(&real, &orders, 1_000_000, 10);
    assert!(s[0].within(1.0 / 2288.0, 4.0), "{:?}", s[0]);
    assert!(s[1].within(0.0, 4.0), "{:?}", s[1]);
    assert!(s[2].within(0.0000108462, 4.0), "{:?}", s[2]);
    assert!((pt_moment(&q(1, 2), 2).to_f64() - 0.0000108462).abs() < 1e-10);

    let complex = Ensemble::new(Ring::Complex, Measure::Hs, 4).unwrap();
    let s = mc_moments(&complex, &[(1, 1)], 1_000_000, 11);
    assert!(s[0].within(bivariate_moment(&q(1, 1), 1, 1).to_f64(), 4.0));
}

#[test]
fn quaternionic_determinant_moment() {
    let quat = Ensemble::new(Ring::Quaternion, Measure::Hs, 4).unwrap();
    let s = mc_moments(&quat, &[(0, 1), (0, 2)], 400_000, 12);
    assert!(
        s[0].within(f0_det_moment(&q(2, 1), 1).to_f64(), 4.0),
        "{:?}",
        s[0]
    );
    assert!(
        s[1].within(f0_det_moment(&q(2, 1), 2).to_f64(), 4.0),
        "{:?}",
        s[1]
    );
}

#[test]
fn real_bures_determinant_moment() {
    let e = Ensemble::new(Ring::Real, Measure::Bures, 4).unwrap();
    let s = mc_moments(&e, &[(0, 1)], 400_000, 13);
    // first moment of 256 |rho| is 1/32
    assert!(s[0].within(1.0 / 32.0 / 256.0, 4.0), "{:?}", s[0]);
}

#[test]
fn separability_frequencies() {
    let real = Ensemble::new(Ring::Real, Measure::Hs, 4).unwrap();
    let s = mc_separability_probability(&real, 1_000_000, 14).unwrap();
    assert!((s.mean - 0.4531).abs() <= 0.005 + s.half_width(), "{s:?}");
    let complex = Ensemble::new(Ring::Complex, Measure::Hs, 4).unwrap();
    let s = mc_separability_probability(&complex, 1_000_000, 15).unwrap();
    assert!(s.ci_contains(8.0 / 33.0), "{s:?}");
    let six = Ensemble::new(Ring::Real, Measure::Hs, 6).unwrap();
    assert!(mc_separability_probability(&six, 10, 0).is_err());
}

#[test]
fn histogram_marginal_matches_density() {
    let samples = 10_000_000;
    let bins = 100;
    let h = joint_histogram(Ring::Real, samples, bins, 16).unwrap();
    assert_eq!(h.total(), samples as u64);
    // t = 256 |rho|; compare bin averages of the density
    let mut worst: f64 = 0.0;
    for (i, count) in h.x_marginal().iter().enumerate() {
        let (a, b) = (i as f64 / bins as f64, (i + 1) as f64 / bins as f64);
        let avg = integrate_unit(|t| hs_det_density(t).unwrap(), a, b).unwrap() * bins as f64;
        let empirical = *count as f64 / samples as f64 * bins as f64;
        worst = worst.max((avg - empirical).abs());
    }
    assert!(worst < 0.05, "{worst}");
    let csv = h.to_csv();
    assert!(csv.starts_with("x_lo,x_hi,y_lo,y_hi,count\n"));
    assert_eq!(csv.lines().count(), bins * bins + 1);
    assert!(joint_histogram(Ring::Real, 10, 9, 0).is_err());
}

#[test]
fn streams_are_reproducible() {
    let a: Vec<u64> = {
        let mut r = RngStream::new(7, 3).rng();
        (0..5).map(|_| r.random()).collect()
    };
    let b: Vec<u64> = {
        let mut r = RngStream::new(7, 3).rng();
        (0..5).map(|_| r.random()).collect()
    };
    let c: Vec<u64> = {
        let mut r = RngStream::new(7, 4).rng();
        (0..5).map(|_| r.random()).collect()
    };
    assert_eq!(a, b);
    assert_ne!(a, c);

    let e = Ensemble::new(Ring::Complex, Measure::Bures, 4).unwrap();
    let x = mc_moments(&e, &[(1, 0), (0, 1)], 40_000, 21);
    let y = mc_moments(&e, &[(1, 0), (0, 1)], 40_000, 21);
    let z = mc_moments(&e, &[(1, 0), (0, 1)], 40_000, 22);
    assert_eq!(x, y);
    assert_ne!(x, z);
    assert_eq!(chunks(40_000).iter().map(|c| c.1).sum::<usize>(), 40_000);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn merged_accumulators_match_sequential(xs in prop::collection::vec(-1e3f64..1e3, 2..200), cut in 0usize..200) {
        let cut = cut.min(xs.len());
        let mut whole = Accumulator::default();
        xs.iter().for_each(|&x| whole.push(x));
        let mut left = Accumulator::default();
        let mut right = Accumulator::default();
        xs[..cut].iter().for_each(|&x| left.push(x));
        xs[cut..].iter().for_each(|&x| right.push(x));
        left.merge(&right);
        prop_assert!((left.mean() - whole.mean()).abs() < 1e-9);
        prop_assert!((left.variance() - whole.variance()).abs() < 1e-6 * (1.0 + whole.variance()));
        let s = whole.stats(0);
        prop_assert!((s.stderr - (whole.variance() / xs.len() as f64).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn jacobian_matches_finite_differences(seed in any::<u64>()) {
        let c = sphere_octant_point(&mut rng(seed));
        let jac = cholesky_jacobian(&c);
        prop_assume!(jac > 1e-10);
        let fd = finite_difference_jacobian(&c, 1e-5);
        prop_assert!(((fd - jac) / jac).abs() < 1e-6);
    }

    #[test]
    fn odd_off_diagonal_exponents_vanish(slot in prop::sample::select(vec![1usize, 2, 3, 5, 6, 8]), e in 0u32..4, k in 0u32..4) {
        let mut exps = [0u32; 10];
        exps[slot] = 2 * e + 1;
        prop_assert_eq!(dirichlet_monomial_expectation(&exps, k).unwrap(), 0);
    }

    #[test]
    fn sampled_states_are_valid(seed in any::<u64>()) {
        let mut r = rng(seed);
        let rho = sample_hs(Ring::Complex, 4, &mut r).unwrap();
        prop_assert!(rho.is_state(1e-12));
        let pt = partial_transpose(&rho);
        prop_assert_eq!(partial_transpose(&pt), rho.clone());
        let e = accumulate(seed, 100, 1, |g, out| out[0] = g.random::<f64>());
        prop_assert_eq!(e[0].count, 100);
    }
}
