//! Cholesky parametrization `rho = C^T C` of trace-one states and the
//! Dirichlet structure of its squared entries.

use nalgebra::{DMatrix, Matrix4};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, Gamma};
use rug::Rational;

use crate::error::{Error, Result};
use crate::exact::{rat, rising};

use super::linalg::{quaternion_block, CMatrix};
use super::stats::{SampleStats, Z95};

/// Entry order of the upper triangle, row-major.
pub const UPPER: [(usize, usize); 10] = [
    (0, 0),
    (0, 1),
    (0, 2),
    (0, 3),
    (1, 1),
    (1, 2),
    (1, 3),
    (2, 2),
    (2, 3),
    (3, 3),
];

fn upper_matrix(c: &[f64; 10]) -> Matrix4<f64> {
    let mut m = Matrix4::zeros();
    for (v, &(i, j)) in c.iter().zip(UPPER.iter()) {
        m[(i, j)] = *v;
    }
    m
}

/// `rho = C^T C` without normalization.
pub fn cholesky_rho(c: &[f64; 10]) -> Matrix4<f64> {
    let m = upper_matrix(c);
    m.transpose() * m
}

/// `2^N prod_i c_ii^{N+1-i}` with `N = 4`.
pub fn cholesky_jacobian(c: &[f64; 10]) -> f64 {
    let m = upper_matrix(c);
    16.0 * (0..4).map(|i| m[(i, i)].powi(4 - i as i32)).product::<f64>()
}

/// `rho` and the Jacobian of the map from `c` to the upper triangle of `rho`.
pub fn cholesky_map(c: &[f64; 10]) -> Result<(Matrix4<f64>, f64)> {
    let norm: f64 = c.iter().map(|x| x * x).sum();
    if (norm - 1.0).abs() > 1e-10 {
        return Err(Error::InvalidArgument(format!(
            "point is not on the unit sphere (|c|^2 = {norm})"
        )));
    }
    if UPPER.iter().zip(c).any(|(&(i, j), v)| i == j && *v < 0.0) {
        return Err(Error::InvalidArgument(
            "diagonal entries must be nonnegative".into(),
        ));
    }
    Ok((cholesky_rho(c), cholesky_jacobian(c)))
}

/// Central-difference Jacobian determinant of `c -> upper(C^T C)`.
pub fn finite_difference_jacobian(c: &[f64; 10], h: f64) -> f64 {
    let upper = |c: &[f64; 10]| -> [f64; 10] {
        let r = cholesky_rho(c);
        let mut out = [0.0; 10];
        for (o, &(i, j)) in out.iter_mut().zip(UPPER.iter()) {
            *o = r[(i, j)];
        }
        out
    };
    let mut jac = DMatrix::<f64>::zeros(10, 10);
    for col in 0..10 {
        let mut plus = *c;
        let mut minus = *c;
        plus[col] += h;
        minus[col] -= h;
        let (fp, fm) = (upper(&plus), upper(&minus));
        for row in 0..10 {
            jac[(row, col)] = (fp[row] - fm[row]) / (2.0 * h);
        }
    }
    jac.determinant().abs()
}

/// `E[|rho|^k prod c_ij^{n_ij}]` for real states under the flat measure, with
/// exponents listed in [`UPPER`] order.
pub fn dirichlet_monomial_expectation(exponents: &[u32; 10], k: u32) -> Result<Rational> {
    let diag_params = [rat(5, 2), rat(2, 1), rat(3, 2), rat(1, 1)];
    let mut value = Rational::from(1);
    let mut total = 0u32;
    let mut d = 0;
    for (&e, &(i, j)) in exponents.iter().zip(UPPER.iter()) {
        total += e;
        if i == j {
            if e % 2 == 1 {
                return Err(Error::InvalidArgument(format!(
                    "odd exponent {e} on diagonal entry c{}{}",
                    i + 1,
                    j + 1
                )));
            }
            value *= rising(&diag_params[d], k + e / 2);
            d += 1;
        } else {
            if e % 2 == 1 {
                return Ok(Rational::new());
            }
            value *= rising(&rat(1, 2), e / 2);
        }
    }
    Ok(value / rising(&rat(10, 1), 4 * k + total / 2))
}

fn monomial(c: &[f64; 10], exponents: &[u32; 10], k: u32) -> f64 {
    let m = upper_matrix(c);
    let det: f64 = (0..4).map(|i| m[(i, i)] * m[(i, i)]).product();
    det.powi(k as i32)
        * c.iter()
            .zip(exponents)
            .map(|(x, e)| x.powi(*e as i32))
            .product::<f64>()
}

/// Uniform point on the sphere with nonnegative diagonal coordinates.
pub fn sphere_octant_point<R: Rng + ?Sized>(rng: &mut R) -> [f64; 10] {
    let mut c = [0.0; 10];
    for v in c.iter_mut() {
        *v = rng.sample(rand_distr::StandardNormal);
    }
    let norm = c.iter().map(|x| x * x).sum::<f64>().sqrt();
    for (v, &(i, j)) in c.iter_mut().zip(UPPER.iter()) {
        *v /= norm;
        if i == j {
            *v = v.abs();
        }
    }
    c
}

/// Jacobian-weighted Monte Carlo estimate of
/// [`dirichlet_monomial_expectation`] (ratio estimator).
pub fn dirichlet_monomial_mc(exponents: &[u32; 10], k: u32, samples: usize, seed: u64) -> SampleStats {
    let acc = super::stats::accumulate(seed, samples, 2, |rng, out| {
        let c = sphere_octant_point(rng);
        let j = cholesky_jacobian(&c);
        out[0] = j * monomial(&c, exponents, k);
        out[1] = j;
    });
    // delta-method standard error of mean(g J) / mean(J)
    let ratio = acc[0].mean() / acc[1].mean();
    let resid = super::stats::accumulate(seed, samples, 1, |rng, out| {
        let c = sphere_octant_point(rng);
        let j = cholesky_jacobian(&c);
        out[0] = j * (monomial(&c, exponents, k) - ratio);
    });
    let stderr = (resid[0].variance() / samples as f64).sqrt() / acc[1].mean();
    SampleStats {
        mean: ratio,
        stderr,
        ci_lo: ratio - Z95 * stderr,
        ci_hi: ratio + Z95 * stderr,
        count: samples as u64,
        seed,
    }
}

fn dirichlet<R: Rng + ?Sized>(params: &[f64], rng: &mut R) -> Vec<f64> {
    let mut g: Vec<f64> = params
        .iter()
        .map(|&a| Gamma::new(a, 1.0).expect("positive shape").sample(rng))
        .collect();
    let s: f64 = g.iter().sum();
    for v in g.iter_mut() {
        *v /= s;
    }
    g
}

/// Flat-measure quaternionic `N x N` state as its `2N x 2N` complex adjoint
/// representation, from `C^dagger C` with Dirichlet-distributed squared entries.
pub fn quaternion_cholesky_sample<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMatrix {
    let mut params = Vec::new();
    for i in 0..n {
        params.push(2.0 * (n - 1 - i) as f64 + 1.0);
        params.extend(std::iter::repeat_n(0.5, 4 * (n - 1 - i)));
    }
    let w = dirichlet(&params, rng);
    let mut c = CMatrix::zeros(2 * n, 2 * n);
    let mut idx = 0;
    for i in 0..n {
        let d = w[idx].sqrt();
        idx += 1;
        c[(2 * i, 2 * i)] = Complex64::new(d, 0.0);
        c[(2 * i + 1, 2 * i + 1)] = Complex64::new(d, 0.0);
        for j in (i + 1)..n {
            let mut q = [0.0; 4];
            for v in q.iter_mut() {
                let s = if rng.random::<bool>() { 1.0 } else { -1.0 };
                *v = s * w[idx].sqrt();
                idx += 1;
            }
            let b = quaternion_block(Complex64::new(q[0], q[1]), Complex64::new(q[2], q[3]));
            for (r, row) in b.iter().enumerate() {
                for (s, v) in row.iter().enumerate() {
                    c[(2 * i + r, 2 * j + s)] = *v;
                }
            }
        }
    }
    c.adjoint() * c
}
