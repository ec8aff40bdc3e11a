//! Monte Carlo estimates of determinantal moments and separability.

use rand::Rng;
use rand_distr::{Distribution, Gamma};
use serde::Serialize;

use crate::error::{Error, Result};

use super::stats::{accumulate, SampleStats};
use super::{determinant, partial_transpose, sample_bures, sample_hs, Measure, Ring};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Ensemble {
    pub ring: Ring,
    pub measure: Measure,
    pub d: usize,
}

impl Ensemble {
    pub fn new(ring: Ring, measure: Measure, d: usize) -> Result<Self> {
        let ok = match measure {
            Measure::Hs => d == 4 || d == 6,
            Measure::Bures => d == 4 && ring != Ring::Quaternion,
        };
        if !ok {
            return Err(Error::InvalidArgument(format!(
                "no {measure} sampler for {ring} states of dimension {d}"
            )));
        }
        Ok(Self { ring, measure, d })
    }

    /// `(|rho|, |rho^PT|)` of one draw.
    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> (f64, f64) {
        let rho = match self.measure {
            Measure::Hs => sample_hs(self.ring, self.d, rng),
            Measure::Bures => sample_bures(self.ring, self.d, rng),
        }
        .expect("ensemble validated at construction");
        (determinant(&rho), determinant(&partial_transpose(&rho)))
    }
}

/// `<|rho|^k |rho^PT|^n>` for each `(n, k)` from one shared sample.
pub fn mc_moments(ensemble: &Ensemble, orders: &[(u32, u32)], samples: usize, seed: u64) -> Vec<SampleStats> {
    accumulate(seed, samples, orders.len(), |rng, out| {
        let (det, pt) = ensemble.draw(rng);
        for (o, &(n, k)) in out.iter_mut().zip(orders) {
            *o = pt.powi(n as i32) * det.powi(k as i32);
        }
    })
    .iter()
    .map(|a| a.stats(seed))
    .collect()
}

pub fn mc_moment(ensemble: &Ensemble, n: u32, k: u32, samples: usize, seed: u64) -> SampleStats {
    mc_moments(ensemble, &[(n, k)], samples, seed)[0]
}

/// Frequency of `|rho^PT| >= 0`.
pub fn mc_separability_probability(ensemble: &Ensemble, samples: usize, seed: u64) -> Result<SampleStats> {
    if ensemble.d != 4 {
        return Err(Error::InvalidArgument(
            "the determinant criterion decides separability only for d = 4".into(),
        ));
    }
    Ok(accumulate(seed, samples, 1, |rng, out| {
        let (_, pt) = ensemble.draw(rng);
        out[0] = if pt >= 0.0 { 1.0 } else { 0.0 };
    })[0]
        .stats(seed))
}

/// Separability frequency in the non-generic family: squared parameters
/// `(t1, .., t5) ~ Dirichlet(1, 1 + beta/2, 1, 1, beta/2)`, separable when
/// `t1 t4 >= t2 t5`.
pub fn nongeneric_separability_probability(beta: u32, samples: usize, seed: u64) -> Result<SampleStats> {
    if beta == 0 {
        return Err(Error::Domain {
            value: "0".into(),
            domain: "beta >= 1".into(),
        });
    }
    let hb = beta as f64 / 2.0;
    let shapes = [1.0, 1.0 + hb, 1.0, 1.0, hb];
    let gammas: Vec<Gamma<f64>> = shapes
        .iter()
        .map(|&a| Gamma::new(a, 1.0).expect("positive shape"))
        .collect();
    Ok(accumulate(seed, samples, 1, |rng, out| {
        let t: Vec<f64> = gammas.iter().map(|g| g.sample(rng)).collect();
        out[0] = if t[0] * t[3] >= t[1] * t[4] { 1.0 } else { 0.0 };
    })[0]
        .stats(seed))
}
