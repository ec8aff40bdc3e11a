//! Running means with normal-approximation confidence intervals.

use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::rng::{chunks, RngStream};

/// Two-sided 95% normal quantile.
pub const Z95: f64 = 1.959963984540054;

/// Welford accumulator.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Accumulator {
    pub count: u64,
    mean: f64,
    m2: f64,
}

impl Accumulator {
    pub fn push(&mut self, x: f64) {
        self.count += 1;
        let d = x - self.mean;
        self.mean += d / self.count as f64;
        self.m2 += d * (x - self.mean);
    }

    pub fn merge(&mut self, other: &Self) {
        if other.count == 0 {
            return;
        }
        if self.count == 0 {
            *self = *other;
            return;
        }
        let n = (self.count + other.count) as f64;
        let d = other.mean - self.mean;
        self.mean += d * other.count as f64 / n;
        self.m2 += other.m2 + d * d * self.count as f64 * other.count as f64 / n;
        self.count += other.count;
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    pub fn variance(&self) -> f64 {
        if self.count < 2 {
            0.0
        } else {
            self.m2 / (self.count - 1) as f64
        }
    }

    pub fn stats(&self, seed: u64) -> SampleStats {
        let stderr = (self.variance() / self.count.max(1) as f64).sqrt();
        SampleStats {
            mean: self.mean,
            stderr,
            ci_lo: self.mean - Z95 * stderr,
            ci_hi: self.mean + Z95 * stderr,
            count: self.count,
            seed,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SampleStats {
    pub mean: f64,
    pub stderr: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
    pub count: u64,
    pub seed: u64,
}

impl SampleStats {
    /// `|mean - value|` in standard errors.
    pub fn z_score(&self, value: f64) -> f64 {
        if self.stderr == 0.0 {
            if self.mean == value {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            (self.mean - value).abs() / self.stderr
        }
    }

    pub fn within(&self, value: f64, sigmas: f64) -> bool {
        self.z_score(value) <= sigmas
    }

    pub fn ci_contains(&self, value: f64) -> bool {
        self.ci_lo <= value && value <= self.ci_hi
    }

    pub fn half_width(&self) -> f64 {
        0.5 * (self.ci_hi - self.ci_lo)
    }
}

/// Runs `draw` for `samples` iterations split over chunked streams and
/// accumulates every component of its output. Chunks are merged in stream
/// order, so results do not depend on the thread count.
pub fn accumulate<F>(seed: u64, samples: usize, width: usize, draw: F) -> Vec<Accumulator>
where
    F: Fn(&mut ChaCha8Rng, &mut [f64]) + Sync,
{
    let parts: Vec<Vec<Accumulator>> = chunks(samples)
        .into_par_iter()
        .map(|(stream, n)| {
            let mut rng = RngStream::new(seed, stream).rng();
            let mut acc = vec![Accumulator::default(); width];
            let mut buf = vec![0.0; width];
            for _ in 0..n {
                draw(&mut rng, &mut buf);
                for (a, x) in acc.iter_mut().zip(&buf) {
                    a.push(*x);
                }
            }
            acc
        })
        .collect();
    let mut total = vec![Accumulator::default(); width];
    for part in &parts {
        for (t, p) in total.iter_mut().zip(part) {
            t.merge(p);
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merge_matches_sequential() {
        let xs: Vec<f64> = (0..100).map(|i| ((i * 37) % 11) as f64 * 0.5).collect();
        let mut all = Accumulator::default();
        xs.iter().for_each(|x| all.push(*x));
        let mut a = Accumulator::default();
        let mut b = Accumulator::default();
        xs[..40].iter().for_each(|x| a.push(*x));
        xs[40..].iter().for_each(|x| b.push(*x));
        a.merge(&b);
        assert_eq!(a.count, 100);
        assert!((a.mean() - all.mean()).abs() < 1e-12);
        assert!((a.variance() - all.variance()).abs() < 1e-12);
    }
}
