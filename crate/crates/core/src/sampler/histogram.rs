//! Joint histogram of `(|rho|, |rho^PT|)`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

use super::rng::{chunks, RngStream};
use super::{Ensemble, Measure, Ring};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Histogram2D {
    pub x_range: (f64, f64),
    pub y_range: (f64, f64),
    pub nx: usize,
    pub ny: usize,
    /// Row-major in `x`: `counts[ix * ny + iy]`.
    pub counts: Vec<u64>,
}

impl Histogram2D {
    pub fn new(x_range: (f64, f64), y_range: (f64, f64), nx: usize, ny: usize) -> Self {
        Self {
            x_range,
            y_range,
            nx,
            ny,
            counts: vec![0; nx * ny],
        }
    }

    fn bin(v: f64, (lo, hi): (f64, f64), n: usize) -> Option<usize> {
        let slack = 1e-12 * (hi - lo);
        if v < lo - slack || v > hi + slack {
            return None;
        }
        let i = ((v - lo) / (hi - lo) * n as f64).floor();
        Some((i.max(0.0) as usize).min(n - 1))
    }

    pub fn insert(&mut self, x: f64, y: f64) -> Result<()> {
        match (
            Self::bin(x, self.x_range, self.nx),
            Self::bin(y, self.y_range, self.ny),
        ) {
            (Some(i), Some(j)) => {
                self.counts[i * self.ny + j] += 1;
                Ok(())
            }
            _ => Err(Error::OutOfRange(format!(
                "sample ({x:e}, {y:e}) outside the histogram ranges"
            ))),
        }
    }

    pub fn merge(&mut self, other: &Self) {
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Counts summed over `y`.
    pub fn x_marginal(&self) -> Vec<u64> {
        self.counts.chunks(self.ny).map(|r| r.iter().sum()).collect()
    }

    pub fn to_csv(&self) -> String {
        let wx = (self.x_range.1 - self.x_range.0) / self.nx as f64;
        let wy = (self.y_range.1 - self.y_range.0) / self.ny as f64;
        let mut out = String::from("x_lo,x_hi,y_lo,y_hi,count\n");
        for i in 0..self.nx {
            for j in 0..self.ny {
                let x0 = self.x_range.0 + i as f64 * wx;
                let y0 = self.y_range.0 + j as f64 * wy;
                out.push_str(&format!(
                    "{x0:e},{:e},{y0:e},{:e},{}\n",
                    x0 + wx,
                    y0 + wy,
                    self.counts[i * self.ny + j]
                ));
            }
        }
        out
    }
}

/// Histogram of `|rho|` on `[0, 1/256]` against `|rho^PT|` on `[-1/16, 1/256]`
/// for Hilbert-Schmidt two-qubit states.
pub fn joint_histogram(ring: Ring, samples: usize, bins: usize, seed: u64) -> Result<Histogram2D> {
    if bins < 10 {
        return Err(Error::InvalidArgument("need at least 10 bins".into()));
    }
    let ensemble = Ensemble::new(ring, Measure::Hs, 4)?;
    let empty = Histogram2D::new((0.0, 1.0 / 256.0), (-1.0 / 16.0, 1.0 / 256.0), bins, bins);
    let parts: Vec<Result<Histogram2D>> = chunks(samples)
        .into_par_iter()
        .map(|(stream, n)| {
            let mut rng = RngStream::new(seed, stream).rng();
            let mut h = empty.clone();
            for _ in 0..n {
                let (det, pt) = ensemble.draw(&mut rng);
                h.insert(det, pt)?;
            }
            Ok(h)
        })
        .collect();
    let mut total = empty;
    for p in parts {
        total.merge(&p?);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_everything() {
        let h = joint_histogram(Ring::Real, 5000, 20, 1).unwrap();
        assert_eq!(h.total(), 5000);
        assert!(h.to_csv().starts_with("x_lo,x_hi,y_lo,y_hi,count\n"));
        let mut h = Histogram2D::new((0.0, 1.0), (0.0, 1.0), 10, 10);
        assert!(h.insert(1.5, 0.5).is_err());
        h.insert(1.0, 0.0).unwrap();
        assert_eq!(h.counts[90], 1);
    }
}
