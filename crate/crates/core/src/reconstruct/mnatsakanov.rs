//! Moment-recovery CDF `F_M(x) = sum_{k <= Mx} sum_{j=k}^M C(M,j) C(j,k) (-1)^{j-k} mu_j`.

use rayon::prelude::*;
use rug::{Integer, Rational};

use crate::error::{Error, Result};
use crate::exact::binomial;

use super::MomentSequence;

#[derive(Debug, Clone)]
pub struct MnatsakanovApprox {
    pub order: usize,
    /// Mass assigned to `[k/M, (k+1)/M)`, exact.
    pub masses: Vec<Rational>,
}

pub fn mnatsakanov(ms: &MomentSequence, m: usize) -> Result<MnatsakanovApprox> {
    if m == 0 || m > ms.order() {
        return Err(Error::InvalidArgument(format!(
            "recovery order {m} needs 1..={} moments",
            ms.order()
        )));
    }
    let (nums, den) = ms.common_denominator(m);
    let mm = m as u32;
    let masses = (0..=m)
        .into_par_iter()
        .map(|k| {
            // C(M,k) sum_i C(M-k,i) (-1)^i mu_{k+i}
            let r = m - k;
            let mut c = Integer::from(1);
            let mut s = Integer::new();
            for i in 0..=r {
                if i > 0 {
                    c *= (r - i + 1) as u64;
                    c /= i as u64;
                }
                let term = Integer::from(&c * &nums[k + i]);
                if i % 2 == 0 {
                    s += term;
                } else {
                    s -= term;
                }
            }
            Rational::from((s * binomial(mm, k as u32), den.clone()))
        })
        .collect();
    Ok(MnatsakanovApprox { order: m, masses })
}

impl MnatsakanovApprox {
    fn cell(&self, x: f64) -> usize {
        ((self.order as f64 * x).floor().max(0.0) as usize).min(self.order)
    }

    pub fn cdf(&self, x: f64) -> f64 {
        if x < 0.0 {
            return 0.0;
        }
        self.exact_cdf_upto(self.cell(x)).to_f64()
    }

    pub fn exact_cdf_upto(&self, k: usize) -> Rational {
        self.masses[..=k.min(self.order)].iter().sum()
    }

    /// `M (F(x + 1/M) - F(x))`.
    pub fn density(&self, x: f64) -> f64 {
        let k = self.cell(x);
        if k >= self.order {
            return 0.0;
        }
        (Rational::from(&self.masses[k + 1] * self.order as u32)).to_f64()
    }

    /// `1 - F(t)`.
    pub fn tail_probability(&self, t: &Rational) -> Rational {
        let k = Rational::from(t * self.order as u32)
            .floor()
            .numer()
            .to_usize()
            .unwrap_or(0);
        Rational::from(1) - self.exact_cdf_upto(k)
    }

    /// Total recovered mass; telescopes to `mu_0`.
    pub fn total_mass(&self) -> Rational {
        self.exact_cdf_upto(self.order)
    }
}
