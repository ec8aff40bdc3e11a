//! Closed-form densities of `t = 256 |rho|` for two-qubit states under the
//! Hilbert-Schmidt and Bures measures.

use std::f64::consts::PI;

use quadrature::double_exponential;
use rug::float::Constant;
use rug::{Float, Rational};
use serde::{Deserialize, Serialize};
use statrs::function::beta::beta;

use crate::error::{Error, Result};
use crate::exact::{rat, rising};

/// Absolute error target for numerical integrals.
pub const INTEGRATION_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    Hs,
    Bures,
}

impl std::str::FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "hs" | "hilbert-schmidt" => Ok(Self::Hs),
            "bures" => Ok(Self::Bures),
            other => Err(Error::InvalidArgument(format!("unknown metric {other:?}"))),
        }
    }
}

impl std::fmt::Display for Metric {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Hs => "hs",
            Self::Bures => "bures",
        })
    }
}

fn check_domain(t: f64) -> Result<()> {
    if t.is_nan() || t < 0.0 || t > 1.0 {
        return Err(Error::Domain {
            value: t.to_string(),
            domain: "[0, 1]".into(),
        });
    }
    Ok(())
}

/// Hilbert-Schmidt density; `f(0) = 63/4`.
pub fn hs_det_density(t: f64) -> Result<f64> {
    check_domain(t)?;
    if t == 0.0 {
        return Ok(63.0 / 4.0);
    }
    if t > UPPER {
        let t = Float::with_val(PREC, t);
        let r = t.clone().sqrt();
        let s = (Float::with_val(PREC, 1) - &r).sqrt();
        let v: Float = s.clone() * (Float::with_val(PREC, 2) - r.clone() * 9 - t.clone() * 8)
            + t.clone() * 15 * s.ln_1p()
            - t.clone() * 3.75 * t.ln();
        return Ok((v * 63u32 / 8u32).to_f64().max(0.0));
    }
    let r = t.sqrt();
    let s = (1.0 - r).max(0.0).sqrt();
    let v = s * (2.0 - 9.0 * r - 8.0 * t) + 15.0 * t * s.ln_1p() - 3.75 * t * t.ln();
    Ok((63.0 / 8.0 * v).max(0.0))
}

/// Above this point both closed forms cancel to `(1 - t)^{7/2}` and are
/// evaluated in extended precision.
const UPPER: f64 = 0.5;
const PREC: u32 = 256;

/// Bures density; diverges like `6 / sqrt(t)` at the origin.
pub fn bures_det_density(t: f64) -> Result<f64> {
    check_domain(t)?;
    if t == 0.0 {
        return Ok(f64::INFINITY);
    }
    if t > UPPER {
        let t = Float::with_val(PREC, t);
        let r = t.clone().sqrt();
        let pi = Float::with_val(PREC, Constant::Pi);
        let gap = (r.clone() - &t).max(&Float::new(PREC)).sqrt();
        let v: Float = pi.clone() * 3 * (r.clone() * 4 + 1)
            - (r.clone() * 2 + 13) * 4 * gap
            - (r.clone() * 12 + 3) * 2 * Float::with_val(PREC, r.clone() * 2 - 1).asin();
        return Ok((v / (pi * r)).to_f64().max(0.0));
    }
    let r = t.sqrt();
    let v = 3.0 * PI * (4.0 * r + 1.0)
        - 4.0 * (13.0 + 2.0 * r) * (r - t).max(0.0).sqrt()
        - 2.0 * (12.0 * r + 3.0) * (2.0 * r - 1.0).clamp(-1.0, 1.0).asin();
    Ok((v / (PI * r)).max(0.0))
}

pub fn det_density(metric: Metric, t: f64) -> Result<f64> {
    match metric {
        Metric::Hs => hs_det_density(t),
        Metric::Bures => bures_det_density(t),
    }
}

/// Exact `E[t^n]`.
pub fn exact_density_moment(metric: Metric, n: u32) -> Rational {
    match metric {
        Metric::Hs => {
            rising(&rat(4, 1), 2 * n) * rising(&rat(2, 1), 2 * n)
                / (rising(&rat(5, 1), 2 * n) * rising(&rat(11, 2), 2 * n))
        }
        Metric::Bures => {
            rising(&rat(3, 2), 2 * n) / (rising(&rat(4, 1), 2 * n) * Rational::from((n + 1) * (2 * n + 1)))
        }
    }
}

/// `int_a^b g` with the substitution `t = u^2`, which regularizes `t^{-1/2}`
/// behaviour at the origin.
pub fn integrate_unit<F: Fn(f64) -> f64>(g: F, a: f64, b: f64) -> Result<f64> {
    let out =
        double_exponential::integrate(|u| 2.0 * u * g(u * u), a.sqrt(), b.sqrt(), INTEGRATION_TOLERANCE);
    if !out.integral.is_finite() || out.error_estimate > 1e3 * INTEGRATION_TOLERANCE {
        return Err(Error::Integration(out.error_estimate));
    }
    Ok(out.integral)
}

/// Numerical `int_0^1 t^n f(t) dt`.
pub fn density_moment(metric: Metric, n: u32) -> Result<f64> {
    if n > 30 {
        return Err(Error::OutOfRange(format!("moment order {n} above 30")));
    }
    integrate_unit(
        |t| t.powi(n as i32) * det_density(metric, t).unwrap_or(0.0),
        0.0,
        1.0,
    )
}

/// Density of `X1 X2` for independent `X1 ~ f1`, `X2 ~ f2` on `[0, 1]`:
/// `f(x) = int_x^1 f1(s) f2(x/s) ds / s`.
pub fn product_density<F1, F2>(f1: F1, f2: F2, x: f64) -> Result<f64>
where
    F1: Fn(f64) -> f64,
    F2: Fn(f64) -> f64,
{
    check_domain(x)?;
    if x == 0.0 || x == 1.0 {
        return Err(Error::Domain {
            value: x.to_string(),
            domain: "(0, 1)".into(),
        });
    }
    let out = double_exponential::integrate(|s| f1(s) * f2(x / s) / s, x, 1.0, INTEGRATION_TOLERANCE);
    if !out.integral.is_finite() {
        return Err(Error::Integration(out.error_estimate));
    }
    Ok(out.integral)
}

/// Factor densities whose product is distributed as `t`.
pub fn lemma_factors(metric: Metric) -> (fn(f64) -> f64, fn(f64) -> f64) {
    fn hs1(s: f64) -> f64 {
        2.0 * s
    }
    fn hs2(s: f64) -> f64 {
        (1.0 - s.sqrt()).max(0.0).powf(2.5) / (2.0 * beta(2.0, 3.5))
    }
    fn bures1(s: f64) -> f64 {
        1.0 / s.sqrt() - 1.0
    }
    fn bures2(t: f64) -> f64 {
        8.0 / PI * t.powf(-0.25) * (1.0 - t.sqrt()).max(0.0).powf(1.5)
    }
    match metric {
        Metric::Hs => (hs1, hs2),
        Metric::Bures => (bures1, bures2),
    }
}

/// Point where the two densities cross: Bures dominates below, HS above.
pub fn locate_crossing(lo: f64, hi: f64) -> Result<f64> {
    let g = |t: f64| -> Result<f64> { Ok(hs_det_density(t)? - bures_det_density(t)?) };
    let (mut a, mut b) = (lo, hi);
    let (ga, gb) = (g(a)?, g(b)?);
    if ga.signum() == gb.signum() {
        return Err(Error::InvalidArgument(format!("no sign change on [{lo}, {hi}]")));
    }
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m == a || m == b {
            break;
        }
        if g(m)?.signum() == ga.signum() {
            a = m;
        } else {
            b = m;
        }
    }
    Ok(0.5 * (a + b))
}

/// CSV `t,f_hs,f_bures` on `points` equally spaced interior nodes.
pub fn density_grid_csv(points: usize) -> Result<String> {
    let mut out = String::from("t,f_hs,f_bures\n");
    for i in 1..=points {
        let t = i as f64 / (points + 1) as f64;
        out.push_str(&format!("{t},{},{}\n", hs_det_density(t)?, bures_det_density(t)?));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endpoints() {
        assert_eq!(hs_det_density(0.0).unwrap(), 63.0 / 4.0);
        assert!((hs_det_density(1e-14).unwrap() - 63.0 / 4.0).abs() < 1e-5);
        assert_eq!(hs_det_density(1.0).unwrap(), 0.0);
        for t in [1e-8, 1e-12, 1e-16] {
            let scaled = bures_det_density(t).unwrap() * t.sqrt();
            assert!((scaled - 6.0).abs() < 30.0 * t.powf(0.25), "{t}: {scaled}");
        }
        assert!(hs_det_density(1.5).is_err());
    }

    #[test]
    fn first_moments() {
        assert_eq!(exact_density_moment(Metric::Hs, 1), rat(16, 143));
        assert_eq!(exact_density_moment(Metric::Bures, 1), rat(1, 32));
        assert!((density_moment(Metric::Hs, 1).unwrap() - 16.0 / 143.0).abs() < 1e-10);
        assert!((density_moment(Metric::Bures, 0).unwrap() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn uniform_product() {
        let f = product_density(|_| 1.0, |_| 1.0, 0.3).unwrap();
        assert!((f + 0.3f64.ln()).abs() < 1e-10);
    }
}
