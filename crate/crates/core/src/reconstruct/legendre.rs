//! Shifted-Legendre projection of a density on `[0, 1]` from its moments.

use rayon::prelude::*;
use rug::{Float, Integer, Rational};
use serde::Serialize;

use crate::bigreal::{to_decimal_string, Precision};
use crate::error::{Error, Result};
use crate::exact::{format_rational, RationalPolynomial};
use crate::moments::Variable;

use super::{build_moment_sequence, MomentSequence};

/// Highest index checked by the float cancellation diagnostic.
pub const CANCELLATION_CHECK_MAX: usize = 50;

/// Row `j` of monomial coefficients of the shifted Legendre polynomial,
/// `a_{j,i} = (-1)^{j+i} C(j,i) C(j+i,i)`.
pub fn shifted_legendre_row(j: usize) -> Vec<Integer> {
    let mut row = Vec::with_capacity(j + 1);
    let mut a = Integer::from(if j % 2 == 0 { 1 } else { -1 });
    row.push(a.clone());
    for i in 0..j {
        a *= -((j - i) as i64);
        a *= (j + i + 1) as u64;
        a /= ((i + 1) * (i + 1)) as u64;
        row.push(a.clone());
    }
    row
}

pub fn shifted_legendre(j: usize) -> RationalPolynomial {
    RationalPolynomial::new(shifted_legendre_row(j).into_iter().map(Rational::from).collect())
}

/// Exact `lambda_j = int P_j(x) dmu(x)` for `j = 0..=n`.
pub fn exact_lambdas(ms: &MomentSequence, n: usize) -> Vec<Rational> {
    let (nums, den) = ms.common_denominator(n);
    (0..=n)
        .into_par_iter()
        .map(|j| {
            let row = shifted_legendre_row(j);
            let mut s = Integer::new();
            for (a, c) in row.iter().zip(&nums) {
                s += Integer::from(a * c);
            }
            Rational::from((s, den.clone()))
        })
        .collect()
}

/// `lambda_j` by floating-point summation at raised precision, compared
/// against the exact value.
fn check_cancellation(ms: &MomentSequence, exact: &[Rational], precision: Precision) -> Result<()> {
    let digits = precision.decimal_digits();
    let top = exact.len().min(CANCELLATION_CHECK_MAX + 1);
    let failure = (1..top)
        .into_par_iter()
        .filter_map(|j| {
            let p = precision.with_guard((0.8 * j as f64).ceil() as u32 + 16);
            let bits = p.bits();
            let row = shifted_legendre_row(j);
            let mut s = Float::with_val(bits, 0);
            for (a, m) in row.iter().zip(&ms.moments) {
                s += Float::with_val(bits, a) * Float::with_val(bits, m);
            }
            let exact_f = Float::with_val(bits, &exact[j]);
            let diff = Float::with_val(bits, &s - &exact_f).abs();
            let scale = Float::with_val(bits, exact_f.abs_ref()).max(&Float::with_val(bits, 1));
            let tol = p.ten_pow_neg(digits.saturating_sub(8)) * scale;
            (diff > tol).then(|| (j, to_decimal_string(&diff, 6)))
        })
        .min_by_key(|(j, _)| *j);
    match failure {
        Some((index, difference)) => Err(Error::Cancellation { index, difference }),
        None => Ok(()),
    }
}

/// Projection `f_N = sum_j (2j+1) lambda_j P_j` onto polynomials of degree `N`.
#[derive(Debug, Clone)]
pub struct DensityApprox {
    pub order: usize,
    pub precision: Precision,
    pub exact: Vec<Rational>,
    pub lambdas: Vec<Float>,
}

impl DensityApprox {
    fn bits(&self) -> u32 {
        self.precision.bits()
    }

    pub fn eval(&self, x: &Float) -> Float {
        let bits = self.bits();
        let y = Float::with_val(bits, x * 2u32) - 1u32;
        let mut p_prev = Float::with_val(bits, 1);
        let mut p = y.clone();
        let mut acc = self.lambdas[0].clone();
        if self.order >= 1 {
            acc += Float::with_val(bits, &self.lambdas[1] * &p) * 3u32;
        }
        for j in 1..self.order {
            let next = (Float::with_val(bits, &y * &p) * (2 * j + 1) as u32
                - Float::with_val(bits, &p_prev * j as u32))
                / (j + 1) as u32;
            p_prev = std::mem::replace(&mut p, next);
            acc += Float::with_val(bits, &self.lambdas[j + 1] * &p) * (2 * j + 3) as u32;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.eval(&Float::with_val(self.bits(), x)).to_f64()
    }

    /// `int_t^1 f_N` for every order `0..=N`; entry `N` is the full projection.
    pub fn tail_probabilities(&self, t: &Rational) -> Vec<Float> {
        let bits = self.bits();
        let y = Float::with_val(bits, t) * 2u32 - 1u32;
        // P_{j-1}, P_j, P_{j+1} at t
        let mut p = vec![Float::with_val(bits, 1), y.clone()];
        for j in 1..=self.order {
            let next = (Float::with_val(bits, &y * &p[j]) * (2 * j + 1) as u32
                - Float::with_val(bits, &p[j - 1] * j as u32))
                / (j + 1) as u32;
            p.push(next);
        }
        let mut out = Vec::with_capacity(self.order + 1);
        let mut acc = Float::with_val(bits, 1u32) - Float::with_val(bits, t);
        acc *= &self.lambdas[0];
        out.push(acc.clone());
        for j in 1..=self.order {
            let d = Float::with_val(bits, &p[j - 1] - &p[j + 1]) / 2u32;
            acc += d * &self.lambdas[j];
            out.push(acc.clone());
        }
        out
    }

    pub fn tail_probability(&self, t: &Rational) -> Float {
        self.tail_probabilities(t).pop().expect("order 0 tail exists")
    }

    /// The same tail in exact arithmetic.
    pub fn exact_tail(&self, t: &Rational) -> Rational {
        let y = Rational::from(t * 2u32) - 1u32;
        let mut p = vec![Rational::from(1), y.clone()];
        for j in 1..=self.order {
            let next = (Rational::from(&y * &p[j]) * (2 * j + 1) as u32
                - Rational::from(&p[j - 1] * j as u32))
                / (j + 1) as u32;
            p.push(next);
        }
        let mut acc = (Rational::from(1) - t) * &self.exact[0];
        for j in 1..=self.order {
            acc += Rational::from(&p[j - 1] - &p[j + 1]) / 2u32 * &self.exact[j];
        }
        acc
    }

    /// Monomial form of `f_N`.
    pub fn polynomial(&self) -> RationalPolynomial {
        let mut c = vec![Rational::new(); self.order + 1];
        for (j, l) in self.exact.iter().enumerate() {
            let w = Rational::from(l * (2 * j + 1) as u32);
            for (i, a) in shifted_legendre_row(j).iter().enumerate() {
                c[i] += Rational::from(&w * a);
            }
        }
        RationalPolynomial::new(c)
    }
}

pub fn legendre_coefficients(ms: &MomentSequence, n: usize, precision: Precision) -> Result<DensityApprox> {
    if n > ms.order() {
        return Err(Error::InvalidArgument(format!(
            "order {n} exceeds the {} available moments",
            ms.order()
        )));
    }
    let exact = exact_lambdas(ms, n);
    check_cancellation(ms, &exact, precision)?;
    let bits = precision.bits();
    let lambdas = exact.iter().map(|l| Float::with_val(bits, l)).collect();
    Ok(DensityApprox {
        order: n,
        precision,
        exact,
        lambdas,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct Estimate {
    pub alpha: String,
    pub variable: Variable,
    pub n_moments: usize,
    pub precision_digits: u32,
    pub method: String,
    pub estimate: String,
    pub threshold: String,
}

impl Estimate {
    pub fn value(&self) -> f64 {
        self.estimate.parse().unwrap_or(f64::NAN)
    }
}

fn threshold_of(ms: &MomentSequence) -> Result<Rational> {
    ms.threshold()
        .cloned()
        .ok_or_else(|| Error::InvalidArgument("variable has no separability threshold".into()))
}

/// Legendre estimates for each order in `orders`, sharing one moment sequence.
pub fn separability_estimates(
    alpha: &Rational,
    variable: Variable,
    orders: &[usize],
    precision: Precision,
) -> Result<Vec<Estimate>> {
    let n = *orders
        .iter()
        .max()
        .ok_or_else(|| Error::InvalidArgument("no orders requested".into()))?;
    let ms = build_moment_sequence(alpha, variable, n, precision)?;
    let t = threshold_of(&ms)?;
    let da = legendre_coefficients(&ms, n, precision)?;
    let tails = da.tail_probabilities(&t);
    let digits = precision.decimal_digits();
    Ok(orders
        .iter()
        .map(|&m| Estimate {
            alpha: format_rational(alpha),
            variable,
            n_moments: m,
            precision_digits: digits,
            method: "legendre".into(),
            estimate: to_decimal_string(&tails[m], digits as usize),
            threshold: format_rational(&t),
        })
        .collect())
}

pub fn separability_estimate(
    alpha: &Rational,
    variable: Variable,
    n: usize,
    precision: Precision,
) -> Result<Estimate> {
    Ok(separability_estimates(alpha, variable, &[n], precision)?.remove(0))
}
