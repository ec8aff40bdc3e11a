//! Gaussian quadrature rules from moments.

use rug::{Float, Rational};
use serde::{Deserialize, Serialize};

use crate::bigreal::{to_decimal_string, Precision};
use crate::error::{Error, Result};
use crate::exact::{binomial, format_rational, RationalPolynomial};

use super::legendre::exact_lambdas;
use super::MomentSequence;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuadratureMethod {
    /// Exact rational Hankel factorization.
    #[default]
    Hankel,
    /// Modified Chebyshev algorithm on shifted-Legendre modified moments.
    ModifiedChebyshev,
}

impl std::str::FromStr for QuadratureMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hankel" => Ok(Self::Hankel),
            "modified-chebyshev" | "sack-donovan" => Ok(Self::ModifiedChebyshev),
            other => Err(Error::InvalidArgument(format!(
                "unknown quadrature method {other:?}"
            ))),
        }
    }
}

/// Monic three-term recurrence `P_{k+1} = (x - a_k) P_k - b_k P_{k-1}` in exact arithmetic.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactRecurrence {
    pub alpha: Vec<Rational>,
    /// `beta[0] = mu_0`.
    pub beta: Vec<Rational>,
    /// `h[k] = int P_k^2 dmu`.
    pub h: Vec<Rational>,
    pub polys: Vec<RationalPolynomial>,
}

/// Chebyshev algorithm in exact arithmetic: the mixed moments `sigma_k(l)` are
/// the entries of the `L D` factor of the Hankel matrix.
///
/// Computes `h_k` for every `k < n` with `mu_{2k}` available and `alpha_k` for
/// every `k < n` with `mu_{2k+1}` available. Stops early at the first `h_k <= 0`.
pub fn exact_recurrence(moments: &[Rational], n: usize, with_polys: bool) -> Result<ExactRecurrence> {
    let len = moments.len();
    if len == 0 {
        return Err(Error::InvalidArgument("empty moment sequence".into()));
    }
    let mut out = ExactRecurrence {
        alpha: Vec::new(),
        beta: Vec::new(),
        h: Vec::new(),
        polys: Vec::new(),
    };
    let mut prev: Vec<Rational> = vec![Rational::new(); len];
    let mut cur: Vec<Rational> = moments.to_vec();
    let mut p_prev = RationalPolynomial::zero();
    let mut p_cur = RationalPolynomial::from_integers(&[1]);
    for k in 0..n {
        if 2 * k >= len {
            break;
        }
        if k > 0 {
            let a = out.alpha[k - 1].clone();
            let b = out.beta[k - 1].clone();
            let mut next = vec![Rational::new(); len];
            for l in k..len.saturating_sub(k) {
                let mut v = cur[l + 1].clone() - Rational::from(&a * &cur[l]);
                if k > 1 {
                    v -= Rational::from(&b * &prev[l]);
                }
                next[l] = v;
            }
            prev = std::mem::replace(&mut cur, next);
            if with_polys {
                let mut c = vec![Rational::new(); k + 1];
                for (i, x) in p_cur.coefficients().iter().enumerate() {
                    c[i + 1] += x;
                    c[i] -= Rational::from(&a * x);
                }
                if k > 1 {
                    for (i, x) in p_prev.coefficients().iter().enumerate() {
                        c[i] -= Rational::from(&b * x);
                    }
                }
                p_prev = std::mem::replace(&mut p_cur, RationalPolynomial::new(c));
            }
        }
        let hk = cur[k].clone();
        out.h.push(hk.clone());
        if with_polys {
            out.polys.push(p_cur.clone());
        }
        if hk <= 0 {
            return Ok(out);
        }
        out.beta.push(if k == 0 {
            hk.clone()
        } else {
            Rational::from(&hk / &prev[k - 1])
        });
        if 2 * k + 1 < len {
            let mut a = Rational::from(&cur[k + 1] / &hk);
            if k > 0 {
                a -= Rational::from(&prev[k] / &prev[k - 1]);
            }
            out.alpha.push(a);
        } else {
            break;
        }
    }
    Ok(out)
}

/// Monic orthogonal polynomial of degree `n` and its squared norm `h_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthoPoly {
    /// `a_0..a_{n-1}` with `P_n = x^n + sum a_i x^i`.
    pub coefficients: Vec<Rational>,
    pub h: Rational,
}

impl OrthoPoly {
    pub fn polynomial(&self) -> RationalPolynomial {
        let mut c = self.coefficients.clone();
        c.push(Rational::from(1));
        RationalPolynomial::new(c)
    }
}

pub fn monic_orthopoly(ms: &MomentSequence, n: usize) -> Result<OrthoPoly> {
    if ms.moments.len() < 2 * n + 1 {
        return Err(Error::InvalidArgument(format!(
            "degree {n} needs moments up to {}",
            2 * n
        )));
    }
    let rec = exact_recurrence(&ms.moments, n + 1, true)?;
    if rec.h.len() < n + 1 || rec.h.iter().any(|h| *h <= 0) {
        let (i, h) = rec
            .h
            .iter()
            .enumerate()
            .find(|(_, h)| **h <= 0)
            .expect("failed recurrence has a nonpositive norm");
        return Err(Error::HankelNotPositive {
            index: i,
            value: format_rational(h),
        });
    }
    let p = &rec.polys[n];
    let mut coefficients: Vec<Rational> = (0..n).map(|i| p.coefficient(i)).collect();
    coefficients.truncate(n);
    Ok(OrthoPoly {
        coefficients,
        h: rec.h[n].clone(),
    })
}

#[derive(Debug, Clone)]
pub struct QuadratureRule {
    pub order: usize,
    pub method: QuadratureMethod,
    pub precision: Precision,
    /// Nodes on the rescaled unit interval, increasing.
    pub nodes: Vec<Float>,
    pub weights: Vec<Float>,
    /// `h_0..h_{n-1}`.
    pub h: Vec<Float>,
    /// `mu_j - sum_i w_i x_i^j` for `j = 0..2n`.
    pub epsilon: Vec<Float>,
}

impl QuadratureRule {
    /// Largest `|epsilon_j| / max(1, |mu_j|)`.
    pub fn max_relative_epsilon(&self, ms: &MomentSequence) -> Float {
        let bits = self.precision.bits();
        let mut worst = Float::with_val(bits, 0);
        for (j, e) in self.epsilon.iter().enumerate() {
            let scale = Float::with_val(bits, ms.moments[j].clone().abs()).max(&Float::with_val(bits, 1));
            let r = Float::with_val(bits, e.abs_ref()) / scale;
            if r > worst {
                worst = r;
            }
        }
        worst
    }

    /// Nodes mapped back onto `range`.
    pub fn nodes_in(&self, range: &super::Range) -> Vec<Float> {
        let (lo, hi) = range.bounds();
        let bits = self.precision.bits();
        let width = Float::with_val(bits, Rational::from(&hi - &lo));
        self.nodes
            .iter()
            .map(|x| Float::with_val(bits, x * &width) + &lo)
            .collect()
    }

    pub fn tolerance(&self) -> Float {
        self.precision.ten_pow_neg(self.precision.decimal_digits() / 2)
    }

    /// `1 - F(t)` for the piecewise-linear CDF through `(0, 0)`, the node
    /// midpoints with cumulative weights, and `(1, 1)`.
    pub fn threshold_probability(&self, t: &Rational) -> Float {
        let bits = self.precision.bits();
        let t = Float::with_val(bits, t);
        let mut xs = vec![Float::with_val(bits, 0)];
        let mut ys = vec![Float::with_val(bits, 0)];
        let mut acc = Float::with_val(bits, 0);
        for i in 0..self.order.saturating_sub(1) {
            acc += &self.weights[i];
            xs.push(Float::with_val(bits, &self.nodes[i] + &self.nodes[i + 1]) / 2);
            ys.push(acc.clone());
        }
        xs.push(Float::with_val(bits, 1));
        ys.push(Float::with_val(bits, 1));
        let mut cdf = Float::with_val(bits, 1);
        if t <= xs[0] {
            cdf = Float::with_val(bits, 0);
        } else {
            for i in 0..xs.len() - 1 {
                if t >= xs[i] && t <= xs[i + 1] {
                    let span = Float::with_val(bits, &xs[i + 1] - &xs[i]);
                    let frac = Float::with_val(bits, &t - &xs[i]) / span;
                    cdf = Float::with_val(bits, &ys[i + 1] - &ys[i]) * frac + &ys[i];
                    break;
                }
            }
        }
        Float::with_val(bits, 1) - cdf
    }
}

/// Recurrence coefficients at working precision.
struct FloatRecurrence {
    alpha: Vec<Float>,
    beta: Vec<Float>,
}

fn float_recurrence_exact(ms: &MomentSequence, n: usize, bits: u32) -> Result<FloatRecurrence> {
    let rec = exact_recurrence(&ms.moments, n, false)?;
    if let Some((i, h)) = rec.h.iter().enumerate().find(|(_, h)| **h <= 0) {
        return Err(Error::HankelNotPositive {
            index: i,
            value: format_rational(h),
        });
    }
    if rec.alpha.len() < n {
        return Err(Error::InvalidArgument(format!(
            "{n} nodes need moments up to {}",
            2 * n - 1
        )));
    }
    Ok(FloatRecurrence {
        alpha: rec.alpha.iter().map(|a| Float::with_val(bits, a)).collect(),
        beta: rec.beta.iter().map(|b| Float::with_val(bits, b)).collect(),
    })
}

/// Modified Chebyshev algorithm with monic shifted Legendre polynomials
/// (`a_k = 1/2`, `b_k = k^2 / (4 (4k^2 - 1))`) as the auxiliary family.
fn float_recurrence_modified(ms: &MomentSequence, n: usize, bits: u32) -> Result<FloatRecurrence> {
    let m = 2 * n;
    let lambdas = exact_lambdas(ms, m - 1);
    let nu: Vec<Float> = lambdas
        .iter()
        .enumerate()
        .map(|(j, l)| Float::with_val(bits, l) / Float::with_val(bits, binomial(2 * j as u32, j as u32)))
        .collect();
    let half = Float::with_val(bits, 0.5);
    let bk = |k: usize| -> Float {
        if k == 0 {
            Float::with_val(bits, 0)
        } else {
            let k2 = (k * k) as u64;
            Float::with_val(bits, k2) / Float::with_val(bits, 4 * (4 * k2 - 1))
        }
    };
    let mut alpha = vec![Float::with_val(bits, &nu[1] / &nu[0]) + &half];
    let mut beta = vec![nu[0].clone()];
    let mut prev = vec![Float::with_val(bits, 0); m];
    let mut cur = nu;
    for k in 1..n {
        let mut next = vec![Float::with_val(bits, 0); m];
        for l in k..(m - k) {
            let mut v = Float::with_val(bits, &cur[l + 1]);
            v -= Float::with_val(bits, &alpha[k - 1] - &half) * &cur[l];
            v -= Float::with_val(bits, &beta[k - 1] * &prev[l]);
            v += bk(l) * &cur[l - 1];
            next[l] = v;
        }
        if next[k] <= 0 {
            return Err(Error::HankelNotPositive {
                index: k,
                value: to_decimal_string(&next[k], 12),
            });
        }
        let a = Float::with_val(bits, &next[k + 1] / &next[k]) + &half
            - Float::with_val(bits, &cur[k] / &cur[k - 1]);
        let b = Float::with_val(bits, &next[k] / &cur[k - 1]);
        alpha.push(a);
        beta.push(b);
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(FloatRecurrence { alpha, beta })
}

/// Number of eigenvalues of the Jacobi matrix below `x`.
fn sturm_count(rec: &FloatRecurrence, n: usize, x: &Float, bits: u32) -> usize {
    let tiny = Float::with_val(bits, Float::i_exp(1, -(bits as i32) * 2));
    let mut count = 0;
    let mut d = Float::with_val(bits, &rec.alpha[0] - x);
    for i in 0..n {
        if i > 0 {
            let q = Float::with_val(bits, &rec.beta[i] / &d);
            d = Float::with_val(bits, &rec.alpha[i] - x) - q;
        }
        if d.is_zero() {
            d = tiny.clone();
        }
        if d < 0 {
            count += 1;
        }
    }
    count
}

fn jacobi_eigenvalues(rec: &FloatRecurrence, n: usize, bits: u32) -> Vec<Float> {
    // Gershgorin bounds
    let mut lo = Float::with_val(bits, f64::INFINITY);
    let mut hi = Float::with_val(bits, f64::NEG_INFINITY);
    for i in 0..n {
        let mut r = Float::with_val(bits, 0);
        if i > 0 {
            r += Float::with_val(bits, rec.beta[i].sqrt_ref());
        }
        if i + 1 < n {
            r += Float::with_val(bits, rec.beta[i + 1].sqrt_ref());
        }
        let l = Float::with_val(bits, &rec.alpha[i] - &r);
        let h = Float::with_val(bits, &rec.alpha[i] + &r);
        if l < lo {
            lo = l;
        }
        if h > hi {
            hi = h;
        }
    }
    let iterations = bits + 16;
    (0..n)
        .map(|i| {
            // i-th smallest eigenvalue: count(x) <= i on [a, b)
            let mut a = lo.clone();
            let mut b = hi.clone();
            for _ in 0..iterations {
                let mid = Float::with_val(bits, &a + &b) / 2;
                if mid == a || mid == b {
                    break;
                }
                if sturm_count(rec, n, &mid, bits) > i {
                    b = mid;
                } else {
                    a = mid;
                }
            }
            Float::with_val(bits, &a + &b) / 2
        })
        .collect()
}

/// Gauss rule with `n` nodes for the measure with moments `ms`.
pub fn gauss_rule(
    ms: &MomentSequence,
    n: usize,
    precision: Precision,
    method: QuadratureMethod,
) -> Result<QuadratureRule> {
    if n == 0 {
        return Err(Error::InvalidArgument("need at least one node".into()));
    }
    if ms.moments.len() < 2 * n {
        return Err(Error::InvalidArgument(format!(
            "{n} nodes need moments up to {}",
            2 * n - 1
        )));
    }
    let bits = precision.with_guard(8).bits();
    let rec = match method {
        QuadratureMethod::Hankel => float_recurrence_exact(ms, n, bits)?,
        QuadratureMethod::ModifiedChebyshev => float_recurrence_modified(ms, n, bits)?,
    };
    let nodes = jacobi_eigenvalues(&rec, n, bits);
    let mut h = Vec::with_capacity(n);
    let mut acc = Float::with_val(bits, 1);
    for b in rec.beta.iter().take(n) {
        acc *= b;
        h.push(acc.clone());
    }
    let weights: Vec<Float> = nodes
        .iter()
        .map(|x| {
            // P_{n-1}(x) and P_n'(x) by the recurrence
            let mut p_prev = Float::with_val(bits, 0);
            let mut p = Float::with_val(bits, 1);
            let mut d_prev = Float::with_val(bits, 0);
            let mut d = Float::with_val(bits, 0);
            for k in 0..n {
                let xa = Float::with_val(bits, x - &rec.alpha[k]);
                let bk = if k > 0 {
                    rec.beta[k].clone()
                } else {
                    Float::with_val(bits, 0)
                };
                let p_next = Float::with_val(bits, &xa * &p) - Float::with_val(bits, &bk * &p_prev);
                let d_next = Float::with_val(bits, &xa * &d) + &p - Float::with_val(bits, &bk * &d_prev);
                if k + 1 < n {
                    p_prev = std::mem::replace(&mut p, p_next);
                } else {
                    p_prev = p.clone();
                    p = p_next;
                }
                d_prev = std::mem::replace(&mut d, d_next);
            }
            // after the loop: p = P_n, p_prev = P_{n-1}, d = P_n'
            Float::with_val(bits, &h[n - 1] / Float::with_val(bits, &d * &p_prev))
        })
        .collect();
    let mut epsilon = Vec::with_capacity(2 * n);
    let mut powers: Vec<Float> = vec![Float::with_val(bits, 1); n];
    for j in 0..(2 * n).min(ms.moments.len()) {
        let mut s = Float::with_val(bits, 0);
        for i in 0..n {
            s += Float::with_val(bits, &weights[i] * &powers[i]);
            powers[i] *= &nodes[i];
        }
        epsilon.push(Float::with_val(bits, &ms.moments[j]) - s);
    }
    let rule = QuadratureRule {
        order: n,
        method,
        precision,
        nodes,
        weights,
        h,
        epsilon,
    };
    let worst = rule.max_relative_epsilon(ms);
    let tol = rule.tolerance();
    if worst > tol {
        return Err(Error::QuadratureTolerance {
            max_error: to_decimal_string(&worst, 6),
            tolerance: to_decimal_string(&tol, 3),
        });
    }
    Ok(rule)
}
