//! Moment sequences on the unit interval and the three reconstruction routes.

pub mod legendre;
pub mod mnatsakanov;
pub mod quadrature;

use rayon::prelude::*;
use rug::{Integer, Rational};
use serde::Serialize;

use crate::bigreal::Precision;
use crate::error::{Error, Result};
use crate::exact::{format_rational, rat};
use crate::moments::{check_alpha, f0_sequence, f1_adjustment, pt_moment, Variable};

pub use legendre::{legendre_coefficients, separability_estimate, DensityApprox, Estimate};
pub use mnatsakanov::{mnatsakanov, MnatsakanovApprox};
pub use quadrature::{gauss_rule, monic_orthopoly, QuadratureMethod, QuadratureRule};

/// Support `[lo, hi]` of a determinantal variable and its separability cut on
/// the rescaled unit interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Range {
    lo: Rational,
    hi: Rational,
    threshold: Option<Rational>,
}

impl Range {
    pub fn new(lo: Rational, hi: Rational, threshold: Option<Rational>) -> Result<Self> {
        if lo >= hi {
            return Err(Error::InvalidArgument("empty range".into()));
        }
        Ok(Self { lo, hi, threshold })
    }

    /// `|rho^PT|` on `[-1/16, 1/256]`, separable above 16/17.
    pub fn ptdet() -> Self {
        Self {
            lo: rat(-1, 16),
            hi: rat(1, 256),
            threshold: Some(rat(16, 17)),
        }
    }

    /// `|rho| |rho^PT|` on `[-1/110592, 1/65536]`, separable above 16/43.
    pub fn product() -> Self {
        Self {
            lo: rat(-1, 110592),
            hi: rat(1, 65536),
            threshold: Some(rat(16, 43)),
        }
    }

    /// `|rho|` on `[0, 1/256]`.
    pub fn det() -> Self {
        Self {
            lo: Rational::new(),
            hi: rat(1, 256),
            threshold: None,
        }
    }

    /// Identity range `[0, 1]`.
    pub fn unit(threshold: Option<Rational>) -> Self {
        Self {
            lo: Rational::new(),
            hi: Rational::from(1),
            threshold,
        }
    }

    pub fn for_variable(variable: Variable) -> Result<Self> {
        match variable {
            Variable::Ptdet => Ok(Self::ptdet()),
            Variable::Product => Ok(Self::product()),
            Variable::Det => Ok(Self::det()),
            Variable::Bivariate => Err(Error::InvalidArgument(
                "a moment sequence needs a univariate variable".into(),
            )),
        }
    }

    pub fn bounds(&self) -> (Rational, Rational) {
        (self.lo.clone(), self.hi.clone())
    }

    pub fn threshold(&self) -> Option<&Rational> {
        self.threshold.as_ref()
    }

    /// Map a value of the original variable onto `[0, 1]`.
    pub fn to_unit(&self, v: &Rational) -> Rational {
        Rational::from(v - &self.lo) / Rational::from(&self.hi - &self.lo)
    }

    pub fn from_unit_f64(&self, t: f64) -> f64 {
        self.lo.to_f64() + t * Rational::from(&self.hi - &self.lo).to_f64()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MomentSequence {
    pub variable: Option<Variable>,
    pub alpha: Option<Rational>,
    pub range: Range,
    /// Moments of the rescaled variable on `[0, 1]`, `moments[0] = 1`.
    pub moments: Vec<Rational>,
}

impl MomentSequence {
    /// Sequence given directly on `[0, 1]`.
    pub fn unit(moments: Vec<Rational>, threshold: Option<Rational>) -> Result<Self> {
        if moments.first().is_none_or(|m| *m != 1) {
            return Err(Error::InvalidArgument("moment sequence must start with 1".into()));
        }
        Ok(Self {
            variable: None,
            alpha: None,
            range: Range::unit(threshold),
            moments,
        })
    }

    pub fn len(&self) -> usize {
        self.moments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moments.is_empty()
    }

    /// Highest available moment index.
    pub fn order(&self) -> usize {
        self.moments.len().saturating_sub(1)
    }

    pub fn threshold(&self) -> Option<&Rational> {
        self.range.threshold()
    }

    /// Numerators over the least common denominator of `moments[..=n]`.
    pub fn common_denominator(&self, n: usize) -> (Vec<Integer>, Integer) {
        let mut den = Integer::from(1);
        for m in &self.moments[..=n] {
            den.lcm_mut(m.denom());
        }
        let nums = self.moments[..=n]
            .iter()
            .map(|m| Integer::from(&den / m.denom()) * m.numer())
            .collect();
        (nums, den)
    }

    /// Checks `det (mu_{i+j})_{i,j<=m} > 0` for `m` up to `order` by exact
    /// Hankel factorization.
    pub fn check_hankel(&self, order: usize) -> Result<()> {
        let order = order.min(self.order() / 2);
        let rec = quadrature::exact_recurrence(&self.moments, order + 1, false)?;
        for (i, h) in rec.h.iter().enumerate() {
            if *h <= 0 {
                return Err(Error::HankelNotPositive {
                    index: i,
                    value: format_rational(h),
                });
            }
        }
        Ok(())
    }
}

/// Raw (unscaled) moments `<V^i>` for `i = 0..=n`.
pub fn raw_moments(alpha: &Rational, variable: Variable, n: usize) -> Result<Vec<Rational>> {
    check_alpha(alpha)?;
    let n32 = n as u32;
    Ok(match variable {
        Variable::Det => f0_sequence(alpha, n32),
        Variable::Ptdet => (0..=n32).into_par_iter().map(|i| pt_moment(alpha, i)).collect(),
        Variable::Product => {
            let f0 = f0_sequence(alpha, n32);
            (0..=n32)
                .into_par_iter()
                .map(|i| f1_adjustment(alpha, i, i) * &f0[i as usize])
                .collect()
        }
        Variable::Bivariate => {
            return Err(Error::InvalidArgument(
                "a moment sequence needs a univariate variable".into(),
            ))
        }
    })
}

/// Moments of `T = (V - lo) / (hi - lo)` by exact binomial expansion.
pub fn rescale_moments(raw: &[Rational], range: &Range) -> Vec<Rational> {
    if raw.is_empty() {
        return Vec::new();
    }
    let (lo, hi) = range.bounds();
    let shift = Rational::from(-&lo);
    let (p, q) = (shift.numer().clone(), shift.denom().clone());
    let width = Rational::from(&hi - &lo);
    let mut dr = Integer::from(1);
    for m in raw {
        dr.lcm_mut(m.denom());
    }
    let r: Vec<Integer> = raw
        .iter()
        .map(|m| Integer::from(&dr / m.denom()) * m.numer())
        .collect();
    // mu_m q^m (hi-lo)^m dr = sum_i C(m,i) r_i p^{m-i} q^i
    let n = raw.len();
    let mut ppow = vec![Integer::from(1); n];
    let mut qpow = vec![Integer::from(1); n];
    for i in 1..n {
        ppow[i] = Integer::from(&ppow[i - 1] * &p);
        qpow[i] = Integer::from(&qpow[i - 1] * &q);
    }
    (0..n)
        .into_par_iter()
        .map(|m| {
            let mut s = Integer::new();
            let mut c = Integer::from(1);
            for i in 0..=m {
                if i > 0 {
                    c *= (m - i + 1) as u64;
                    c /= i as u64;
                }
                if r[i] != 0 {
                    s += Integer::from(&c * &r[i]) * &ppow[m - i] * &qpow[i];
                }
            }
            let mut wpow = Rational::from(1);
            for _ in 0..m {
                wpow *= &width;
            }
            Rational::from((s, Integer::from(&dr * &qpow[m]))) / wpow
        })
        .collect()
}

/// Rescaled moment sequence `mu_0..=mu_n` for `variable` in the alpha family.
pub fn build_moment_sequence(
    alpha: &Rational,
    variable: Variable,
    n: usize,
    _precision: Precision,
) -> Result<MomentSequence> {
    if n == 0 {
        return Err(Error::InvalidArgument("need at least one moment".into()));
    }
    let range = Range::for_variable(variable)?;
    let raw = raw_moments(alpha, variable, n)?;
    let moments = rescale_moments(&raw, &range);
    let seq = MomentSequence {
        variable: Some(variable),
        alpha: Some(alpha.clone()),
        range,
        moments,
    };
    seq.check_hankel(HANKEL_CHECK_ORDER)?;
    Ok(seq)
}

/// Highest Hankel order verified when a sequence is built.
pub const HANKEL_CHECK_ORDER: usize = 32;

/// Serializable summary of a sequence.
#[derive(Debug, Clone, Serialize)]
pub struct SequenceRecord {
    pub variable: Option<Variable>,
    pub alpha: Option<String>,
    pub range: [String; 2],
    pub threshold: Option<String>,
    pub n_moments: usize,
}

impl From<&MomentSequence> for SequenceRecord {
    fn from(ms: &MomentSequence) -> Self {
        let (lo, hi) = ms.range.bounds();
        Self {
            variable: ms.variable,
            alpha: ms.alpha.as_ref().map(format_rational),
            range: [format_rational(&lo), format_rational(&hi)],
            threshold: ms.threshold().map(format_rational),
            n_moments: ms.order(),
        }
    }
}
