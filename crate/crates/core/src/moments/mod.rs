//! Closed-form determinantal moments under the Hilbert-Schmidt measure.
//!
//! `alpha` is the Dyson-like family parameter: 1/2 for two rebits, 1 for two
//! qubits, 2 for the presumptive quaternionic case.

pub mod hypergeom;
pub mod nongeneric;
pub mod numerator;
pub mod sixbysix;
pub mod tables;

use rug::{Integer, Rational};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{binomial, factorial, rat, rising, rising_int};

pub use nongeneric::{nongeneric_brute_oracle, nongeneric_moment};
pub use numerator::{leading_coefficients_rebit, numerator_polynomial, Family};
pub use sixbysix::{sixbysix_adjustment, SixBySix};
pub use tables::{table_lookup, TableId};

/// Which determinantal statistic a moment refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variable {
    /// `|rho|`
    Det,
    /// `|rho^PT|`
    Ptdet,
    /// `|rho| |rho^PT|`
    Product,
    /// `|rho|^k |rho^PT|^n`
    Bivariate,
}

impl std::str::FromStr for Variable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "det" => Ok(Self::Det),
            "ptdet" | "pt" => Ok(Self::Ptdet),
            "product" => Ok(Self::Product),
            "bivariate" => Ok(Self::Bivariate),
            other => Err(Error::InvalidArgument(format!("unknown variable {other:?}"))),
        }
    }
}

impl std::fmt::Display for Variable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Det => "det",
            Self::Ptdet => "ptdet",
            Self::Product => "product",
            Self::Bivariate => "bivariate",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MomentQuery {
    pub alpha: Rational,
    pub n: u32,
    pub k: u32,
    pub variable: Variable,
}

impl MomentQuery {
    /// `Det` uses `k`, `Ptdet` and `Product` use `n`, `Bivariate` uses both.
    pub fn evaluate(&self) -> Result<Rational> {
        check_alpha(&self.alpha)?;
        Ok(match self.variable {
            Variable::Det => f0_det_moment(&self.alpha, self.k),
            Variable::Ptdet => pt_moment(&self.alpha, self.n),
            Variable::Product => product_moment(&self.alpha, self.n),
            Variable::Bivariate => bivariate_moment(&self.alpha, self.n, self.k),
        })
    }
}

pub fn check_alpha(alpha: &Rational) -> Result<()> {
    if *alpha < 0 {
        return Err(Error::Domain {
            value: crate::exact::format_rational(alpha),
            domain: "alpha >= 0".into(),
        });
    }
    Ok(())
}

/// Base of the third `(n-j)`-indexed Pochhammer factor in the finite sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PtBase {
    /// `k + 1 + 2 alpha`
    Corrected,
    /// `k + 2 + alpha`, which fails the rebit tables.
    AsPrinted,
}

fn pow2(e: u32) -> Integer {
    Integer::from(1) << e
}

/// `<|rho|^k>`.
pub fn f0_det_moment(alpha: &Rational, k: u32) -> Rational {
    let num = Rational::from(factorial(k))
        * rising(&(alpha.clone() + 1u32), k)
        * rising(&(Rational::from(2 * alpha) + 1u32), k);
    let den = Rational::from(pow2(6 * k))
        * rising(&(Rational::from(3 * alpha) + rat(3, 2)), k)
        * rising(&(Rational::from(6 * alpha) + rat(5, 2)), 2 * k);
    num / den
}

/// `f0_det_moment(alpha, k)` for `k = 0..=kmax`.
pub fn f0_sequence(alpha: &Rational, kmax: u32) -> Vec<Rational> {
    let mut out = Vec::with_capacity(kmax as usize + 1);
    let mut cur = Rational::from(1);
    out.push(cur.clone());
    let a3 = Rational::from(3 * alpha) + rat(3, 2);
    let a6 = Rational::from(6 * alpha) + rat(5, 2);
    for k in 0..kmax {
        let num = Rational::from(k + 1) * (alpha.clone() + (k + 1)) * (Rational::from(2 * alpha) + (k + 1));
        let den = Rational::from(64) * (a3.clone() + k) * (a6.clone() + 2 * k) * (a6.clone() + (2 * k + 1));
        cur *= num / den;
        out.push(cur.clone());
    }
    out
}

/// `F1(n, k) = <|rho^PT|^n |rho|^k> / <|rho|^k>` by the finite sum.
pub fn f1_adjustment(alpha: &Rational, n: u32, k: u32) -> Rational {
    f1_adjustment_with(alpha, n, k, PtBase::Corrected)
}

pub fn f1_adjustment_with(alpha: &Rational, n: u32, k: u32, base: PtBase) -> Rational {
    if n == 0 {
        return Rational::from(1);
    }
    let kr = Rational::from(k);
    let b1 = kr.clone() + 1u32 + alpha;
    let b2 = match base {
        PtBase::Corrected => kr.clone() + 1u32 + Rational::from(2 * alpha),
        PtBase::AsPrinted => kr.clone() + 2u32 + alpha,
    };
    // prefix products (b1)_m (b2)_m for m = 0..=n
    let mut tail = Vec::with_capacity(n as usize + 1);
    let mut acc = Rational::from(1);
    tail.push(acc.clone());
    for m in 0..n {
        acc *= Rational::from(&b1 + m) * Rational::from(&b2 + m);
        tail.push(acc.clone());
    }
    let c = Rational::from(-5 * alpha) - (2 * k + 2 * n + 1);
    let half = Rational::from(alpha + rat(1, 2));
    let mut head = Rational::from(1);
    let mut sum = Rational::new();
    for j in 0..=n {
        if j > 0 {
            let i = j - 1;
            head *= Rational::from(alpha + i) * Rational::from(&half + i) * Rational::from(&c + i) * 4u32;
        }
        if head == 0 {
            break;
        }
        let int_part = binomial(n, j) * rising_int(k as i64 - j as i64 + 1, n - j);
        if int_part == 0 {
            continue;
        }
        sum += Rational::from(&head * &tail[(n - j) as usize]) * int_part;
    }
    let den = Rational::from(pow2(6 * n))
        * rising(&(kr.clone() + Rational::from(3 * alpha) + rat(3, 2)), n)
        * rising(
            &(Rational::from(2 * k) + Rational::from(6 * alpha) + rat(5, 2)),
            2 * n,
        );
    sum / den
}

/// `<|rho|^k |rho^PT|^n>`.
pub fn bivariate_moment(alpha: &Rational, n: u32, k: u32) -> Rational {
    f1_adjustment(alpha, n, k) * f0_det_moment(alpha, k)
}

/// `<|rho^PT|^n>`.
pub fn pt_moment(alpha: &Rational, n: u32) -> Rational {
    f1_adjustment(alpha, n, 0)
}

/// `<(|rho| |rho^PT|)^n>`.
pub fn product_moment(alpha: &Rational, n: u32) -> Rational {
    bivariate_moment(alpha, n, n)
}

/// Simplified product moment at `alpha = 0`.
pub fn classical_product_moment(n: u32) -> Rational {
    let f = Rational::from(factorial(2 * n));
    let num = Rational::from(&f * &f) * f;
    let den = Rational::from(pow2(12 * n)) * rising(&rat(3, 2), 2 * n) * rising(&rat(5, 2), 4 * n);
    num / den
}

/// `R(n, k) = F0(n + k) / F0(k)`.
pub fn r_ratio(alpha: &Rational, n: u32, k: u32) -> Rational {
    let kr = Rational::from(k);
    let num = rising(&(kr.clone() + 1u32), n)
        * rising(&(kr.clone() + 1u32 + alpha), n)
        * rising(&(kr.clone() + 1u32 + Rational::from(2 * alpha)), n);
    let den = Rational::from(pow2(6 * n))
        * rising(&(kr.clone() + Rational::from(3 * alpha) + rat(3, 2)), n)
        * rising(
            &(Rational::from(2 * k) + Rational::from(6 * alpha) + rat(5, 2)),
            2 * n,
        );
    num / den
}

/// `F2(n, k) = <|rho|^k (|rho^PT| - |rho|)^n> / <|rho|^k>`.
pub fn f2_central_adjustment(alpha: &Rational, n: u32, k: u32) -> Rational {
    let mut sum = Rational::new();
    for j in 0..=n {
        let term = f1_adjustment(alpha, j, k + n - j) * r_ratio(alpha, n - j, k) * binomial(n, j);
        if (n - j) % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    sum
}

/// `<T_rho^k T_PT^m> / <T_rho^k>` where `T_PT = (256 |rho^PT| + 16) / 17` maps
/// `|rho^PT|` onto the unit interval.
pub fn transformed_pt_factor(alpha: &Rational, m: u32, k: u32) -> Rational {
    let (a, b) = crate::reconstruct::Range::ptdet().bounds();
    let shift = Rational::from(-&a);
    let width = Rational::from(&b - &a);
    let mut sum = Rational::new();
    for i in 0..=m {
        let mut shift_pow = Rational::from(1);
        for _ in 0..(m - i) {
            shift_pow *= &shift;
        }
        sum += f1_adjustment(alpha, i, k) * shift_pow * binomial(m, i);
    }
    let mut w = Rational::from(1);
    for _ in 0..m {
        w *= &width;
    }
    sum / w
}

/// First-order transformed factor in the rebit case.
pub fn transformed_unit_interval_factor(k: u32) -> Rational {
    transformed_pt_factor(&rat(1, 2), 1, k)
}
