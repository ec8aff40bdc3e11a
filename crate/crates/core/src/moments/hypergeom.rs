//! Terminating hypergeometric series at unit argument, and the hypergeometric
//! forms of the moment formulas. These serve as independent cross-checks of the
//! finite-sum route.

use rug::Rational;

use crate::error::{Error, Result};
use crate::exact::{factorial, rat, rising};

/// `pFq(num; den; 1)` for a terminating series.
///
/// Summation stops as soon as a numerator parameter reaches zero, checked before
/// any denominator is divided out.
pub fn terminating_pfq(num: &[Rational], den: &[Rational]) -> Result<Rational> {
    let limit = num
        .iter()
        .filter(|a| a.is_integer() && **a <= 0)
        .filter_map(|a| Rational::from(-a).numer().to_u32())
        .min();
    let Some(limit) = limit else {
        return Err(Error::InvalidArgument(
            "hypergeometric series does not terminate".into(),
        ));
    };
    let mut term = Rational::from(1);
    let mut sum = Rational::from(1);
    for j in 0..=limit {
        let mut ratio = Rational::from(1);
        for a in num {
            let f = Rational::from(a + j);
            if f == 0 {
                return Ok(sum);
            }
            ratio *= f;
        }
        for b in den {
            let f = Rational::from(b + j);
            if f == 0 {
                return Err(Error::DivisionByZero);
            }
            ratio /= f;
        }
        ratio /= j + 1;
        term *= ratio;
        sum += &term;
    }
    Ok(sum)
}

/// Generic-`k` form of `F1(n, k)`; valid for `k >= n`.
pub fn f1_generic(alpha: &Rational, n: u32, k: u32) -> Result<Rational> {
    if k < n {
        return Err(Error::InvalidArgument(format!(
            "generic form needs k >= n, got n = {n}, k = {k}"
        )));
    }
    let kr = Rational::from(k);
    let nr = Rational::from(n);
    let a2 = Rational::from(2 * alpha);
    let pre_num = rising(&(kr.clone() + 1u32), n)
        * rising(&(kr.clone() + 1u32 + alpha), n)
        * rising(&(kr.clone() + 1u32 + &a2), n);
    let pre_den = Rational::from(rug::Integer::from(1) << (6 * n))
        * rising(&(kr.clone() + Rational::from(3 * alpha) + rat(3, 2)), n)
        * rising(
            &(Rational::from(2 * k) + Rational::from(6 * alpha) + rat(5, 2)),
            2 * n,
        );
    let kn = Rational::from(&kr + &nr);
    let num = [
        Rational::from(-&nr),
        Rational::from(-&kr),
        alpha.clone(),
        Rational::from(alpha + rat(1, 2)),
        Rational::from(-5 * alpha) - Rational::from(2 * &kn) - 1u32,
    ];
    let den = [
        Rational::from(-&kn) - alpha,
        Rational::from(-&kn) - &a2,
        Rational::from(-&kn) / 2u32,
        (Rational::from(-&kn) + 1u32) / 2u32,
    ];
    Ok(pre_num / pre_den * terminating_pfq(&num, &den)?)
}

/// `<|rho^PT|^n>` from the two-term `k = 0` form.
pub fn pt_moment_k0(alpha: &Rational, n: u32) -> Result<Rational> {
    if n == 0 {
        return Ok(Rational::from(1));
    }
    let nr = Rational::from(n);
    let first = super::f0_det_moment(alpha, n);
    let c = Rational::from(-5 * alpha) - (2 * n + 1);
    let scale = rising(&c, n) * rising(alpha, n) * rising(&(alpha.clone() + rat(1, 2)), n)
        / (Rational::from(rug::Integer::from(1) << (4 * n))
            * rising(&(Rational::from(3 * alpha) + rat(3, 2)), n)
            * rising(&(Rational::from(6 * alpha) + rat(5, 2)), 2 * n));
    if scale == 0 {
        return Ok(first);
    }
    let num = [
        -(nr.clone() - 2u32) / 2u32,
        -(nr.clone() - 1u32) / 2u32,
        Rational::from(-&nr),
        alpha.clone() + 1u32,
        Rational::from(2 * alpha) + 1u32,
    ];
    let den = [
        Rational::from(1) - &nr,
        nr.clone() + 2u32 + Rational::from(5 * alpha),
        Rational::from(1) - &nr - alpha,
        rat(1, 2) - &nr - alpha,
    ];
    Ok(first + scale * terminating_pfq(&num, &den)?)
}

/// `<(|rho| |rho^PT|)^n>` from the `k = n` form.
pub fn product_moment_diagonal(alpha: &Rational, n: u32) -> Result<Rational> {
    let nr = Rational::from(n);
    let pre = Rational::from(factorial(2 * n))
        * rising(&(alpha.clone() + 1u32), 2 * n)
        * rising(&(Rational::from(2 * alpha) + 1u32), 2 * n)
        / (Rational::from(rug::Integer::from(1) << (12 * n))
            * rising(&(Rational::from(3 * alpha) + rat(3, 2)), 2 * n)
            * rising(&(Rational::from(6 * alpha) + rat(5, 2)), 4 * n));
    let num = [
        Rational::from(-&nr),
        alpha.clone(),
        alpha.clone() + rat(1, 2),
        Rational::from(-4 * &nr) - 1u32 - Rational::from(5 * alpha),
    ];
    let den = [
        Rational::from(-2 * &nr) - alpha,
        Rational::from(-2 * &nr) - Rational::from(2 * alpha),
        rat(1, 2) - nr,
    ];
    Ok(pre * terminating_pfq(&num, &den)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moments::{f1_adjustment, product_moment, pt_moment};

    #[test]
    fn pfq_basic() {
        // 2F1(-n, b; c; 1) = (c-b)_n/(c)_n
        let v = terminating_pfq(&[rat(-3, 1), rat(1, 2)], &[rat(5, 2)]).unwrap();
        assert_eq!(v, rising(&rat(2, 1), 3) / rising(&rat(5, 2), 3));
        assert!(terminating_pfq(&[rat(1, 2)], &[rat(1, 1)]).is_err());
    }

    #[test]
    fn generic_form_matches_finite_sum() {
        for alpha in [rat(1, 2), rat(1, 1), rat(2, 1), rat(3, 7)] {
            for n in 0..5 {
                for k in n..n + 4 {
                    assert_eq!(
                        f1_generic(&alpha, n, k).unwrap(),
                        f1_adjustment(&alpha, n, k),
                        "alpha {alpha} n {n} k {k}"
                    );
                }
            }
        }
        assert!(f1_generic(&rat(1, 2), 3, 1).is_err());
    }

    #[test]
    fn special_forms_match_finite_sum() {
        for alpha in [rat(0, 1), rat(1, 2), rat(1, 1), rat(2, 1)] {
            for n in 0..8 {
                assert_eq!(pt_moment_k0(&alpha, n).unwrap(), pt_moment(&alpha, n));
                assert_eq!(
                    product_moment_diagonal(&alpha, n).unwrap(),
                    product_moment(&alpha, n)
                );
            }
        }
    }
}
