//! Non-generic family: five Cholesky off-diagonals set to zero, with the
//! remaining one taking values in `R^beta`.

use rug::Rational;

use crate::error::{Error, Result};
use crate::exact::{binomial, factorial, rat, rising};

use super::hypergeom::terminating_pfq;

fn half_beta(beta: u32) -> Rational {
    rat(beta as i64, 2)
}

/// `delta(k) = k!^3 (1 + beta/2)_k / (4 + beta)_{4k}`.
pub fn delta(beta: u32, k: u32) -> Rational {
    let f = Rational::from(factorial(k));
    let f3 = Rational::from(&f * &f) * f;
    f3 * rising(&(half_beta(beta) + 1u32), k) / rising(&Rational::from(4 + beta), 4 * k)
}

fn check_beta(beta: u32) -> Result<()> {
    if beta == 0 {
        return Err(Error::Domain {
            value: "0".into(),
            domain: "beta >= 1".into(),
        });
    }
    Ok(())
}

/// `<|rho^PT|^n |rho|^k>` via the terminating 4F3.
pub fn nongeneric_moment(beta: u32, n: u32, k: u32) -> Result<Rational> {
    check_beta(beta)?;
    let hb = half_beta(beta);
    let kr = Rational::from(k);
    let top = kr.clone() + 1u32 + &hb;
    let pre = {
        let a = rising(&(kr.clone() + 1u32), n);
        let b = rising(&top, n);
        Rational::from(&a * &a) * Rational::from(&b * &b) / rising(&(Rational::from(4 * k + 4 + beta)), 4 * n)
    };
    let nr = Rational::from(n);
    let upper = top.clone() + &nr;
    let num = [Rational::from(-&nr), upper.clone(), upper, hb];
    let low = Rational::from(-&kr) - &nr;
    let den = [low.clone(), low, top];
    Ok(delta(beta, k) * pre * terminating_pfq(&num, &den)?)
}

/// Direct double sum over the binomial expansion of `|rho^PT|^n`.
pub fn nongeneric_brute_oracle(beta: u32, n: u32, k: u32) -> Result<Rational> {
    check_beta(beta)?;
    let hb = half_beta(beta);
    let k1 = Rational::from(k + 1);
    let top = k1.clone() + &hb;
    let mut sum = Rational::new();
    for i in 0..=n {
        for j in 0..=n {
            let a = rising(&k1, n - j);
            let mut term = Rational::from(&a * &a)
                * rising(&top, n + j)
                * rising(&k1, n - i)
                * rising(&hb, i + j)
                * binomial(n, i)
                * binomial(n, j);
            if j % 2 == 1 {
                term = -term;
            }
            sum += term;
        }
    }
    Ok(delta(beta, k) * sum / rising(&Rational::from(4 * k + 4 + beta), 4 * n))
}

/// The explicit `n = 1` expression.
pub fn nongeneric_first_moment(beta: u32, k: u32) -> Result<Rational> {
    check_beta(beta)?;
    let b = Rational::from(beta);
    let kr = Rational::from(k);
    let s = Rational::from(2 * &kr) + 2u32 + &b;
    let k1 = kr.clone() + 1u32;
    let t = Rational::from(2 * &kr) + 4u32 + &b;
    let inner = Rational::from(&k1 * &k1) * &s - Rational::from(&b * &t) * &t / 4u32;
    Ok(delta(beta, k) / rising(&(Rational::from(4 * k + 4) + &b), 4) * s * inner / 4u32)
}
