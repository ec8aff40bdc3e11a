//! Numerator polynomials `A_n(k)` of the biproper rational functions `F1(n, k)`.

use rug::{Integer, Rational};

use crate::error::{Error, Result};
use crate::exact::{rat, rising, RationalPolynomial};

use super::f1_adjustment;

#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    Rebit,
    Qubit,
    General(Rational),
}

impl Family {
    pub fn alpha(&self) -> Rational {
        match self {
            Self::Rebit => rat(1, 2),
            Self::Qubit => rat(1, 1),
            Self::General(a) => a.clone(),
        }
    }

    /// Denominator `B_n(k)` in the published normalization. The rebit one carries
    /// `128^n`, i.e. an extra `2^n` relative to the general `2^{6n}`.
    pub fn denominator(&self, n: u32, k: &Rational) -> Rational {
        let alpha = self.alpha();
        let scale = match self {
            Self::Rebit => Integer::from(1) << (7 * n),
            _ => Integer::from(1) << (6 * n),
        };
        Rational::from(scale)
            * rising(&(k.clone() + Rational::from(3 * &alpha) + rat(3, 2)), n)
            * rising(
                &(Rational::from(2 * k) + Rational::from(6 * &alpha) + rat(5, 2)),
                2 * n,
            )
    }
}

/// `A_n` with `F1(alpha, n, k) = A_n(k) / B_n(k)`, by exact interpolation at
/// `k = 0..=3n+1`; a degree above `3n` is reported as an error.
pub fn numerator_polynomial(family: &Family, n: u32) -> Result<RationalPolynomial> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let alpha = family.alpha();
    let points: Vec<(Rational, Rational)> = (0..=3 * n + 1)
        .map(|k| {
            let kr = Rational::from(k);
            let v = f1_adjustment(&alpha, n, k) * family.denominator(n, &kr);
            (kr, v)
        })
        .collect();
    let poly = RationalPolynomial::interpolate(&points)?;
    let expected = 3 * n as usize;
    match poly.degree() {
        Some(d) if d > expected => Err(Error::InterpolationDegree { expected, found: d }),
        _ => Ok(poly),
    }
}

/// Closed form of the rebit coefficient `C_{3n+1-depth}` (`C_1` is the constant term).
pub fn leading_coefficients_rebit(n: u32, depth: u32) -> Result<Rational> {
    if n == 0 || depth > 5 || depth > 3 * n {
        return Err(Error::InvalidArgument(format!(
            "no leading-coefficient formula for n = {n}, depth = {depth}"
        )));
    }
    let m = Integer::from(n);
    let p2 = |e: i64| -> Rational {
        if e >= 0 {
            Rational::from(Integer::from(1) << e as u32)
        } else {
            Rational::from((Integer::from(1), Integer::from(1) << (-e) as u32))
        }
    };
    let e = n as i64;
    let v = match depth {
        0 => p2(e),
        1 => p2(e - 1) * Integer::from(3 * &m) * Integer::from(&m + 2),
        2 => {
            // n (n (n (9n + 32) + 24) - 45)
            let inner = horner(&m, &[9, 32, 24, -45]);
            p2(e - 3) * Integer::from(&m * inner)
        }
        3 => {
            // n (n (n (n (9n^2 + 42n + 52) - 119) - 52) - 60)
            let inner = horner(&m, &[9, 42, 52, -119, -52, -60]);
            p2(e - 4) * Integer::from(&m * inner)
        }
        4 => {
            let poly = horner(&m, &[135, 855, 1895, -1771, -3091, -7731, 32394, 0]);
            p2(e - 7) * rat(1, 5) * Integer::from(&m - 1) * poly
        }
        _ => {
            // n(n(n(n(n(3n(3n(9n+59)+377)-2887)-2295)-10535)+112240)-181492)+436720
            let mut t = Integer::from(9 * &m) + 59;
            t = Integer::from(3 * &m) * t + 377;
            t = Integer::from(3 * &m) * t - 2887;
            for c in [-2295i64, -10535, 112240, -181492, 436720] {
                t = Integer::from(&m * &t) + c;
            }
            p2(e - 8) * rat(1, 5) * Integer::from(&m - 1) * m * t
        }
    };
    Ok(v)
}

fn horner(x: &Integer, coeffs: &[i64]) -> Integer {
    let mut acc = Integer::new();
    for &c in coeffs {
        acc *= x;
        acc += c;
    }
    acc
}
