//! Exact rational arithmetic on top of GMP.

use std::fmt;
use std::str::FromStr;

use rug::{Integer, Rational};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with a positive denominator.
pub type ExactRational = Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Ascending,
    Descending,
}

/// `(x)_m` for `Ascending`, `x(x-1)...(x-m+1)` for `Descending`.
pub fn pochhammer(x: &Rational, m: u32, direction: Direction) -> Rational {
    let mut acc = Rational::from(1);
    let mut term = x.clone();
    for _ in 0..m {
        acc *= &term;
        match direction {
            Direction::Ascending => term += 1,
            Direction::Descending => term -= 1,
        }
    }
    acc
}

pub fn rising(x: &Rational, m: u32) -> Rational {
    pochhammer(x, m, Direction::Ascending)
}

/// Rising factorial of an integer start, computed in integer arithmetic.
pub fn rising_int(x: i64, m: u32) -> Integer {
    let mut acc = Integer::from(1);
    for i in 0..m as i64 {
        let f = x + i;
        if f == 0 {
            return Integer::new();
        }
        acc *= f;
    }
    acc
}

pub fn binomial(n: u32, k: u32) -> Integer {
    if k > n {
        return Integer::new();
    }
    Integer::from(n).binomial(k)
}

pub fn factorial(n: u32) -> Integer {
    Integer::from(Integer::factorial(n))
}

pub fn checked_div(a: &Rational, b: &Rational) -> Result<Rational> {
    if *b == 0 {
        return Err(Error::DivisionByZero);
    }
    Ok(Rational::from(a / b))
}

pub fn rat(p: i64, q: i64) -> Rational {
    Rational::from((p, q))
}

/// Parses `"p/q"`, `"p"` or a plain decimal such as `"0.5"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::ParseRational(s.to_string());
    if t.is_empty() {
        return Err(bad());
    }
    if let Some((p, q)) = t.split_once('/') {
        let p = Integer::from_str(p.trim()).map_err(|_| bad())?;
        let q = Integer::from_str(q.trim()).map_err(|_| bad())?;
        if q == 0 {
            return Err(Error::DivisionByZero);
        }
        return Ok(Rational::from((p, q)));
    }
    if let Some((int, frac)) = t.split_once('.') {
        let negative = int.starts_with('-');
        let digits = format!("{}{}", int.trim_start_matches(['-', '+']), frac);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let num = Integer::from_str(&digits).map_err(|_| bad())?;
        let den = Integer::from(Integer::u_pow_u(10, frac.len() as u32));
        let r = Rational::from((num, den));
        return Ok(if negative { -r } else { r });
    }
    Integer::from_str(t).map(Rational::from).map_err(|_| bad())
}

pub fn format_rational(r: &Rational) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Polynomial in `k` with exact rational coefficients, lowest power first.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RationalPolynomial {
    coefficients: Vec<Rational>,
}

impl RationalPolynomial {
    pub fn new(mut coefficients: Vec<Rational>) -> Self {
        while coefficients.last().is_some_and(|c| *c == 0) {
            coefficients.pop();
        }
        Self { coefficients }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_integers(coefficients: &[i64]) -> Self {
        Self::new(coefficients.iter().map(|&c| Rational::from(c)).collect())
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coefficients.last()
    }

    pub fn coefficient(&self, power: usize) -> Rational {
        self.coefficients.get(power).cloned().unwrap_or_default()
    }

    pub fn eval(&self, k: &Rational) -> Rational {
        let mut acc = Rational::new();
        for c in self.coefficients.iter().rev() {
            acc *= k;
            acc += c;
        }
        acc
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        Self::new(
            self.coefficients
                .iter()
                .map(|c| Rational::from(c * factor))
                .collect(),
        )
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.coefficients.iter().all(|c| *c.denom() == 1)
    }

    /// Unique polynomial of degree below `points.len()` through the given points.
    pub fn interpolate(points: &[(Rational, Rational)]) -> Result<Self> {
        let n = points.len();
        let xs: Vec<&Rational> = points.iter().map(|p| &p.0).collect();
        let mut dd: Vec<Rational> = points.iter().map(|p| p.1.clone()).collect();
        for level in 1..n {
            for i in (level..n).rev() {
                let den = Rational::from(xs[i] - xs[i - level]);
                if den == 0 {
                    return Err(Error::InvalidArgument(
                        "interpolation nodes must be distinct".into(),
                    ));
                }
                let num = Rational::from(&dd[i] - &dd[i - 1]);
                dd[i] = num / den;
            }
        }
        // Horner expansion of the Newton form.
        let mut coeffs: Vec<Rational> = Vec::with_capacity(n);
        for i in (0..n).rev() {
            // coeffs <- coeffs * (k - x_i) + dd[i]
            let mut next = vec![Rational::new(); coeffs.len() + 1];
            for (p, c) in coeffs.iter().enumerate() {
                next[p + 1] += c;
                next[p] -= Rational::from(c * xs[i]);
            }
            next[0] += &dd[i];
            coeffs = next;
        }
        Ok(Self::new(coeffs))
    }
}

impl fmt::Display for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (p, c) in self.coefficients.iter().enumerate().rev() {
            if *c == 0 {
                continue;
            }
            let (neg, abs) = if *c < 0 {
                (true, Rational::from(-c))
            } else {
                (false, c.clone())
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let coeff = format_rational(&abs);
            match p {
                0 => write!(f, "{coeff}")?,
                _ => {
                    if abs != 1 {
                        write!(f, "{coeff}*")?;
                    }
                    if p == 1 {
                        write!(f, "k")?;
                    } else {
                        write!(f, "k^{p}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pochhammer_small_cases() {
        assert_eq!(rising(&rat(3, 2), 2), rat(15, 4));
        assert_eq!(rising(&rat(7, 1), 0), 1);
        assert_eq!(rising(&rat(-15, 2), 2), rat(195, 4));
        assert_eq!(pochhammer(&rat(5, 1), 3, Direction::Descending), 60);
        assert_eq!(rising_int(-2, 4), 0);
        assert_eq!(rising_int(-3, 2), 6);
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("1/2").unwrap(), rat(1, 2));
        assert_eq!(parse_rational(" -6/4 ").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational("2").unwrap(), 2);
        assert_eq!(parse_rational("0.25").unwrap(), rat(1, 4));
        assert_eq!(parse_rational("-1.5").unwrap(), rat(-3, 2));
        assert!(matches!(parse_rational("1/0"), Err(Error::DivisionByZero)));
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(
            checked_div(&rat(1, 1), &Rational::new()),
            Err(Error::DivisionByZero)
        );
        assert_eq!(checked_div(&rat(1, 2), &rat(1, 4)).unwrap(), 2);
    }

    #[test]
    fn interpolation_recovers_cubic() {
        let p = RationalPolynomial::from_integers(&[-16, 5, 9, 2]);
        let pts: Vec<_> = (0..6)
            .map(|k| {
                let k = Rational::from(k);
                let v = p.eval(&k);
                (k, v)
            })
            .collect();
        let q = RationalPolynomial::interpolate(&pts).unwrap();
        assert_eq!(p, q);
        assert_eq!(q.degree(), Some(3));
        assert_eq!(q.to_string(), "2*k^3 + 9*k^2 + 5*k - 16");
    }

    #[test]
    fn trailing_zeros_trimmed() {
        let p = RationalPolynomial::from_integers(&[1, 0, 0]);
        assert_eq!(p.degree(), Some(0));
        assert!(RationalPolynomial::from_integers(&[0, 0]).is_zero());
    }
}
