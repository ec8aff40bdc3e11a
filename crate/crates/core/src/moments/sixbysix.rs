//! Adjustment factors `<|rho|^k |rho^PT|^n> / <|rho|^k>` for 6x6 states.

use rug::Rational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::RationalPolynomial;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SixBySix {
    RebitRetrit,
    QubitQutrit,
}

impl std::str::FromStr for SixBySix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "rebit_retrit" => Ok(Self::RebitRetrit),
            "qubit_qutrit" => Ok(Self::QubitQutrit),
            other => Err(Error::InvalidArgument(format!("unknown 6x6 kind {other:?}"))),
        }
    }
}

impl std::fmt::Display for SixBySix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::RebitRetrit => "rebit_retrit",
            Self::QubitQutrit => "qubit_qutrit",
        })
    }
}

/// Product of `scale * (a_i k + b_i)`.
fn linear_product(scale: i64, factors: &[(i64, i64)], k: &Rational) -> Rational {
    let mut acc = Rational::from(scale);
    for &(a, b) in factors {
        acc *= Rational::from(a * k) + b;
    }
    acc
}

pub fn sixbysix_adjustment(kind: SixBySix, n: u32, k: u32) -> Result<Rational> {
    let k = Rational::from(k);
    let (num, den) = match (kind, n) {
        (_, 0) => return Ok(Rational::from(1)),
        (SixBySix::RebitRetrit, 1) => (
            RationalPolynomial::from_integers(&[-1170, -1149, -220, 95, 40, 4]),
            linear_product(576, &[(1, 4), (3, 11), (3, 13), (6, 23), (6, 25)], &k),
        ),
        (SixBySix::RebitRetrit, 2) => (
            RationalPolynomial::from_integers(&[
                3715740, 5620320, 3316809, 903539, 101979, 12069, 8496, 2616, 336, 16,
            ]),
            linear_product(
                331776,
                &[
                    (1, 5),
                    (3, 11),
                    (3, 13),
                    (3, 14),
                    (3, 16),
                    (6, 23),
                    (6, 25),
                    (6, 29),
                    (6, 31),
                ],
                &k,
            ),
        ),
        (SixBySix::QubitQutrit, 1) => (
            RationalPolynomial::from_integers(&[-3840, -2558, -423, 37, 15, 1]),
            linear_product(72, &[(2, 13), (3, 19), (3, 20), (6, 37), (6, 41)], &k),
        ),
        _ => {
            return Err(Error::UnsupportedCase {
                kind: kind.to_string(),
                n,
            })
        }
    };
    Ok(num.eval(&k) / den)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values_at_zero() {
        assert_eq!(
            sixbysix_adjustment(SixBySix::RebitRetrit, 1, 0).unwrap(),
            Rational::from((-13, 2104960))
        );
        assert_eq!(
            sixbysix_adjustment(SixBySix::QubitQutrit, 1, 0).unwrap(),
            Rational::from((-8, 1124097))
        );
        let den: i64 = 331776 * 5 * 11 * 13 * 14 * 16 * 23 * 25 * 29 * 31;
        assert_eq!(
            sixbysix_adjustment(SixBySix::RebitRetrit, 2, 0).unwrap(),
            Rational::from((3715740, den))
        );
        assert!(matches!(
            sixbysix_adjustment(SixBySix::QubitQutrit, 2, 0),
            Err(Error::UnsupportedCase { .. })
        ));
    }
}
