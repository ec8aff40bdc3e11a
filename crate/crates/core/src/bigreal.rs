//! Multiple-precision floats with precision expressed in decimal digits.

use rug::float::Round;
use rug::ops::PowAssign;
use rug::{Float, Rational};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type BigReal = Float;

pub const DEFAULT_DIGITS: u32 = 64;
pub const MIN_DIGITS: u32 = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Precision {
    digits: u32,
}

impl Default for Precision {
    fn default() -> Self {
        Self {
            digits: DEFAULT_DIGITS,
        }
    }
}

impl Precision {
    pub fn digits(digits: u32) -> Result<Self> {
        if digits < MIN_DIGITS {
            return Err(Error::InvalidArgument(format!(
                "precision of {digits} digits is below the minimum of {MIN_DIGITS}"
            )));
        }
        Ok(Self { digits })
    }

    /// Default policy for `n` moments: 64 digits, more for very long sequences.
    pub fn for_moments(n: usize) -> Self {
        let extra = if n > 1000 { n.div_ceil(50) as u32 + 48 } else { 0 };
        Self {
            digits: DEFAULT_DIGITS.max(extra),
        }
    }

    pub fn decimal_digits(self) -> u32 {
        self.digits
    }

    /// Binary precision carrying at least the requested decimal digits.
    pub fn bits(self) -> u32 {
        (f64::from(self.digits) * std::f64::consts::LOG2_10).ceil() as u32 + 8
    }

    pub fn with_guard(self, extra: u32) -> Self {
        Self {
            digits: self.digits + extra,
        }
    }

    pub fn float(self, r: &Rational) -> Float {
        Float::with_val(self.bits(), r)
    }

    pub fn from_f64(self, x: f64) -> Float {
        Float::with_val(self.bits(), x)
    }

    /// `10^{-e}` at this precision.
    pub fn ten_pow_neg(self, e: u32) -> Float {
        let mut t = Float::with_val(self.bits(), 10);
        t.pow_assign(-(e as i32));
        t
    }
}

/// Positional decimal string with `digits` significant digits.
pub fn to_decimal_string(x: &Float, digits: usize) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x.is_sign_negative() { "-inf" } else { "inf" }.into();
    }
    if x.is_zero() {
        return "0".into();
    }
    let (neg, mantissa, exp) = x.to_sign_string_exp_round(10, Some(digits.max(1)), Round::Nearest);
    let exp = exp.unwrap_or(0);
    let mantissa = mantissa.trim_end_matches('0');
    let mantissa = if mantissa.is_empty() { "0" } else { mantissa };
    let mut s = String::new();
    if neg {
        s.push('-');
    }
    // value = 0.mantissa * 10^exp
    if exp <= 0 {
        s.push_str("0.");
        for _ in 0..(-exp) {
            s.push('0');
        }
        s.push_str(mantissa);
    } else {
        let e = exp as usize;
        if mantissa.len() <= e {
            s.push_str(mantissa);
            for _ in mantissa.len()..e {
                s.push('0');
            }
        } else {
            s.push_str(&mantissa[..e]);
            s.push('.');
            s.push_str(&mantissa[e..]);
        }
    }
    s
}

pub fn rational_to_decimal(r: &Rational, digits: u32) -> String {
    if *r == 0 {
        return "0".into();
    }
    let p = Precision { digits: digits + 8 };
    to_decimal_string(&p.float(r), digits as usize)
}
