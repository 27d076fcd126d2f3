//! Exact rational arithmetic helpers.
//!
//! Every mass, weight and distance in the crate is a [`Rational`]; all
//! equality checks are exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// Sign used for `σ(0)` and for sign assignments on vertices or cuts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum Sign {
    #[default]
    Plus,
    Minus,
}

impl Sign {
    pub fn to_rational(self) -> Rational {
        match self {
            Sign::Plus => Rational::one(),
            Sign::Minus => -Rational::one(),
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    /// `σ(r)`: the sign of `r`, with `at_zero` used when `r == 0`.
    pub fn of(r: &Rational, at_zero: Sign) -> Sign {
        if r.is_positive() {
            Sign::Plus
        } else if r.is_negative() {
            Sign::Minus
        } else {
            at_zero
        }
    }

    pub fn apply(self, r: &Rational) -> Rational {
        match self {
            Sign::Plus => r.clone(),
            Sign::Minus => -r.clone(),
        }
    }
}

impl std::str::FromStr for Sign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "+1" | "1" | "+" | "plus" => Ok(Sign::Plus),
            "-1" | "-" | "minus" => Ok(Sign::Minus),
            other => Err(Error::Invalid(format!("sign must be +1 or -1, got {other:?}"))),
        }
    }
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// `[r]⁺ = max(r, 0)`.
pub fn pos_part(r: &Rational) -> Rational {
    if r.is_positive() {
        r.clone()
    } else {
        Rational::zero()
    }
}

/// `[r]⁻ = max(-r, 0)`.
pub fn neg_part(r: &Rational) -> Rational {
    if r.is_negative() {
        -r.clone()
    } else {
        Rational::zero()
    }
}

/// Parses `"3"`, `"-0.25"`, `"1.5e-3"` or `"p/q"`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::BadNumber(text.to_string());
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(p, q));
    }

    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => {
            let e: i32 = s[i + 1..].parse().map_err(|_| bad())?;
            (&s[..i], e)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let numer: BigInt = format!("{whole}{frac}0").parse().map_err(|_| bad())?;
    let scale = exponent - frac.len() as i32 - 1;
    let ten = BigInt::from(10);
    let mut value = Rational::from_integer(numer);
    if scale >= 0 {
        value *= Rational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        value /= Rational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Ok(if negative { -value } else { value })
}

/// Renders `r` as `p/q` (or `p` when integral).
pub fn format_exact(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Decimal rendering with `digits` significant digits, computed exactly and
/// rounded half away from zero.
pub fn format_decimal(r: &Rational, digits: usize) -> String {
    if r.is_zero() {
        return "0".to_string();
    }
    let negative = r.is_negative();
    let a = r.abs();
    let ten = BigInt::from(10);

    // Find e with 10^e <= a < 10^(e+1).
    let mut e: i64 = (a.numer().bits() as i64 - a.denom().bits() as i64) * 30103 / 100000;
    let pow10 = |k: i64| -> Rational {
        if k >= 0 {
            Rational::from_integer(num_traits::pow(ten.clone(), k as usize))
        } else {
            Rational::new(BigInt::one(), num_traits::pow(ten.clone(), (-k) as usize))
        }
    };
    while pow10(e) > a {
        e -= 1;
    }
    while pow10(e + 1) <= a {
        e += 1;
    }

    let shift = digits as i64 - 1 - e;
    let scaled = &a * pow10(shift);
    let (q, rem) = scaled.numer().div_rem(scaled.denom());
    let mut m = q;
    if Rational::new(rem * 2, scaled.denom().clone()) >= Rational::one() {
        m += 1;
    }
    let mut s = m.to_string();
    let mut shift = shift;
    if s.len() > digits {
        // Rounding carried into a new digit.
        s.pop();
        shift -= 1;
    }
    let body = if shift <= 0 {
        let zeros = "0".repeat((-shift) as usize);
        format!("{s}{zeros}")
    } else if (shift as usize) < s.len() {
        let split = s.len() - shift as usize;
        let frac = s[split..].trim_end_matches('0');
        if frac.is_empty() {
            s[..split].to_string()
        } else {
            format!("{}.{}", &s[..split], frac)
        }
    } else {
        let zeros = "0".repeat(shift as usize - s.len());
        format!("0.{zeros}{}", s.trim_end_matches('0'))
    };
    if negative {
        format!("-{body}")
    } else {
        body
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_literals() {
        assert_eq!(parse_rational("3").unwrap(), int(3));
        assert_eq!(parse_rational("5/2").unwrap(), ratio(5, 2));
        assert_eq!(parse_rational(" -0.25 ").unwrap(), ratio(-1, 4));
        assert_eq!(parse_rational("1.5e-3").unwrap(), ratio(3, 2000));
        assert_eq!(parse_rational("2E2").unwrap(), int(200));
        assert_eq!(parse_rational(".5").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("6/-4").unwrap(), ratio(-3, 2));
        for bad in ["", "a", "1/0", "1..2", "-", "1e", "0x10"] {
            assert!(parse_rational(bad).is_err(), "{bad:?} should fail");
        }
    }

    #[test]
    fn formats_decimals() {
        assert_eq!(format_decimal(&ratio(3, 5), 12), "0.6");
        assert_eq!(format_decimal(&ratio(1, 3), 12), "0.333333333333");
        assert_eq!(format_decimal(&ratio(2, 3), 12), "0.666666666667");
        assert_eq!(format_decimal(&ratio(-7, 2), 12), "-3.5");
        assert_eq!(format_decimal(&int(1234), 2), "1200");
        assert_eq!(format_decimal(&ratio(999999, 1_000_000), 3), "1");
        assert_eq!(format_decimal(&ratio(1, 1000), 12), "0.001");
        assert_eq!(format_exact(&ratio(6, 4)), "3/2");
        assert_eq!(format_exact(&int(-2)), "-2");
    }

    #[test]
    fn sign_function() {
        assert_eq!(Sign::of(&int(0), Sign::Minus), Sign::Minus);
        assert_eq!(Sign::of(&ratio(-1, 3), Sign::Plus), Sign::Minus);
        assert_eq!(pos_part(&int(-2)), int(0));
        assert_eq!(neg_part(&int(-2)), int(2));
        assert_eq!("-1".parse::<Sign>().unwrap(), Sign::Minus);
    }
}
