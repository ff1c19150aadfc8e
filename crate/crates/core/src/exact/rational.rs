use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact fraction over arbitrary-precision integers, always reduced with a
/// positive denominator.
pub type Rational = BigRational;

/// `num / den` as a reduced rational. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn factorial(n: usize) -> Rational {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    Rational::from_integer(acc)
}

/// Renders as `p/q`, or as a bare integer when the denominator is one.
pub fn format_rational(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

pub fn to_f64(value: &Rational) -> f64 {
    value.to_f64().unwrap_or_else(|| {
        // Only reachable for magnitudes beyond f64 range.
        if value.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Parses `p/q`, an integer, or a decimal literal (optionally with an
/// exponent) into an exact rational. Decimals are scaled by powers of ten, so
/// `0.1` becomes exactly `1/10`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty number".into()));
    }
    if let Some((num, den)) = s.split_once('/') {
        let num = parse_rational(num)?;
        let den = parse_rational(den)?;
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(num / den);
    }
    parse_decimal(s)
}

fn parse_decimal(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("invalid number {s:?}"));
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => {
            let exp: i32 = s[pos + 1..].parse().map_err(|_| bad())?;
            (&s[..pos], exp)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.as_bytes().first() {
        Some(b'-') => (true, &mantissa[1..]),
        Some(b'+') => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part
        .bytes()
        .chain(frac_part.bytes())
        .all(|b| b.is_ascii_digit())
    {
        return Err(bad());
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut value = Rational::from_integer(all_digits.parse::<BigInt>().map_err(|_| bad())?);
    let scale = exponent - frac_part.len() as i32;
    let ten = Rational::from_integer(BigInt::from(10));
    if scale >= 0 {
        value *= num_traits::pow(ten, scale as usize);
    } else {
        value /= num_traits::pow(ten, (-scale) as usize);
    }
    Ok(if negative { -value } else { value })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_integers_and_decimals() {
        assert_eq!(parse_rational("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-4").unwrap(), int(-4));
        assert_eq!(parse_rational(" 0.1 ").unwrap(), rat(1, 10));
        assert_eq!(parse_rational("-1.25e-1").unwrap(), rat(-1, 8));
        assert_eq!(parse_rational("2e3").unwrap(), int(2000));
        assert_eq!(parse_rational(".5").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("1/-2").unwrap(), rat(-1, 2));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "abc", "1/0", "1.2.3", "--1", "1e", "."] {
            assert!(parse_rational(bad).is_err(), "{bad:?} should fail");
        }
    }

    #[test]
    fn formatting() {
        assert_eq!(format_rational(&rat(6, 3)), "2");
        assert_eq!(format_rational(&rat(-2, 4)), "-1/2");
        assert_eq!(format_rational(&factorial(5)), "120");
    }
}
