use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::PolyError;

/// Parse `"3"`, `"-2/7"`, `"0.125"` or `"1e-9"` into an exact rational.
pub fn parse_rational(text: &str) -> Result<BigRational, PolyError> {
    let s = text.trim();
    let bad = || PolyError::Parse(format!("not a rational number: {text:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let mut value = BigRational::from_integer(BigInt::from_str(&digits).map_err(|_| bad())?);
    let scale = exp - frac_part.len() as i32;
    let ten = BigRational::from_integer(10.into());
    if scale >= 0 {
        value *= Pow::pow(&ten, scale as u32);
    } else {
        value /= Pow::pow(&ten, (-scale) as u32);
    }
    Ok(if neg { -value } else { value })
}

/// Decimal rendering truncated toward zero to `digits` places.
pub fn to_decimal(x: &BigRational, digits: usize) -> String {
    let neg = x.is_negative();
    let a = x.abs();
    let scale = BigInt::from(10u32).pow(digits as u32);
    let scaled = (a * BigRational::from_integer(scale.clone())).floor().to_integer();
    let int = &scaled / &scale;
    let frac = &scaled % &scale;
    let mut out = String::new();
    if neg && !(int.is_zero() && frac.is_zero()) {
        out.push('-');
    }
    out.push_str(&int.to_string());
    if digits > 0 {
        out.push('.');
        out.push_str(&format!("{:0>width$}", frac.to_string(), width = digits));
    }
    out
}

pub fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// `10^-k`
pub fn ten_to_minus(k: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(10u32).pow(k))
}
