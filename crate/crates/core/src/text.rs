//! Decimal and hexadecimal float text for every supported format.
//!
//! Parsing is correctly rounded (ties to even) for both syntaxes. Hex output
//! uses the `%a` style (`-0x1.2cp-2`); decimal output is the shortest string
//! that parses back to the same bits.

use num_bigint::BigUint;
use num_traits::{Num, Zero};

use crate::dyadic::narrow_to_u128;
use crate::float::GivensFloat;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseFloatError {
    #[error("empty input")]
    Empty,
    #[error("invalid float literal `{0}`")]
    Invalid(String),
}

/// Parses decimal (`-1.5e-3`), hex (`0x1.8p+1`) or special (`inf`, `nan`) syntax.
pub fn parse_float<T: GivensFloat>(input: &str) -> Result<T, ParseFloatError> {
    let s = input.trim();
    if s.is_empty() {
        return Err(ParseFloatError::Empty);
    }
    let (negative, body) = match s.as_bytes()[0] {
        b'-' => (true, &s[1..]),
        b'+' => (false, &s[1..]),
        _ => (false, s),
    };
    let lower = body.to_ascii_lowercase();
    let fmt = T::FORMAT;
    let sign = if negative { fmt.sign_mask() } else { 0 };
    match lower.as_str() {
        "inf" | "infinity" => return Ok(T::from_bits(sign | fmt.infinity_bits())),
        "nan" => return Ok(T::from_bits(sign | fmt.quiet_nan_bits())),
        _ => {}
    }
    let invalid = || ParseFloatError::Invalid(input.to_owned());
    let parsed = if let Some(hex) = lower.strip_prefix("0x") {
        parse_hex_body(hex).ok_or_else(invalid)?
    } else {
        parse_decimal_body(&lower).ok_or_else(invalid)?
    };
    Ok(match parsed {
        Parsed::Zero => T::from_bits(sign),
        Parsed::Overflow => T::from_bits(sign | fmt.infinity_bits()),
        Parsed::Value { mantissa, exponent, sticky } => T::from_raw_parts(negative, mantissa, exponent, sticky),
    })
}

enum Parsed {
    Zero,
    Overflow,
    Value { mantissa: u128, exponent: i32, sticky: bool },
}

fn split_mantissa_exponent(body: &str, marker: char) -> Option<(&str, &str, i64)> {
    let (mant, exp) = match body.find(marker) {
        Some(i) => (&body[..i], Some(&body[i + 1..])),
        None => (body, None),
    };
    let exp = match exp {
        Some(e) => parse_exponent(e)?,
        None => 0,
    };
    let (int, frac) = match mant.find('.') {
        Some(i) => (&mant[..i], &mant[i + 1..]),
        None => (mant, ""),
    };
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    Some((int, frac, exp))
}

fn parse_exponent(e: &str) -> Option<i64> {
    let (neg, digits) = match e.as_bytes().first()? {
        b'-' => (true, &e[1..]),
        b'+' => (false, &e[1..]),
        _ => (false, e),
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    // Saturate: anything this large is zero or infinity in every format.
    let v = digits.parse::<i64>().unwrap_or(1 << 40).min(1 << 40);
    Some(if neg { -v } else { v })
}

fn parse_hex_body(body: &str) -> Option<Parsed> {
    let (int, frac, exp) = split_mantissa_exponent(body, 'p')?;
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_hexdigit()) {
        return None;
    }
    let digits: String = format!("{int}{frac}");
    let m = BigUint::from_str_radix(&digits, 16).ok()?;
    Some(classify(&m, exp - 4 * frac.len() as i64))
}

fn classify(m: &BigUint, exp2: i64) -> Parsed {
    if m.is_zero() {
        return Parsed::Zero;
    }
    let top = m.bits() as i64 - 1 + exp2;
    if top > 2000 {
        return Parsed::Overflow;
    }
    if top < -2000 {
        return Parsed::Zero;
    }
    let (mantissa, exponent, sticky) = narrow_to_u128(m, exp2);
    Parsed::Value { mantissa, exponent: exponent as i32, sticky }
}

fn parse_decimal_body(body: &str) -> Option<Parsed> {
    let (int, frac, exp10) = split_mantissa_exponent(body, 'e')?;
    if !int.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int}{frac}");
    let digits = digits.trim_start_matches('0');
    if digits.is_empty() {
        return Some(Parsed::Zero);
    }
    let exp10 = exp10 - frac.len() as i64;
    let magnitude = digits.len() as i64 + exp10;
    if magnitude > 400 {
        return Some(Parsed::Overflow);
    }
    if magnitude < -400 {
        return Some(Parsed::Zero);
    }
    let d = BigUint::from_str_radix(digits, 10).ok()?;
    if exp10 >= 0 {
        let n = d * BigUint::from(10u32).pow(exp10 as u32);
        return Some(classify(&n, 0));
    }
    let den = BigUint::from(10u32).pow((-exp10) as u32);
    // Enough quotient bits that the rounding position is far above the tail.
    let k = (130 + den.bits() as i64 - d.bits() as i64).max(0) as usize;
    let num = d << k;
    let q = &num / &den;
    let exact = (&q * &den) == num;
    let (mantissa, exponent, sticky) = narrow_to_u128(&q, -(k as i64));
    Some(Parsed::Value { mantissa, exponent: exponent as i32, sticky: sticky || !exact })
}

/// `%a`-style hex text: `0x1.001366p+1`, `-0x1p-3`, `0x0p+0`, `inf`, `nan`.
pub fn format_hex<T: GivensFloat>(x: T) -> String {
    let sign = if x.is_sign_negative() { "-" } else { "" };
    if x.is_nan() {
        return "nan".into();
    }
    if !x.is_finite() {
        return format!("{sign}inf");
    }
    if x.is_zero() {
        return format!("{sign}0x0p+0");
    }
    let fmt = T::FORMAT;
    let (_, m, e) = x.decompose();
    // Normalize so the leading bit sits at position p - 1.
    let lead = 63 - m.leading_zeros() as i32;
    let frac_bits = fmt.fraction_bits() as i32;
    let shift = frac_bits - lead;
    let m = m << shift;
    let exp = e - shift + frac_bits;
    let fraction = m & fmt.fraction_mask();
    let nibbles = (frac_bits as u32).div_ceil(4);
    let padded = fraction << (nibbles * 4 - frac_bits as u32);
    let mut digits = format!("{:0width$x}", padded, width = nibbles as usize);
    while digits.ends_with('0') {
        digits.pop();
    }
    let exp_sign = if exp < 0 { '-' } else { '+' };
    if digits.is_empty() {
        format!("{sign}0x1p{exp_sign}{}", exp.abs())
    } else {
        format!("{sign}0x1.{digits}p{exp_sign}{}", exp.abs())
    }
}

/// Shortest decimal text that parses back to the same bits.
pub fn format_decimal<T: GivensFloat>(x: T) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    let wide = x.to_f64();
    if !x.is_finite() {
        return if wide < 0.0 { "-inf".into() } else { "inf".into() };
    }
    if x.is_zero() {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    // Find the fewest significant digits that round-trip in T, then let the
    // binary64 formatter present that decimal.
    for digits in 1..=17 {
        let candidate = format!("{:.*e}", digits - 1, wide);
        if let Ok(back) = parse_float::<T>(&candidate) {
            if back.to_bits() == x.to_bits() {
                let shortest: f64 = candidate.parse().expect("formatter output parses");
                return present(shortest);
            }
        }
    }
    present(wide)
}

fn present(v: f64) -> String {
    let a = v.abs();
    if (1e-5..1e16).contains(&a) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}
