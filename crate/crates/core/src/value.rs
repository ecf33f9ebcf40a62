//! Format-tagged values for code that picks the precision at run time.

use std::fmt;

use crate::f16::F16;
use crate::float::GivensFloat;
use crate::format::{pow2, FormatKind, PrecisionFormat};
use crate::text::{self, ParseFloatError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FpError {
    #[error("ulp is undefined for {0}: only finite, nonzero, normal-range values are accepted")]
    UlpUndefined(String),
    #[error("operands have different formats: {0} and {1}")]
    FormatMismatch(FormatKind, FormatKind),
}

/// A float in one of the three supported formats.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FloatValue {
    F16(F16),
    F32(f32),
    F64(f64),
}

/// Dispatches `$body` with `$x` bound to the concrete inner value.
#[macro_export]
macro_rules! with_float_value {
    ($value:expr, $x:ident => $body:expr) => {
        match $value {
            $crate::FloatValue::F16($x) => $body,
            $crate::FloatValue::F32($x) => $body,
            $crate::FloatValue::F64($x) => $body,
        }
    };
}

impl FloatValue {
    pub fn kind(&self) -> FormatKind {
        match self {
            FloatValue::F16(_) => FormatKind::Binary16,
            FloatValue::F32(_) => FormatKind::Binary32,
            FloatValue::F64(_) => FormatKind::Binary64,
        }
    }

    pub fn format(&self) -> PrecisionFormat {
        self.kind().descriptor()
    }

    pub fn from_float<T: GivensFloat>(x: T) -> FloatValue {
        FloatValue::from_bits(T::FORMAT.kind, x.to_bits())
    }

    pub fn from_bits(kind: FormatKind, bits: u64) -> FloatValue {
        match kind {
            FormatKind::Binary16 => FloatValue::F16(F16::from_bits(bits as u16)),
            FormatKind::Binary32 => FloatValue::F32(f32::from_bits(bits as u32)),
            FormatKind::Binary64 => FloatValue::F64(f64::from_bits(bits)),
        }
    }

    pub fn to_bits(&self) -> u64 {
        with_float_value!(*self, x => GivensFloat::to_bits(x))
    }

    /// Rounds a binary64 value into `kind`.
    pub fn from_f64(kind: FormatKind, x: f64) -> FloatValue {
        match kind {
            FormatKind::Binary16 => FloatValue::F16(F16::from_f64(x)),
            FormatKind::Binary32 => FloatValue::F32(x as f32),
            FormatKind::Binary64 => FloatValue::F64(x),
        }
    }

    pub fn to_f64(&self) -> f64 {
        with_float_value!(*self, x => GivensFloat::to_f64(x))
    }

    /// Parses decimal or hex text, rounding once into `kind`.
    pub fn parse(kind: FormatKind, s: &str) -> Result<FloatValue, ParseFloatError> {
        Ok(match kind {
            FormatKind::Binary16 => FloatValue::F16(text::parse_float(s)?),
            FormatKind::Binary32 => FloatValue::F32(text::parse_float(s)?),
            FormatKind::Binary64 => FloatValue::F64(text::parse_float(s)?),
        })
    }

    pub fn to_hex(&self) -> String {
        with_float_value!(*self, x => text::format_hex(x))
    }

    pub fn to_decimal(&self) -> String {
        with_float_value!(*self, x => text::format_decimal(x))
    }

    pub fn is_nan(&self) -> bool {
        with_float_value!(*self, x => GivensFloat::is_nan(x))
    }

    pub fn is_sign_negative(&self) -> bool {
        with_float_value!(*self, x => GivensFloat::is_sign_negative(x))
    }

    /// `ulp(x) = 2^(e - p + 1)` for `|x|` in `[2^e, 2^(e+1))`.
    pub fn ulp(&self) -> Result<f64, FpError> {
        with_float_value!(*self, x => ulp(x))
    }

    /// `|magnitude|` carrying the sign bit of `sign_source`.
    pub fn transfer_sign(magnitude: FloatValue, sign_source: FloatValue) -> Result<FloatValue, FpError> {
        match (magnitude, sign_source) {
            (FloatValue::F16(m), FloatValue::F16(s)) => Ok(FloatValue::F16(transfer_sign(m, s))),
            (FloatValue::F32(m), FloatValue::F32(s)) => Ok(FloatValue::F32(transfer_sign(m, s))),
            (FloatValue::F64(m), FloatValue::F64(s)) => Ok(FloatValue::F64(transfer_sign(m, s))),
            (m, s) => Err(FpError::FormatMismatch(m.kind(), s.kind())),
        }
    }

    /// `round(a * b + c)` with a single rounding.
    pub fn fused_mul_add(a: FloatValue, b: FloatValue, c: FloatValue) -> Result<FloatValue, FpError> {
        match (a, b, c) {
            (FloatValue::F16(a), FloatValue::F16(b), FloatValue::F16(c)) => Ok(FloatValue::F16(fused_mul_add(a, b, c))),
            (FloatValue::F32(a), FloatValue::F32(b), FloatValue::F32(c)) => Ok(FloatValue::F32(fused_mul_add(a, b, c))),
            (FloatValue::F64(a), FloatValue::F64(b), FloatValue::F64(c)) => Ok(FloatValue::F64(fused_mul_add(a, b, c))),
            (a, b, c) => {
                let other = if a.kind() != b.kind() { b.kind() } else { c.kind() };
                Err(FpError::FormatMismatch(a.kind(), other))
            }
        }
    }
}

impl fmt::Display for FloatValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal())
    }
}

/// `ulp(x)` as an exact binary64 value. Rejects NaN, infinities, zeros and
/// subnormals, where the binade definition does not apply.
pub fn ulp<T: GivensFloat>(x: T) -> Result<f64, FpError> {
    let fmt = T::FORMAT;
    let biased = ((x.to_bits() & fmt.exponent_mask()) >> fmt.fraction_bits()) as i32;
    if !x.is_finite() || biased == 0 {
        return Err(FpError::UlpUndefined(text::format_hex(x)));
    }
    let e = biased - fmt.bias();
    Ok(pow2(e - fmt.precision as i32 + 1))
}

/// `|magnitude|` with the sign bit of `sign_source`, including `-0.0` and NaN signs.
#[inline]
pub fn transfer_sign<T: GivensFloat>(magnitude: T, sign_source: T) -> T {
    magnitude.copysign(sign_source)
}

#[inline]
pub fn fused_mul_add<T: GivensFloat>(a: T, b: T, c: T) -> T {
    a.mul_add(b, c)
}
