//! The [`GivensFloat`] trait that every kernel in the crate is generic over,
//! together with the round-to-nearest-even primitive shared by the software
//! binary16 type, the text parsers, and the oracle.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::format::PrecisionFormat;

/// A binary IEEE-754 floating-point type with round-to-nearest-even arithmetic
/// and a correctly rounded fused multiply-add.
pub trait GivensFloat:
    Copy
    + PartialEq
    + PartialOrd
    + Debug
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    const FORMAT: PrecisionFormat;
    const ZERO: Self;
    const ONE: Self;
    const TWO: Self;
    const HALF: Self;
    const THREE_EIGHTHS: Self;

    fn from_bits(bits: u64) -> Self;
    fn to_bits(self) -> u64;

    /// Exact widening conversion.
    fn to_f64(self) -> f64;
    /// Round-to-nearest-even narrowing conversion.
    fn from_f64(x: f64) -> Self;

    fn abs(self) -> Self;
    fn sqrt(self) -> Self;
    /// `self * a + b` with a single rounding.
    fn mul_add(self, a: Self, b: Self) -> Self;
    /// `|self|` carrying the sign bit of `sign`.
    fn copysign(self, sign: Self) -> Self;
    fn is_nan(self) -> bool;
    fn is_finite(self) -> bool;
    fn is_sign_negative(self) -> bool;

    fn is_zero(self) -> bool {
        self.to_bits() & !Self::FORMAT.sign_mask() == 0
    }

    fn from_raw_parts(negative: bool, mantissa: u128, exponent: i32, sticky: bool) -> Self {
        Self::from_bits(round_to_bits(&Self::FORMAT, negative, mantissa, exponent, sticky))
    }

    /// Splits a finite value into `(negative, mantissa, exponent)` with
    /// `|x| = mantissa * 2^exponent`.
    fn decompose(self) -> (bool, u64, i32) {
        decompose_bits(&Self::FORMAT, self.to_bits())
    }
}

/// `(negative, mantissa, exponent)` for a finite bit pattern of `fmt`.
pub(crate) fn decompose_bits(fmt: &PrecisionFormat, bits: u64) -> (bool, u64, i32) {
    let negative = bits & fmt.sign_mask() != 0;
    let biased = ((bits & fmt.exponent_mask()) >> fmt.fraction_bits()) as i32;
    let fraction = bits & fmt.fraction_mask();
    if biased == 0 {
        (negative, fraction, fmt.min_quantum_exponent())
    } else {
        let mantissa = fraction | (1 << fmt.fraction_bits());
        (negative, mantissa, biased - fmt.bias() - fmt.fraction_bits() as i32)
    }
}

/// Rounds `(-1)^negative * (mantissa + tail) * 2^exponent` to the nearest
/// value of `fmt`, ties to even, and returns its bit pattern.
///
/// `sticky` records that `tail` lies strictly inside `(0, 1)`. When it is set
/// the rounding position must sit at least one bit above `exponent`, which
/// holds whenever `mantissa` carries `p + 1` or more significant bits.
pub fn round_to_bits(fmt: &PrecisionFormat, negative: bool, mantissa: u128, exponent: i32, sticky: bool) -> u64 {
    let sign = if negative { fmt.sign_mask() } else { 0 };
    let p = fmt.precision as i32;
    if mantissa == 0 {
        debug_assert!(!sticky || exponent < fmt.min_quantum_exponent());
        return sign;
    }
    let top = 127 - mantissa.leading_zeros() as i32 + exponent;
    let mut quantum = (top - (p - 1)).max(fmt.min_quantum_exponent());
    let shift = quantum as i64 - exponent as i64;

    let mut kept: u128 = if shift <= 0 {
        debug_assert!(!sticky, "sticky tail below a representable position");
        mantissa << (-shift) as u32
    } else if shift > 128 {
        // Below half the quantum.
        0
    } else {
        let shift = shift as u32;
        let (kept, rem) =
            if shift == 128 { (0, mantissa) } else { (mantissa >> shift, mantissa & ((1u128 << shift) - 1)) };
        let half = 1u128 << (shift - 1);
        let round_up = rem > half || (rem == half && (sticky || kept & 1 == 1));
        kept + round_up as u128
    };

    if kept == 1u128 << p {
        kept >>= 1;
        quantum += 1;
    }

    let hidden = 1u128 << (p - 1);
    if kept >= hidden {
        let e = quantum + p - 1;
        if e > fmt.emax {
            return sign | fmt.infinity_bits();
        }
        let biased = (e + fmt.bias()) as u64;
        sign | (biased << fmt.fraction_bits()) | (kept as u64 & fmt.fraction_mask())
    } else {
        sign | kept as u64
    }
}

impl GivensFloat for f64 {
    const FORMAT: PrecisionFormat = PrecisionFormat::BINARY64;
    const ZERO: Self = 0.0;
    const ONE: Self = 1.0;
    const TWO: Self = 2.0;
    const HALF: Self = 0.5;
    const THREE_EIGHTHS: Self = 0.375;

    #[inline]
    fn from_bits(bits: u64) -> Self {
        f64::from_bits(bits)
    }
    #[inline]
    fn to_bits(self) -> u64 {
        f64::to_bits(self)
    }
    #[inline]
    fn to_f64(self) -> f64 {
        self
    }
    #[inline]
    fn from_f64(x: f64) -> Self {
        x
    }
    #[inline]
    fn abs(self) -> Self {
        f64::abs(self)
    }
    #[inline]
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    #[inline]
    fn mul_add(self, a: Self, b: Self) -> Self {
        f64::mul_add(self, a, b)
    }
    #[inline]
    fn copysign(self, sign: Self) -> Self {
        f64::copysign(self, sign)
    }
    #[inline]
    fn is_nan(self) -> bool {
        f64::is_nan(self)
    }
    #[inline]
    fn is_finite(self) -> bool {
        f64::is_finite(self)
    }
    #[inline]
    fn is_sign_negative(self) -> bool {
        f64::is_sign_negative(self)
    }
}

impl GivensFloat for f32 {
    const FORMAT: PrecisionFormat = PrecisionFormat::BINARY32;
    const ZERO: Self = 0.0;
    const ONE: Self = 1.0;
    const TWO: Self = 2.0;
    const HALF: Self = 0.5;
    const THREE_EIGHTHS: Self = 0.375;

    #[inline]
    fn from_bits(bits: u64) -> Self {
        f32::from_bits(bits as u32)
    }
    #[inline]
    fn to_bits(self) -> u64 {
        f32::to_bits(self) as u64
    }
    #[inline]
    fn to_f64(self) -> f64 {
        self as f64
    }
    #[inline]
    fn from_f64(x: f64) -> Self {
        x as f32
    }
    #[inline]
    fn abs(self) -> Self {
        f32::abs(self)
    }
    #[inline]
    fn sqrt(self) -> Self {
        f32::sqrt(self)
    }
    #[inline]
    fn mul_add(self, a: Self, b: Self) -> Self {
        f32::mul_add(self, a, b)
    }
    #[inline]
    fn copysign(self, sign: Self) -> Self {
        f32::copysign(self, sign)
    }
    #[inline]
    fn is_nan(self) -> bool {
        f32::is_nan(self)
    }
    #[inline]
    fn is_finite(self) -> bool {
        f32::is_finite(self)
    }
    #[inline]
    fn is_sign_negative(self) -> bool {
        f32::is_sign_negative(self)
    }
}
