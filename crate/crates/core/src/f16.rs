//! Software binary16.
//!
//! Values are stored as raw bit patterns. Addition, subtraction,
//! multiplication, division and square root are evaluated in binary64 and
//! rounded once to binary16: binary64 carries more than `2p + 2` bits for
//! `p = 11`, so the intermediate rounding never changes the final result.
//! The fused multiply-add is evaluated exactly in 128-bit integer arithmetic
//! and rounded once.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::float::{round_to_bits, GivensFloat};
use crate::format::{pow2, PrecisionFormat};

const FMT: PrecisionFormat = PrecisionFormat::BINARY16;

/// An IEEE-754 binary16 value with round-to-nearest-even arithmetic.
#[derive(Clone, Copy, Default)]
#[repr(transparent)]
pub struct F16(u16);

impl F16 {
    pub const ZERO: F16 = F16(0x0000);
    pub const NEG_ZERO: F16 = F16(0x8000);
    pub const ONE: F16 = F16(0x3c00);
    pub const INFINITY: F16 = F16(0x7c00);
    pub const NEG_INFINITY: F16 = F16(0xfc00);
    pub const NAN: F16 = F16(0x7e00);
    pub const MAX: F16 = F16(0x7bff);
    pub const MIN_POSITIVE: F16 = F16(0x0400);
    pub const EPSILON: F16 = F16(0x1400);

    pub const fn from_bits(bits: u16) -> F16 {
        F16(bits)
    }

    pub const fn to_bits(self) -> u16 {
        self.0
    }

    pub fn is_nan(self) -> bool {
        self.0 & 0x7c00 == 0x7c00 && self.0 & 0x03ff != 0
    }

    pub fn is_infinite(self) -> bool {
        self.0 & 0x7fff == 0x7c00
    }

    pub fn is_finite(self) -> bool {
        self.0 & 0x7c00 != 0x7c00
    }

    pub fn is_sign_negative(self) -> bool {
        self.0 & 0x8000 != 0
    }

    /// Exact conversion to binary64.
    pub fn to_f64(self) -> f64 {
        let negative = self.is_sign_negative();
        let magnitude = if self.is_nan() {
            f64::NAN
        } else if self.is_infinite() {
            f64::INFINITY
        } else {
            let (_, m, e) = crate::float::decompose_bits(&FMT, self.0 as u64);
            m as f64 * pow2(e)
        };
        if negative {
            -magnitude
        } else {
            magnitude
        }
    }

    /// Round-to-nearest-even conversion from binary64.
    pub fn from_f64(x: f64) -> F16 {
        let sign = if x.is_sign_negative() { 0x8000 } else { 0 };
        if x.is_nan() {
            return F16(sign | FMT.quiet_nan_bits() as u16);
        }
        if x.is_infinite() {
            return F16(sign | 0x7c00);
        }
        let (negative, m, e) = x.decompose();
        F16(round_to_bits(&FMT, negative, m as u128, e, false) as u16)
    }

    pub fn from_f32(x: f32) -> F16 {
        F16::from_f64(x as f64)
    }

    pub fn abs(self) -> F16 {
        F16(self.0 & 0x7fff)
    }

    pub fn sqrt(self) -> F16 {
        F16::from_f64(self.to_f64().sqrt())
    }

    pub fn copysign(self, sign: F16) -> F16 {
        F16((self.0 & 0x7fff) | (sign.0 & 0x8000))
    }

    /// `self * a + b` rounded once.
    pub fn mul_add(self, a: F16, b: F16) -> F16 {
        if !(self.is_finite() && a.is_finite() && b.is_finite()) {
            // Only NaN or infinity can come out of here, so no rounding is at stake.
            return F16::from_f64(self.to_f64().mul_add(a.to_f64(), b.to_f64()));
        }
        let (xn, xm, xe) = crate::float::decompose_bits(&FMT, self.0 as u64);
        let (yn, ym, ye) = crate::float::decompose_bits(&FMT, a.0 as u64);
        let (zn, zm, ze) = crate::float::decompose_bits(&FMT, b.0 as u64);

        let prod_neg = xn != yn;
        let prod_m = (xm * ym) as i128;
        let prod_e = xe + ye;
        let base = prod_e.min(ze);
        // |product| < 2^22 * 2^58 and |addend| < 2^11 * 2^53, both well inside i128.
        let prod = prod_m << (prod_e - base);
        let addend = (zm as i128) << (ze - base);
        let sum = if prod_neg { -prod } else { prod } + if zn { -addend } else { addend };

        if sum == 0 {
            // Exact zero: -0 only when both contributions are negative zeros.
            let negative = prod_m == 0 && zm == 0 && prod_neg && zn;
            return if negative { F16::NEG_ZERO } else { F16::ZERO };
        }
        F16(round_to_bits(&FMT, sum < 0, sum.unsigned_abs(), base, false) as u16)
    }

    /// Next representable value towards `-inf`.
    pub fn next_down(self) -> F16 {
        -(-self).next_up()
    }

    /// Next representable value towards `+inf`.
    pub fn next_up(self) -> F16 {
        if self.is_nan() || self.0 == 0x7c00 {
            return self;
        }
        match self.0 {
            0x8000 | 0x0000 => F16(0x0001),
            b if b & 0x8000 != 0 => F16(b - 1),
            b => F16(b + 1),
        }
    }
}

impl PartialEq for F16 {
    fn eq(&self, other: &F16) -> bool {
        if self.is_nan() || other.is_nan() {
            return false;
        }
        self.0 == other.0 || (self.0 | other.0) & 0x7fff == 0
    }
}

impl PartialOrd for F16 {
    fn partial_cmp(&self, other: &F16) -> Option<std::cmp::Ordering> {
        self.to_f64().partial_cmp(&other.to_f64())
    }
}

impl fmt::Debug for F16 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F16({:?})", self.to_f64())
    }
}

impl fmt::Display for F16 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::text::format_decimal(*self))
    }
}

impl Neg for F16 {
    type Output = F16;
    fn neg(self) -> F16 {
        F16(self.0 ^ 0x8000)
    }
}

macro_rules! binary_via_f64 {
    ($tr:ident, $method:ident, $op:tt) => {
        impl $tr for F16 {
            type Output = F16;
            #[inline]
            fn $method(self, rhs: F16) -> F16 {
                F16::from_f64(self.to_f64() $op rhs.to_f64())
            }
        }
    };
}

binary_via_f64!(Add, add, +);
binary_via_f64!(Sub, sub, -);
binary_via_f64!(Mul, mul, *);
binary_via_f64!(Div, div, /);

impl GivensFloat for F16 {
    const FORMAT: PrecisionFormat = FMT;
    const ZERO: Self = F16(0x0000);
    const ONE: Self = F16(0x3c00);
    const TWO: Self = F16(0x4000);
    const HALF: Self = F16(0x3800);
    const THREE_EIGHTHS: Self = F16(0x3600);

    fn from_bits(bits: u64) -> Self {
        F16(bits as u16)
    }
    fn to_bits(self) -> u64 {
        self.0 as u64
    }
    fn to_f64(self) -> f64 {
        F16::to_f64(self)
    }
    fn from_f64(x: f64) -> Self {
        F16::from_f64(x)
    }
    fn abs(self) -> Self {
        F16::abs(self)
    }
    fn sqrt(self) -> Self {
        F16::sqrt(self)
    }
    fn mul_add(self, a: Self, b: Self) -> Self {
        F16::mul_add(self, a, b)
    }
    fn copysign(self, sign: Self) -> Self {
        F16::copysign(self, sign)
    }
    fn is_nan(self) -> bool {
        F16::is_nan(self)
    }
    fn is_finite(self) -> bool {
        F16::is_finite(self)
    }
    fn is_sign_negative(self) -> bool {
        F16::is_sign_negative(self)
    }
}
