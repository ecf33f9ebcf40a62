//! Exact dyadic rationals `m * 2^e` on top of `num-bigint`.
//!
//! Every finite binary float is a dyadic rational, and dyadics are closed
//! under addition, subtraction and multiplication, so residuals such as
//! `c^2 + s^2 - 1` or `ab - cd` can be evaluated with no rounding at all.

use std::cmp::Ordering;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::float::{round_to_bits, GivensFloat};

/// An exact value `mantissa * 2^exponent`, kept with an odd mantissa (or zero).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mantissa: BigInt,
    exponent: i64,
}

impl Dyadic {
    pub fn zero() -> Dyadic {
        Dyadic { mantissa: BigInt::zero(), exponent: 0 }
    }

    pub fn new(mantissa: BigInt, exponent: i64) -> Dyadic {
        let mut d = Dyadic { mantissa, exponent };
        d.normalize();
        d
    }

    pub fn from_unsigned(negative: bool, mantissa: BigUint, exponent: i64) -> Dyadic {
        let sign = if negative { Sign::Minus } else { Sign::Plus };
        Dyadic::new(BigInt::from_biguint(sign, mantissa), exponent)
    }

    pub fn from_int(v: i64) -> Dyadic {
        Dyadic::new(BigInt::from(v), 0)
    }

    /// Exact value of a finite float. Signed zeros both map to zero.
    ///
    /// Panics on NaN or infinity.
    pub fn from_float<T: GivensFloat>(x: T) -> Dyadic {
        assert!(x.is_finite(), "dyadic of a non-finite value");
        let (negative, m, e) = x.decompose();
        let m = BigInt::from(m);
        Dyadic::new(if negative { -m } else { m }, e as i64)
    }

    fn normalize(&mut self) {
        if self.mantissa.is_zero() {
            self.exponent = 0;
            return;
        }
        let tz = self.mantissa.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.mantissa >>= tz;
            self.exponent += tz as i64;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    pub fn abs(&self) -> Dyadic {
        Dyadic { mantissa: self.mantissa.abs(), exponent: self.exponent }
    }

    /// Exact division by two.
    pub fn half(&self) -> Dyadic {
        self.scale(-1)
    }

    /// Exact multiplication by `2^k`.
    pub fn scale(&self, k: i64) -> Dyadic {
        if self.is_zero() {
            return Dyadic::zero();
        }
        Dyadic { mantissa: self.mantissa.clone(), exponent: self.exponent + k }
    }

    /// `floor(log2 |self|)`; `None` for zero.
    pub fn floor_log2(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.mantissa.bits() as i64 - 1 + self.exponent)
        }
    }

    /// Rounds to the nearest value of `T`, ties to even.
    pub fn to_float<T: GivensFloat>(&self) -> T {
        let negative = self.is_negative();
        let magnitude = self.mantissa.magnitude();
        let (mantissa, exponent, sticky) = narrow_to_u128(magnitude, self.exponent);
        let exponent = exponent.clamp(i32::MIN as i64 / 2, i32::MAX as i64 / 2) as i32;
        T::from_bits(round_to_bits(&T::FORMAT, negative, mantissa, exponent, sticky))
    }

    /// Approximate ratio `self / other` as an `f64`; used for reporting
    /// normalized residuals, never for pass/fail decisions on bits.
    pub fn ratio_f64(&self, other: &Dyadic) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let a = self.to_float::<f64>();
        let b = other.to_float::<f64>();
        if a.is_finite() && b.is_finite() && a != 0.0 && b != 0.0 && (a / b).is_normal() {
            return a / b;
        }
        // Fall back to explicit exponent bookkeeping.
        let (ea, eb) = (self.floor_log2().unwrap(), other.floor_log2().unwrap());
        let sa = self.scale(-ea).to_float::<f64>();
        let sb = other.scale(-eb).to_float::<f64>();
        (sa / sb) * 2f64.powi((ea - eb).clamp(-2000, 2000) as i32)
    }
}

/// Truncates `magnitude * 2^exponent` to at most 120 significant bits,
/// reporting whether anything nonzero was dropped.
pub(crate) fn narrow_to_u128(magnitude: &BigUint, exponent: i64) -> (u128, i64, bool) {
    let bits = magnitude.bits();
    if bits <= 120 {
        return (magnitude.to_u128().unwrap(), exponent, false);
    }
    let drop = bits - 120;
    let sticky = magnitude.trailing_zeros().is_some_and(|tz| tz < drop);
    let top = (magnitude >> drop).to_u128().unwrap();
    (top, exponent + drop as i64, sticky)
}

fn align(a: &Dyadic, b: &Dyadic) -> (BigInt, BigInt, i64) {
    let e = a.exponent.min(b.exponent);
    let ma = &a.mantissa << (a.exponent - e) as usize;
    let mb = &b.mantissa << (b.exponent - e) as usize;
    (ma, mb, e)
}

impl Add for Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: Dyadic) -> Dyadic {
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        let (a, b, e) = align(&self, &rhs);
        Dyadic::new(a + b, e)
    }
}

impl Sub for Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: Dyadic) -> Dyadic {
        self + (-rhs)
    }
}

impl Mul for Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: Dyadic) -> Dyadic {
        Dyadic::new(self.mantissa * rhs.mantissa, self.exponent + rhs.exponent)
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic { mantissa: -self.mantissa, exponent: self.exponent }
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Dyadic) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Dyadic) -> Ordering {
        let (a, b, _) = align(self, other);
        a.cmp(&b)
    }
}

impl From<i64> for Dyadic {
    fn from(v: i64) -> Dyadic {
        Dyadic::from_int(v)
    }
}

impl One for Dyadic {
    fn one() -> Dyadic {
        Dyadic::from_int(1)
    }
}

impl Zero for Dyadic {
    fn zero() -> Dyadic {
        Dyadic::zero()
    }
    fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_round_trip() {
        for x in [0.0f64, -0.0, 1.0, -2.5, 1e-310, f64::MAX, 0.1] {
            let d = Dyadic::from_float(x);
            assert_eq!(d.to_float::<f64>(), x);
        }
    }

    #[test]
    fn exact_product_minus_one() {
        // (1 + 2^-27)^2 - 1 = 2^-26 + 2^-54 exactly.
        let x = Dyadic::from_float(1.0 + 2f64.powi(-27));
        let r = x.clone() * x - Dyadic::from_int(1);
        assert_eq!(r, Dyadic::from_float(2f64.powi(-26)) + Dyadic::from_float(2f64.powi(-54)));
        assert_eq!(r.floor_log2(), Some(-26));
    }

    #[test]
    fn rounding_uses_sticky_tail() {
        // 1 + 2^-53 + 2^-200 is just above the tie and must round up.
        let v = Dyadic::from_int(1) + Dyadic::from_float(2f64.powi(-53)) + Dyadic::from_float(2f64.powi(-200));
        assert_eq!(v.to_float::<f64>(), 1.0 + f64::EPSILON);
        let tie = Dyadic::from_int(1) + Dyadic::from_float(2f64.powi(-53));
        assert_eq!(tie.to_float::<f64>(), 1.0);
    }

    #[test]
    fn ordering() {
        let a = Dyadic::from_float(0.75f64);
        let b = Dyadic::from_float(0.625f64);
        assert!(a > b);
        assert!(-a.clone() < b);
        assert_eq!(a.half(), Dyadic::from_float(0.375f64));
    }

    #[test]
    fn ratio_handles_extreme_exponents() {
        let a = Dyadic::from_float(1e-300f64) * Dyadic::from_float(1e-300f64);
        let b = Dyadic::from_float(1e-300f64);
        let r = a.ratio_f64(&b);
        assert!((r / 1e-300 - 1.0).abs() < 1e-12);
    }
}
