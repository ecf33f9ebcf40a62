//! Extended-precision reference values.
//!
//! Inputs are converted to integers exactly (a common power-of-two scale
//! cancels in `c = f/r` and `s = g/r`), then
//!
//! * `c` and `s` are obtained as `floor(sqrt(floor(x^2 4^k / (f^2 + g^2))))`,
//! * `r` as `floor(sqrt((f^2 + g^2) 4^k))`,
//!
//! with `k` chosen so each result carries at least `working_bits`
//! significant bits, by default four times the target precision. A flag
//! records whether anything nonzero was truncated, and each quantity is
//! rounded once into the target format.
//!
//! This is a comparison against a much more precise computation, not a
//! proof of correct rounding.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;

use crate::dyadic::{narrow_to_u128, Dyadic};
use crate::float::GivensFloat;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("the rotation of (0, 0) is undefined")]
    ZeroInput,
    #[error("non-finite input")]
    NonFinite,
    #[error("NaN has no ulp distance")]
    Nan,
    #[error("reference p(t) needs 0 <= t <= 1")]
    OutOfDomain,
}

/// Reference `(c, s, r)` rounded once into `T`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReferenceTriple<T> {
    pub c: T,
    pub s: T,
    pub r: T,
}

/// Default working precision: four times the significand width.
pub fn default_working_bits<T: GivensFloat>() -> u32 {
    4 * T::FORMAT.precision
}

/// A truncated extended value `mantissa * 2^exponent (+ tail)`.
#[derive(Debug, Clone)]
struct Extended {
    mantissa: BigUint,
    exponent: i64,
    inexact: bool,
}

impl Extended {
    fn round<T: GivensFloat>(&self, negative: bool) -> T {
        let (m, e, narrowed) = narrow_to_u128(&self.mantissa, self.exponent);
        T::from_raw_parts(negative, m, e as i32, self.inexact || narrowed)
    }

    fn to_dyadic(&self) -> Dyadic {
        Dyadic::from_unsigned(false, self.mantissa.clone(), self.exponent)
    }
}

/// `floor(x * 2^k / sqrt(n))` with at least `bits` significant bits.
fn quotient_by_sqrt(x: &BigUint, n: &BigUint, bits: u32) -> Extended {
    let k = bits as i64 + (n.bits() as i64 + 1) / 2 - x.bits() as i64 + 2;
    let k = k.max(0) as usize;
    let num = (x * x) << (2 * k);
    let (m, rem) = num.div_rem(n);
    let q = m.sqrt();
    let inexact = !rem.is_zero() || &q * &q != m;
    Extended { mantissa: q, exponent: -(k as i64), inexact }
}

/// `floor(sqrt(n) * 2^k)` with at least `bits` significant bits.
fn scaled_sqrt(n: &BigUint, bits: u32) -> Extended {
    let k = (bits as i64 - n.bits() as i64 / 2 + 2).max(0) as usize;
    let scaled = n << (2 * k);
    let root = scaled.sqrt();
    let inexact = &root * &root != scaled;
    Extended { mantissa: root, exponent: -(k as i64), inexact }
}

/// Integer images `X, Y` of `|f|, |g|` with `|f| = X 2^e0`, `|g| = Y 2^e0`.
fn integer_images<T: GivensFloat>(f: T, g: T) -> (BigUint, BigUint, i64) {
    let (_, mf, ef) = f.decompose();
    let (_, mg, eg) = g.decompose();
    let e0 = ef.min(eg);
    let x = BigUint::from(mf) << (ef - e0) as usize;
    let y = BigUint::from(mg) << (eg - e0) as usize;
    (x, y, e0 as i64)
}

fn check_inputs<T: GivensFloat>(f: T, g: T) -> Result<(), OracleError> {
    if !f.is_finite() || !g.is_finite() {
        return Err(OracleError::NonFinite);
    }
    if f.is_zero() && g.is_zero() {
        return Err(OracleError::ZeroInput);
    }
    Ok(())
}

/// Reference rotation at the default working precision.
pub fn reference_givens<T: GivensFloat>(f: T, g: T) -> Result<ReferenceTriple<T>, OracleError> {
    reference_givens_with_bits(f, g, default_working_bits::<T>())
}

/// Reference rotation with an explicit working precision in bits.
pub fn reference_givens_with_bits<T: GivensFloat>(f: T, g: T, bits: u32) -> Result<ReferenceTriple<T>, OracleError> {
    check_inputs(f, g)?;
    // A zero partner makes c or s exactly +-1 and the other a signed zero.
    if g.is_zero() {
        return Ok(ReferenceTriple { c: T::ONE.copysign(f), s: g, r: f.abs() });
    }
    if f.is_zero() {
        return Ok(ReferenceTriple { c: f, s: T::ONE.copysign(g), r: g.abs() });
    }
    let (x, y, e0) = integer_images(f, g);
    let n = &x * &x + &y * &y;
    let c = quotient_by_sqrt(&x, &n, bits).round::<T>(f.is_sign_negative());
    let s = quotient_by_sqrt(&y, &n, bits).round::<T>(g.is_sign_negative());
    let mut r = scaled_sqrt(&n, bits);
    r.exponent += e0;
    Ok(ReferenceTriple { c, s, r: r.round::<T>(false) })
}

/// `r = sqrt(f^2 + g^2)` truncated to `bits` significant bits, unrounded.
pub fn reference_norm<T: GivensFloat>(f: T, g: T, bits: u32) -> Result<Dyadic, OracleError> {
    check_inputs(f, g)?;
    let (x, y, e0) = integer_images(f, g);
    let n = &x * &x + &y * &y;
    let mut r = scaled_sqrt(&n, bits);
    r.exponent += e0;
    Ok(r.to_dyadic())
}

/// `p(t) = 1 + 1/sqrt(1 + t^2)` for `0 <= t <= 1` at the default working precision.
pub fn reference_p<T: GivensFloat>(t: T) -> Result<Dyadic, OracleError> {
    reference_p_with_bits(t, default_working_bits::<T>().max(64))
}

pub fn reference_p_with_bits<T: GivensFloat>(t: T, bits: u32) -> Result<Dyadic, OracleError> {
    if t.is_nan() || t < T::ZERO || t > T::ONE {
        return Err(OracleError::OutOfDomain);
    }
    // t = m 2^e with e <= 0, so 1/sqrt(1 + t^2) = 2^L / sqrt(4^L + m^2), L = -e.
    let (_, m, e) = t.decompose();
    let (m, l) = if e >= 0 { (BigUint::from(m) << e as usize, 0usize) } else { (BigUint::from(m), (-e) as usize) };
    let scale = BigUint::from(1u8) << l;
    let n = (&scale * &scale) + &m * &m;
    let inv = quotient_by_sqrt(&scale, &n, bits);
    Ok(Dyadic::from_int(1) + inv.to_dyadic())
}

/// Position of `x` in the monotone enumeration of `T`'s values; both zeros share rank 0.
fn rank<T: GivensFloat>(x: T) -> i64 {
    let magnitude = (x.to_bits() & !T::FORMAT.sign_mask()) as i64;
    if x.is_sign_negative() {
        -magnitude
    } else {
        magnitude
    }
}

/// Number of representable steps between `x` and `x_ref`.
pub fn ulp_distance<T: GivensFloat>(x: T, x_ref: T) -> Result<u64, OracleError> {
    if x.is_nan() || x_ref.is_nan() {
        return Err(OracleError::Nan);
    }
    Ok(rank(x).abs_diff(rank(x_ref)))
}
