//! Construction of real Givens rotations.
//!
//! For `(f, g)` not both zero the rotation is
//!
//! ```text
//! [ c  s ] [ f ]   [ r ]      r = sqrt(f^2 + g^2),  c = f / r,  s = g / r
//! [-s  c ] [ g ] = [ 0 ]
//! ```
//!
//! with the sign convention `sign(c) = sign(f)` and `sign(s) = sign(g)`.
//!
//! [`givens`] is the classic square-root construction. [`sqrt_free_givens`]
//! replaces the reciprocal square root by a minimax seed and then repairs
//! the normality defect `1 - c^2 - s^2`, computed to high relative accuracy
//! with fused multiply-adds, using a second-order additive correction.

use serde::Serialize;

use crate::approx::ApproxSpec;
use crate::float::GivensFloat;
use crate::value::transfer_sign;

/// Cosine and sine of a plane rotation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rotation<T> {
    pub c: T,
    pub s: T,
}

/// Whether the optional early return for the degenerate input is compiled in.
///
/// The baseline uses it for `(0, 0)`; the square-root-free construction uses
/// it for any `g = 0`. Either way the returned pair is `(copysign(1, f), g)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BranchPolicy {
    pub optional_branch: bool,
}

impl BranchPolicy {
    pub const WITH_BRANCH: BranchPolicy = BranchPolicy { optional_branch: true };
    pub const WITHOUT_BRANCH: BranchPolicy = BranchPolicy { optional_branch: false };
}

impl Default for BranchPolicy {
    fn default() -> Self {
        BranchPolicy::WITH_BRANCH
    }
}

/// Which side of the construction ran.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// The optional early return.
    Special,
    /// `|f| >= |g|`: `t = g / f`, cosine leads.
    CosineLeads,
    /// `|f| < |g|`: `t = f / g`, sine leads.
    SineLeads,
}

/// Intermediates of one square-root-free construction.
///
/// On the [`Branch::Special`] path `t`, `err` and `d` are zero and `oneplus`
/// is one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotationTrace<T> {
    /// Smaller input over larger input, `|t| <= 1`.
    pub t: T,
    /// `p̂(|t|)`, the seed for `1 + |leading component|`.
    pub oneplus: T,
    /// Seed cosine and sine before correction.
    pub c_seed: T,
    pub s_seed: T,
    /// `1 - c_seed^2 - s_seed^2`.
    pub err: T,
    /// `err (1/2 + 3/8 err)`, the additive rescaling factor.
    pub d: T,
    pub branch: Branch,
    /// The final `d * x + x` step was done with a fused multiply-add.
    pub fused_correction: bool,
}

/// Square-root Givens construction.
///
/// ```
/// use givens::{givens, BranchPolicy};
/// let r = givens(3.0f64, 4.0, BranchPolicy::default());
/// assert_eq!(r.s, 0.8);
/// // c = s * t picks up one rounding on top of s
/// assert_eq!(r.c, 0.6000000000000001);
/// ```
#[inline]
pub fn givens<T: GivensFloat>(f: T, g: T, policy: BranchPolicy) -> Rotation<T> {
    if policy.optional_branch && g.is_zero() && f.is_zero() {
        return Rotation { c: transfer_sign(T::ONE, f), s: g };
    }
    if f.abs() >= g.abs() {
        let t = g / f;
        let c = transfer_sign(T::ONE / (T::ONE + t * t).sqrt(), f);
        Rotation { c, s: c * t }
    } else {
        let t = f / g;
        let s = transfer_sign(T::ONE / (T::ONE + t * t).sqrt(), g);
        Rotation { c: s * t, s }
    }
}

/// `a*b - c*d` to high relative accuracy (error below 1.5 ulp) using two
/// fused multiply-adds.
#[inline]
pub fn abminuscd<T: GivensFloat>(a: T, b: T, c: T, d: T) -> T {
    let tmp = -(c * d);
    a.mul_add(b, tmp) - c.mul_add(d, tmp)
}

/// Rescales `(a, b)` towards unit norm, assuming `|a| >= |b|` and that
/// `1 - |a|` and `1 + |a|` are exact.
///
/// The defect `x = (1 - |a|)(1 + |a|) - b^2` is applied through the
/// truncated series `1/sqrt(1 - x) ≈ 1 + x/2 + 3x^2/8` as an additive
/// correction.
#[inline]
pub fn renormalize<T: GivensFloat>(a: T, b: T) -> (T, T) {
    let m = a.abs();
    let x = abminuscd(T::ONE - m, T::ONE + m, b, b);
    let d = x * T::THREE_EIGHTHS.mul_add(x, T::HALF);
    (d.mul_add(a, a), d.mul_add(b, b))
}

/// Square-root-free Givens construction without the diagnostic trace.
#[inline]
pub fn sqrt_free_givens_fast<T: GivensFloat>(f: T, g: T, policy: BranchPolicy, spec: &ApproxSpec<T>) -> Rotation<T> {
    if policy.optional_branch && g.is_zero() {
        return Rotation { c: transfer_sign(T::ONE, f), s: g };
    }
    let (c, s, err) = if f.abs() >= g.abs() {
        let t = g / f;
        let oneplus = spec.eval(t.abs());
        let c = transfer_sign(oneplus - T::ONE, f);
        let s = c * t;
        let tmp = -(s * s);
        (c, s, oneplus.mul_add(T::TWO - oneplus, tmp) - s.mul_add(s, tmp))
    } else {
        let t = f / g;
        let oneplus = spec.eval(t.abs());
        let s = transfer_sign(oneplus - T::ONE, g);
        let c = s * t;
        let tmp = -(c * c);
        (c, s, oneplus.mul_add(T::TWO - oneplus, tmp) - c.mul_add(c, tmp))
    };
    let d = err * T::THREE_EIGHTHS.mul_add(err, T::HALF);
    // `1 + d > 0`, so the sign transfer only matters when a seed is a signed zero.
    Rotation { c: transfer_sign(d.mul_add(c, c), c), s: transfer_sign(d.mul_add(s, s), s) }
}

/// Square-root-free Givens construction with its intermediates.
///
/// ```
/// use givens::{sqrt_free_givens, ApproxSpec, BranchPolicy};
/// let spec = ApproxSpec::<f64>::default_spec();
/// let (rot, trace) = sqrt_free_givens(1.0f64, 1.0, BranchPolicy::default(), &spec);
/// assert!((rot.c - std::f64::consts::FRAC_1_SQRT_2).abs() <= f64::EPSILON);
/// assert!(trace.err.abs() < 1e-5);
/// ```
pub fn sqrt_free_givens<T: GivensFloat>(
    f: T,
    g: T,
    policy: BranchPolicy,
    spec: &ApproxSpec<T>,
) -> (Rotation<T>, RotationTrace<T>) {
    if policy.optional_branch && g.is_zero() {
        let rot = Rotation { c: transfer_sign(T::ONE, f), s: g };
        let trace = RotationTrace {
            t: T::ZERO,
            oneplus: T::ONE,
            c_seed: rot.c,
            s_seed: rot.s,
            err: T::ZERO,
            d: T::ZERO,
            branch: Branch::Special,
            fused_correction: true,
        };
        return (rot, trace);
    }
    let (branch, t, oneplus, c, s, err) = if f.abs() >= g.abs() {
        let t = g / f;
        let oneplus = spec.eval(t.abs());
        let c = transfer_sign(oneplus - T::ONE, f);
        let s = c * t;
        let tmp = -(s * s);
        (Branch::CosineLeads, t, oneplus, c, s, oneplus.mul_add(T::TWO - oneplus, tmp) - s.mul_add(s, tmp))
    } else {
        let t = f / g;
        let oneplus = spec.eval(t.abs());
        let s = transfer_sign(oneplus - T::ONE, g);
        let c = s * t;
        let tmp = -(c * c);
        (Branch::SineLeads, t, oneplus, c, s, oneplus.mul_add(T::TWO - oneplus, tmp) - c.mul_add(c, tmp))
    };
    let d = err * T::THREE_EIGHTHS.mul_add(err, T::HALF);
    let rot = Rotation { c: transfer_sign(d.mul_add(c, c), c), s: transfer_sign(d.mul_add(s, s), s) };
    let trace = RotationTrace { t, oneplus, c_seed: c, s_seed: s, err, d, branch, fused_correction: true };
    (rot, trace)
}
