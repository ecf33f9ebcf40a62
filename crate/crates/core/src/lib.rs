//! Real Givens rotations with and without a square root.
//!
//! [`givens`] is the textbook construction `r = sqrt(f^2 + g^2)`,
//! `c = f / r`, `s = g / r`. [`sqrt_free_givens`] replaces the square root and
//! division with a low-accuracy seed for `1/r` followed by one fused
//! multiply-add based renormalization step, which on average lands closer to
//! the correctly rounded result.
//!
//! Both are generic over [`GivensFloat`], implemented for `f32`, `f64` and the
//! software half-precision type [`F16`]. The [`oracle`] module computes exact
//! references and the [`harness`] module measures ulp error rates, residuals
//! and latency.

mod dyadic;
mod f16;
mod float;
mod format;
mod text;
mod value;

pub mod approx;
pub mod harness;
pub mod oracle;
pub mod rotations;

pub use approx::{p_hat, ApproxError, ApproxKind, ApproxSpec, ApproxSweep, CoefficientDump};
pub use dyadic::Dyadic;
pub use f16::F16;
pub use float::{round_to_bits, GivensFloat};
pub use format::{FormatKind, PrecisionFormat, UnknownFormat};
pub use oracle::{reference_givens, ulp_distance, OracleError, ReferenceTriple};
pub use rotations::{
    abminuscd, givens, renormalize, sqrt_free_givens, sqrt_free_givens_fast, Branch, BranchPolicy, Rotation,
    RotationTrace,
};
pub use text::{format_decimal, format_hex, parse_float, ParseFloatError};
pub use value::{fused_mul_add, transfer_sign, ulp, FloatValue, FpError};
