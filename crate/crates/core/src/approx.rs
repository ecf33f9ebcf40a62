//! Minimax seeds `p̂(t) ≈ 1 + 1/sqrt(1 + t^2)` on `[0, 1]`.
//!
//! The seed is chosen so that `1 <= p̂(t) <= 4`. Under that constraint both
//! `p̂(t) - 1` and `2 - p̂(t)` are exact in the working format, which is what
//! lets the rotation kernel read off `1 - |c|` and `1 + |c|` without error.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::dyadic::Dyadic;
use crate::float::GivensFloat;
use crate::format::FormatKind;
use crate::oracle;
use crate::text::{format_hex, parse_float};

/// Shape of the approximation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ApproxKind {
    Linear,
    Cubic,
    /// Degree-2 numerator over a monic degree-3 denominator.
    Rational,
}

impl ApproxKind {
    pub const ALL: [ApproxKind; 3] = [ApproxKind::Linear, ApproxKind::Cubic, ApproxKind::Rational];

    /// Format the coefficients were rounded to.
    pub fn native_format(self) -> FormatKind {
        match self {
            ApproxKind::Linear => FormatKind::Binary16,
            ApproxKind::Cubic => FormatKind::Binary32,
            ApproxKind::Rational => FormatKind::Binary64,
        }
    }

    /// The seed used by default for a working format.
    pub fn default_for(kind: FormatKind) -> ApproxKind {
        match kind {
            FormatKind::Binary16 => ApproxKind::Linear,
            FormatKind::Binary32 => ApproxKind::Cubic,
            FormatKind::Binary64 => ApproxKind::Rational,
        }
    }

    /// Numerator coefficients `a0, a1, ...` as hex literals in the native format.
    pub fn numerator_hex(self) -> &'static [&'static str] {
        match self {
            ApproxKind::Linear => &["0x1.03p+1", "-0x1.2cp-2"],
            ApproxKind::Cubic => &["0x1.001366p+1", "-0x1.806b0ep-8", "-0x1.11dap-1", "0x1.fb92eep-3"],
            ApproxKind::Rational => &["0x1.599dbed88714dp+5", "0x1.d137760caabecp+2", "0x1.7fea74590a9b9p+4"],
        }
    }

    /// Denominator coefficients (rational seed only).
    pub fn denominator_hex(self) -> &'static [&'static str] {
        match self {
            ApproxKind::Rational => &["0x1.599dbba7931b4p+4", "0x1.d14bcc87011f8p+1", "0x1.1628a34f936ebp+4", "0x1p+0"],
            _ => &[],
        }
    }

    /// Published decimal forms, kept for documentation and cross-checks only.
    pub fn numerator_decimal(self) -> &'static [&'static str] {
        match self {
            ApproxKind::Linear => &["2.023186362360453e+00", "-2.928932188134525e-01"],
            ApproxKind::Cubic => {
                &["2.000592060976269e+00", "-5.865756094031699e-03", "-5.348663062070796e-01", "2.478388434876587e-01"]
            }
            ApproxKind::Rational => &["4.320202416574703e+01", "7.269010078783122e+00", "2.399473986417590e+01"],
        }
    }

    pub fn denominator_decimal(self) -> &'static [&'static str] {
        match self {
            ApproxKind::Rational => &["2.160100903948633e+01", "3.635125699920760e+00", "1.738492137035693e+01", "1"],
            _ => &[],
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            ApproxKind::Linear => "linear",
            ApproxKind::Cubic => "cubic",
            ApproxKind::Rational => "rational",
        }
    }
}

impl fmt::Display for ApproxKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for ApproxKind {
    type Err = ApproxError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "linear" => Ok(ApproxKind::Linear),
            "cubic" => Ok(ApproxKind::Cubic),
            "rational" => Ok(ApproxKind::Rational),
            other => Err(ApproxError::UnknownKind(other.to_owned())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ApproxError {
    #[error("{kind} coefficient {literal} is not exactly representable in {format}")]
    NotRepresentable { kind: ApproxKind, literal: &'static str, format: FormatKind },
    #[error("p̂ is only defined for 0 <= t <= 1, got {0}")]
    OutOfDomain(String),
    #[error("grid needs at least two points, got {0}")]
    GridTooSmall(usize),
    #[error("unknown approximation `{0}`")]
    UnknownKind(String),
}

/// A seed approximation with its coefficients held in the working format `T`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApproxSpec<T> {
    kind: ApproxKind,
    num: [T; 4],
    den: [T; 4],
}

impl<T: GivensFloat> ApproxSpec<T> {
    /// Loads `kind` into `T`. Succeeds when every coefficient converts exactly,
    /// i.e. in the native format or any wider one.
    pub fn new(kind: ApproxKind) -> Result<Self, ApproxError> {
        let load = |lits: &'static [&'static str]| -> Result<[T; 4], ApproxError> {
            let mut out = [T::ZERO; 4];
            for (slot, &literal) in out.iter_mut().zip(lits) {
                let native = parse_native(kind, literal);
                let v: T = parse_float(literal).expect("embedded coefficient parses");
                if Dyadic::from_float(v) != native {
                    return Err(ApproxError::NotRepresentable { kind, literal, format: T::FORMAT.kind });
                }
                *slot = v;
            }
            Ok(out)
        };
        Ok(ApproxSpec { kind, num: load(kind.numerator_hex())?, den: load(kind.denominator_hex())? })
    }

    /// The default seed for `T`: linear for binary16, cubic for binary32,
    /// rational for binary64.
    pub fn default_spec() -> Self {
        Self::new(ApproxKind::default_for(T::FORMAT.kind)).expect("default seed is native to its format")
    }

    pub fn kind(&self) -> ApproxKind {
        self.kind
    }

    pub fn numerator(&self) -> &[T] {
        &self.num[..self.kind.numerator_hex().len()]
    }

    pub fn denominator(&self) -> &[T] {
        &self.den[..self.kind.denominator_hex().len()]
    }

    /// `p̂(t)` by Horner's rule with a fused multiply-add per step. The rational
    /// form does one final division.
    ///
    /// `t` must lie in `[0, 1]`; see [`ApproxSpec::checked_eval`].
    #[inline]
    pub fn eval(&self, t: T) -> T {
        debug_assert!(t.is_nan() || (t >= T::ZERO && t <= T::ONE), "p̂ evaluated outside [0, 1]");
        let a = &self.num;
        match self.kind {
            ApproxKind::Linear => a[1].mul_add(t, a[0]),
            ApproxKind::Cubic => a[3].mul_add(t, a[2]).mul_add(t, a[1]).mul_add(t, a[0]),
            ApproxKind::Rational => {
                let b = &self.den;
                let p = a[2].mul_add(t, a[1]).mul_add(t, a[0]);
                let q = b[3].mul_add(t, b[2]).mul_add(t, b[1]).mul_add(t, b[0]);
                p / q
            }
        }
    }

    pub fn checked_eval(&self, t: T) -> Result<T, ApproxError> {
        if t.is_nan() || t < T::ZERO || t > T::ONE {
            return Err(ApproxError::OutOfDomain(format_hex(t)));
        }
        Ok(self.eval(t))
    }

    pub fn coefficient_dump(&self) -> CoefficientDump {
        CoefficientDump {
            kind: self.kind,
            format: T::FORMAT.kind,
            numerator: self.numerator().iter().map(|&v| format_hex(v)).collect(),
            denominator: self.denominator().iter().map(|&v| format_hex(v)).collect(),
        }
    }
}

fn parse_native(kind: ApproxKind, literal: &str) -> Dyadic {
    match kind.native_format() {
        FormatKind::Binary16 => Dyadic::from_float(parse_float::<crate::F16>(literal).unwrap()),
        FormatKind::Binary32 => Dyadic::from_float(parse_float::<f32>(literal).unwrap()),
        FormatKind::Binary64 => Dyadic::from_float(parse_float::<f64>(literal).unwrap()),
    }
}

/// `p̂(t)`; free-function form of [`ApproxSpec::eval`].
#[inline]
pub fn p_hat<T: GivensFloat>(spec: &ApproxSpec<T>, t_abs: T) -> T {
    spec.eval(t_abs)
}

/// Coefficients re-rendered as hex from the loaded values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoefficientDump {
    pub kind: ApproxKind,
    pub format: FormatKind,
    pub numerator: Vec<String>,
    pub denominator: Vec<String>,
}

/// Result of sweeping `p̂` over an equispaced grid of `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ApproxSweep {
    pub kind: ApproxKind,
    pub format: FormatKind,
    pub grid_size: usize,
    pub max_abs_error: f64,
    /// Grid point attaining the maximum error.
    pub argmax: f64,
    /// Smallest and largest value of `p̂` seen on the grid.
    pub min_value: f64,
    pub max_value: f64,
}

/// Sweeps `p̂` against the extended-precision `p(t)` on `grid_size` points
/// `t_i = i / (grid_size - 1)`, each rounded into `T` before evaluation.
pub fn sweep<T: GivensFloat>(spec: &ApproxSpec<T>, grid_size: usize) -> Result<ApproxSweep, ApproxError> {
    if grid_size < 2 {
        return Err(ApproxError::GridTooSmall(grid_size));
    }
    let mut out = ApproxSweep {
        kind: spec.kind,
        format: T::FORMAT.kind,
        grid_size,
        max_abs_error: 0.0,
        argmax: 0.0,
        min_value: f64::INFINITY,
        max_value: f64::NEG_INFINITY,
    };
    let last = (grid_size - 1) as f64;
    for i in 0..grid_size {
        let t = T::from_f64(i as f64 / last);
        let v = spec.eval(t);
        let reference = oracle::reference_p(t).expect("grid lies in [0, 1]");
        let err = (Dyadic::from_float(v) - reference).abs().to_float::<f64>();
        if err > out.max_abs_error {
            out.max_abs_error = err;
            out.argmax = t.to_f64();
        }
        out.min_value = out.min_value.min(v.to_f64());
        out.max_value = out.max_value.max(v.to_f64());
    }
    Ok(out)
}

/// Maximum `|p̂(t) - p(t)|` over the grid.
pub fn max_abs_error<T: GivensFloat>(spec: &ApproxSpec<T>, grid_size: usize) -> Result<f64, ApproxError> {
    Ok(sweep(spec, grid_size)?.max_abs_error)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::F16;

    #[test]
    fn hex_and_decimal_tables_agree_after_rounding() {
        fn check<T: GivensFloat>(kind: ApproxKind) {
            let spec = ApproxSpec::<T>::new(kind).unwrap();
            let lists =
                [(spec.numerator(), kind.numerator_decimal()), (spec.denominator(), kind.denominator_decimal())];
            for (values, decimals) in lists {
                for (&v, dec) in values.iter().zip(decimals) {
                    let from_dec: T = parse_float(dec).unwrap();
                    assert_eq!(v.to_bits(), from_dec.to_bits(), "{kind} {dec}");
                }
            }
        }
        check::<F16>(ApproxKind::Linear);
        check::<f32>(ApproxKind::Cubic);
        check::<f64>(ApproxKind::Rational);
    }

    #[test]
    fn dump_reproduces_literals() {
        fn check<T: GivensFloat>(kind: ApproxKind) {
            let dump = ApproxSpec::<T>::new(kind).unwrap().coefficient_dump();
            assert_eq!(dump.numerator, kind.numerator_hex());
            assert_eq!(dump.denominator, kind.denominator_hex());
        }
        check::<F16>(ApproxKind::Linear);
        check::<f32>(ApproxKind::Cubic);
        check::<f64>(ApproxKind::Rational);
    }

    #[test]
    fn frozen_bit_patterns() {
        let lin = ApproxSpec::<F16>::new(ApproxKind::Linear).unwrap();
        assert_eq!(lin.numerator().iter().map(|v| v.to_bits()).collect::<Vec<_>>(), [0x400c, 0xb4b0]);
        let cub = ApproxSpec::<f32>::new(ApproxKind::Cubic).unwrap();
        assert_eq!(cub.numerator()[0].to_bits(), 0x4000_09b3);
    }

    #[test]
    fn widening_is_allowed_narrowing_is_not() {
        assert!(ApproxSpec::<f64>::new(ApproxKind::Linear).is_ok());
        assert!(ApproxSpec::<f64>::new(ApproxKind::Cubic).is_ok());
        assert!(ApproxSpec::<f32>::new(ApproxKind::Linear).is_ok());
        assert!(matches!(ApproxSpec::<f32>::new(ApproxKind::Rational), Err(ApproxError::NotRepresentable { .. })));
        assert!(ApproxSpec::<F16>::new(ApproxKind::Cubic).is_err());
    }

    #[test]
    fn endpoint_values() {
        let cub = ApproxSpec::<f32>::default_spec();
        assert_eq!(cub.eval(0.0).to_bits(), parse_float::<f32>("0x1.001366p+1").unwrap().to_bits());

        let lin = ApproxSpec::<F16>::default_spec();
        let a0: F16 = parse_float("0x1.03p+1").unwrap();
        let a1: F16 = parse_float("-0x1.2cp-2").unwrap();
        assert_eq!(lin.eval(F16::ONE).to_bits(), (a0 + a1).to_bits());

        let rat = ApproxSpec::<f64>::default_spec();
        let p0: f64 = parse_float("0x1.599dbed88714dp+5").unwrap();
        let q0: f64 = parse_float("0x1.599dbba7931b4p+4").unwrap();
        assert_eq!(rat.eval(0.0), p0 / q0);
        assert!((rat.eval(0.0) - 2.0).abs() < 1e-6);
    }

    #[test]
    fn checked_eval_rejects_outside_domain() {
        let spec = ApproxSpec::<f64>::default_spec();
        assert!(spec.checked_eval(-0.5).is_err());
        assert!(spec.checked_eval(1.000001).is_err());
        assert!(spec.checked_eval(f64::NAN).is_err());
        assert!(spec.checked_eval(-0.0).is_ok());
        assert!(spec.checked_eval(1.0).is_ok());
    }

    #[test]
    fn grid_must_have_two_points() {
        let spec = ApproxSpec::<f32>::default_spec();
        assert_eq!(max_abs_error(&spec, 1), Err(ApproxError::GridTooSmall(1)));
        assert!(max_abs_error(&spec, 2).is_ok());
    }
}
