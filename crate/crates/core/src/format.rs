//! Binary IEEE-754 format descriptors.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// The three binary interchange formats the crate works in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FormatKind {
    #[serde(rename = "f16", alias = "binary16")]
    Binary16,
    #[serde(rename = "f32", alias = "binary32")]
    Binary32,
    #[serde(rename = "f64", alias = "binary64")]
    Binary64,
}

impl FormatKind {
    pub const ALL: [FormatKind; 3] = [FormatKind::Binary16, FormatKind::Binary32, FormatKind::Binary64];

    pub fn descriptor(self) -> PrecisionFormat {
        match self {
            FormatKind::Binary16 => PrecisionFormat::BINARY16,
            FormatKind::Binary32 => PrecisionFormat::BINARY32,
            FormatKind::Binary64 => PrecisionFormat::BINARY64,
        }
    }

    /// Short flag spelling (`f16`, `f32`, `f64`).
    pub fn short_name(self) -> &'static str {
        match self {
            FormatKind::Binary16 => "f16",
            FormatKind::Binary32 => "f32",
            FormatKind::Binary64 => "f64",
        }
    }

    /// Display name in the style of the published tables (`Float64`).
    pub fn table_name(self) -> &'static str {
        match self {
            FormatKind::Binary16 => "Float16",
            FormatKind::Binary32 => "Float32",
            FormatKind::Binary64 => "Float64",
        }
    }
}

impl fmt::Display for FormatKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown format `{0}` (expected f16, f32 or f64)")]
pub struct UnknownFormat(pub String);

impl FromStr for FormatKind {
    type Err = UnknownFormat;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "f16" | "binary16" | "float16" | "half" => Ok(FormatKind::Binary16),
            "f32" | "binary32" | "float32" | "single" => Ok(FormatKind::Binary32),
            "f64" | "binary64" | "float64" | "double" => Ok(FormatKind::Binary64),
            _ => Err(UnknownFormat(s.to_owned())),
        }
    }
}

/// Parameters of a binary floating-point format.
///
/// `precision` counts the implicit leading bit, so binary64 has `precision = 53`.
/// The unit roundoff is `u = 2^-precision`, which is half of `ulp(1) = 2^(1-precision)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrecisionFormat {
    pub kind: FormatKind,
    pub name: &'static str,
    pub precision: u32,
    pub emin: i32,
    pub emax: i32,
    pub storage_bits: u32,
}

impl PrecisionFormat {
    pub const BINARY16: PrecisionFormat = PrecisionFormat {
        kind: FormatKind::Binary16,
        name: "binary16",
        precision: 11,
        emin: -14,
        emax: 15,
        storage_bits: 16,
    };
    pub const BINARY32: PrecisionFormat = PrecisionFormat {
        kind: FormatKind::Binary32,
        name: "binary32",
        precision: 24,
        emin: -126,
        emax: 127,
        storage_bits: 32,
    };
    pub const BINARY64: PrecisionFormat = PrecisionFormat {
        kind: FormatKind::Binary64,
        name: "binary64",
        precision: 53,
        emin: -1022,
        emax: 1023,
        storage_bits: 64,
    };

    /// Exponent of the unit roundoff: `u = 2^unit_roundoff_exponent()`.
    pub const fn unit_roundoff_exponent(&self) -> i32 {
        -(self.precision as i32)
    }

    /// The unit roundoff `2^-p`; exact in binary64 for every supported format.
    pub fn unit_roundoff(&self) -> f64 {
        pow2(self.unit_roundoff_exponent())
    }

    /// `ulp(1) = 2^(1-p)`.
    pub fn ulp_of_one(&self) -> f64 {
        pow2(1 - self.precision as i32)
    }

    pub const fn fraction_bits(&self) -> u32 {
        self.precision - 1
    }

    pub const fn exponent_bits(&self) -> u32 {
        self.storage_bits - self.precision
    }

    pub const fn bias(&self) -> i32 {
        self.emax
    }

    pub const fn sign_mask(&self) -> u64 {
        1 << (self.storage_bits - 1)
    }

    pub const fn fraction_mask(&self) -> u64 {
        (1 << self.fraction_bits()) - 1
    }

    pub const fn exponent_mask(&self) -> u64 {
        ((1 << self.exponent_bits()) - 1) << self.fraction_bits()
    }

    /// Bit pattern of `+inf`.
    pub const fn infinity_bits(&self) -> u64 {
        self.exponent_mask()
    }

    /// Bit pattern of the default quiet NaN.
    pub const fn quiet_nan_bits(&self) -> u64 {
        self.exponent_mask() | (1 << (self.fraction_bits() - 1))
    }

    /// Exponent of the smallest subnormal quantum, `emin - (p - 1)`.
    pub const fn min_quantum_exponent(&self) -> i32 {
        self.emin - (self.precision as i32 - 1)
    }
}

/// `2^e` as an `f64`; exact for `-1074 <= e <= 1023`.
pub(crate) fn pow2(e: i32) -> f64 {
    if e >= -1022 {
        f64::from_bits(((e + 1023) as u64) << 52)
    } else {
        f64::from_bits(1u64 << (e + 1074))
    }
}
