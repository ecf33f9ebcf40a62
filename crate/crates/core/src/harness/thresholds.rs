//! Reference error rates and the tolerance bands the harness is held to.

use serde::Serialize;

use super::{Algorithm, UlpErrorTable};
use crate::approx::ApproxKind;
use crate::format::FormatKind;

/// Ceiling on the share of trials three or more ulps away, in percent.
pub const ULP3PLUS_MAX_PCT: f64 = 0.005;

/// Published zero-, one- and two-ulp rates (percent) for a format and
/// algorithm. Cosine and sine share the same figures.
pub fn expected_rates(format: FormatKind, algo: Algorithm) -> [f64; 3] {
    match (format, algo) {
        (FormatKind::Binary64, Algorithm::Baseline) => [57.6, 41.3, 1.1],
        (FormatKind::Binary64, Algorithm::SqrtFree) => [82.6, 17.4, 0.01],
        (FormatKind::Binary32, Algorithm::Baseline) => [57.7, 41.3, 1.0],
        (FormatKind::Binary32, Algorithm::SqrtFree) => [82.6, 17.4, 0.01],
        (FormatKind::Binary16, Algorithm::Baseline) => [58.0, 41.2, 0.8],
        (FormatKind::Binary16, Algorithm::SqrtFree) => [82.0, 17.9, 0.01],
    }
}

/// Closed interval `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Band {
    pub lo: f64,
    pub hi: f64,
}

impl Band {
    pub fn around(center: f64, tol: f64) -> Band {
        Band { lo: center - tol, hi: center + tol }
    }

    pub fn at_most(hi: f64) -> Band {
        Band { lo: f64::NEG_INFINITY, hi }
    }

    pub fn contains(&self, v: f64) -> bool {
        self.lo <= v && v <= self.hi
    }
}

/// Accepted band for ulp bucket `bucket` (0..=3, 3 meaning "three or more").
pub fn rate_band(format: FormatKind, algo: Algorithm, bucket: usize) -> Band {
    if bucket >= 3 {
        return Band::at_most(ULP3PLUS_MAX_PCT);
    }
    let expected = expected_rates(format, algo)[bucket];
    match (format, algo, bucket) {
        (FormatKind::Binary64, Algorithm::SqrtFree, 2) => Band::at_most(0.05),
        (FormatKind::Binary64, Algorithm::SqrtFree, _) => Band::around(expected, 0.5),
        (FormatKind::Binary64, Algorithm::Baseline, 2) => Band::around(expected, 0.5),
        _ => Band::around(expected, 1.0),
    }
}

/// Observed max-error band of each seed approximation on its native format.
pub fn approx_error_band(kind: ApproxKind) -> Band {
    match kind {
        ApproxKind::Linear => Band { lo: 2.2e-2, hi: 2.4e-2 },
        ApproxKind::Cubic => Band { lo: 5.5e-4, hi: 6.5e-4 },
        ApproxKind::Rational => Band { lo: 5.6e-7, hi: 6.6e-7 },
    }
}

/// Accepted `sqrt_free / baseline` median latency ratio on FMA hardware.
pub const BENCH_RATIO_BAND: Band = Band { lo: 0.8, hi: 2.0 };

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RateCheck {
    pub algo: Algorithm,
    pub format: FormatKind,
    pub component: &'static str,
    pub bucket: usize,
    pub observed: f64,
    pub band: Band,
    pub pass: bool,
}

impl RateCheck {
    pub fn bucket_label(&self) -> &'static str {
        ["ulp0", "ulp1", "ulp2", "ulp3plus"][self.bucket]
    }
}

/// Every bucket of both components of `table` against its band.
pub fn check_table(table: &UlpErrorTable) -> Vec<RateCheck> {
    let mut out = Vec::with_capacity(8);
    for (component, counts) in [("cosine", &table.cosine), ("sine", &table.sine)] {
        for bucket in 0..4 {
            let observed = counts.pct(bucket);
            let band = rate_band(table.format, table.algo, bucket);
            out.push(RateCheck {
                algo: table.algo,
                format: table.format,
                component,
                bucket,
                observed,
                band,
                pass: band.contains(observed),
            });
        }
    }
    out
}
