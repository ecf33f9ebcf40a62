use std::hint::black_box;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use super::{Algorithm, HarnessError};
use crate::approx::ApproxSpec;
use crate::float::GivensFloat;
use crate::format::FormatKind;
use crate::rotations::{givens, sqrt_free_givens_fast, BranchPolicy};

/// Fewest timed samples a benchmark accepts.
pub const MIN_BENCH_ITERS: u64 = 10_000;

/// Rotations per timed sample; amortizes the clock read.
const BATCH: usize = 32;
const WARMUP_SAMPLES: u64 = 1_000;
const INPUT_POOL: usize = 4096;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchEntry {
    pub algo: Algorithm,
    /// Median wall time of one rotation, in nanoseconds.
    pub median_ns: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchReport {
    pub format: FormatKind,
    pub iters: u64,
    pub batch: usize,
    pub entries: Vec<BenchEntry>,
    /// `sqrt_free / baseline` median latency.
    pub ratio: f64,
    pub hardware_fma: bool,
    pub warnings: Vec<String>,
}

impl BenchReport {
    pub fn entry(&self, algo: Algorithm) -> Option<&BenchEntry> {
        self.entries.iter().find(|e| e.algo == algo)
    }
}

/// Whether `mul_add` compiles to a fused instruction in this build.
pub fn hardware_fma() -> bool {
    cfg!(any(target_feature = "fma", target_arch = "aarch64"))
}

fn fma_warnings() -> Vec<String> {
    let mut warnings = Vec::new();
    if !hardware_fma() {
        #[cfg(any(target_arch = "x86", target_arch = "x86_64"))]
        {
            if std::arch::is_x86_feature_detected!("fma") {
                warnings.push(
                    "CPU supports FMA but this build does not target it; mul_add is a library call (build with RUSTFLAGS=\"-C target-feature=+fma\" or -C target-cpu=native)"
                        .to_owned(),
                );
                return warnings;
            }
        }
        warnings.push("no hardware FMA; mul_add is emulated in software and timings are not representative".to_owned());
    }
    warnings
}

fn time_batch<T: GivensFloat>(algo: Algorithm, inputs: &[(T, T)], spec: &ApproxSpec<T>) -> f64 {
    let start = Instant::now();
    match algo {
        Algorithm::Baseline => {
            for &(f, g) in inputs {
                black_box(givens(black_box(f), black_box(g), BranchPolicy::WITH_BRANCH));
            }
        }
        Algorithm::SqrtFree => {
            for &(f, g) in inputs {
                black_box(sqrt_free_givens_fast(black_box(f), black_box(g), BranchPolicy::WITH_BRANCH, spec));
            }
        }
    }
    start.elapsed().as_nanos() as f64 / inputs.len() as f64
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let m = v.len() / 2;
    if v.len().is_multiple_of(2) {
        (v[m - 1] + v[m]) / 2.0
    } else {
        v[m]
    }
}

/// Median per-rotation latency of both algorithms in `T` over `iters` timed
/// samples each. Samples of the two algorithms are interleaved so that clock
/// drift and frequency scaling affect both alike.
pub fn run_bench_with<T: GivensFloat>(iters: u64, seed: u64) -> Result<BenchReport, HarnessError> {
    if T::FORMAT.kind == FormatKind::Binary16 {
        return Err(HarnessError::UnsupportedBenchFormat(FormatKind::Binary16));
    }
    if iters < MIN_BENCH_ITERS {
        return Err(HarnessError::TooFewIterations { min: MIN_BENCH_ITERS, got: iters });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut inputs = Vec::with_capacity(INPUT_POOL);
    while inputs.len() < INPUT_POOL {
        let f: f64 = StandardNormal.sample(&mut rng);
        let g: f64 = StandardNormal.sample(&mut rng);
        let (f, g) = (T::from_f64(f), T::from_f64(g));
        if !(f.is_zero() && g.is_zero()) {
            inputs.push((f, g));
        }
    }
    let spec = ApproxSpec::<T>::default_spec();
    let batches = INPUT_POOL / BATCH;
    for i in 0..WARMUP_SAMPLES as usize {
        let batch = &inputs[(i % batches) * BATCH..][..BATCH];
        for algo in Algorithm::BOTH {
            time_batch(algo, batch, &spec);
        }
    }
    let mut samples = [Vec::with_capacity(iters as usize), Vec::with_capacity(iters as usize)];
    for i in 0..iters as usize {
        let batch = &inputs[(i % batches) * BATCH..][..BATCH];
        let order = if i % 2 == 0 { [0, 1] } else { [1, 0] };
        for k in order {
            samples[k].push(time_batch(Algorithm::BOTH[k], batch, &spec));
        }
    }
    let [base, sf] = samples.map(median);
    Ok(BenchReport {
        format: T::FORMAT.kind,
        iters,
        batch: BATCH,
        entries: vec![
            BenchEntry { algo: Algorithm::Baseline, median_ns: base },
            BenchEntry { algo: Algorithm::SqrtFree, median_ns: sf },
        ],
        ratio: sf / base,
        hardware_fma: hardware_fma(),
        warnings: fma_warnings(),
    })
}

/// Benchmark in a run-time-selected format. Binary16 has no native arithmetic
/// on common hardware and is refused.
pub fn run_bench(format: FormatKind, iters: u64) -> Result<BenchReport, HarnessError> {
    match format {
        FormatKind::Binary16 => Err(HarnessError::UnsupportedBenchFormat(format)),
        FormatKind::Binary32 => run_bench_with::<f32>(iters, 42),
        FormatKind::Binary64 => run_bench_with::<f64>(iters, 42),
    }
}
