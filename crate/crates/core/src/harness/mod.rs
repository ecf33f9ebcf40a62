//! Statistical accuracy trials, residual sweeps and latency benchmarks.
//!
//! Trials are embarrassingly parallel. Trial `i` draws its inputs from its own
//! ChaCha8 stream (`stream = i`) under the run seed, and per-chunk tallies are
//! merged by integer addition, so results are bit-identical whether the
//! `parallel` feature is enabled or not.

mod accuracy;
mod bench;
pub mod report;
mod residual;
pub mod thresholds;

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Serialize, Serializer};

use crate::float::GivensFloat;
use crate::format::FormatKind;

pub use accuracy::{
    run_accuracy_comparison, run_accuracy_comparison_with, run_accuracy_trial, run_accuracy_trials, ComponentCounts,
    UlpErrorTable,
};
pub use bench::{hardware_fma, run_bench, run_bench_with, BenchEntry, BenchReport, MIN_BENCH_ITERS};
pub use residual::{residuals_for_inputs, run_residual_sweep, run_residual_sweeps, ResidualMaxima};

/// The two constructions under test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Baseline,
    SqrtFree,
}

impl Algorithm {
    pub const BOTH: [Algorithm; 2] = [Algorithm::Baseline, Algorithm::SqrtFree];

    pub fn id(self) -> &'static str {
        match self {
            Algorithm::Baseline => "baseline",
            Algorithm::SqrtFree => "sqrt_free",
        }
    }

    pub fn table_name(self) -> &'static str {
        match self {
            Algorithm::Baseline => "Givens",
            Algorithm::SqrtFree => "SqrtFreeGivens",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl Serialize for Algorithm {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.id())
    }
}

impl FromStr for Algorithm {
    type Err = HarnessError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "baseline" | "givens" => Ok(Algorithm::Baseline),
            "sqrt_free" | "sqrt-free" | "sqrtfree" => Ok(Algorithm::SqrtFree),
            other => Err(HarnessError::UnknownAlgorithm(other.to_owned())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HarnessError {
    #[error("trial count must be at least 1")]
    NoTrials,
    #[error("benchmark needs at least {min} timed samples, got {got}")]
    TooFewIterations { min: u64, got: u64 },
    #[error("no hardware support is benchmarked for {0}")]
    UnsupportedBenchFormat(FormatKind),
    #[error("unknown algorithm `{0}` (expected baseline or sqrt_free)")]
    UnknownAlgorithm(String),
}

/// How trial chunks are scheduled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    /// Rayon work-stealing over chunks; sequential when built without the
    /// `parallel` feature.
    Parallel,
    Sequential,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

const CHUNK: u64 = 2048;

/// Maps every chunk of `0..n` through `work` and merges the results.
pub(crate) fn map_chunks<A, W, M>(n: u64, exec: Execution, work: W, merge: M) -> A
where
    A: Send + Default,
    W: Fn(std::ops::Range<u64>) -> A + Sync + Send,
    M: Fn(A, A) -> A + Sync + Send,
{
    let chunks = n.div_ceil(CHUNK);
    let range = move |c: u64| c * CHUNK..((c + 1) * CHUNK).min(n);
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            (0..chunks).into_par_iter().map(|c| work(range(c))).reduce(A::default, &merge)
        }
        _ => (0..chunks).map(|c| work(range(c))).fold(A::default(), &merge),
    }
}

/// Inputs of trial `index` under `seed`: a pair of standard normal deviates
/// drawn in binary64 and rounded into `T`, redrawn while both round to zero.
/// Returns the pair and the number of redraws.
pub fn trial_inputs<T: GivensFloat>(seed: u64, index: u64) -> (T, T, u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let mut redraws = 0;
    loop {
        let f: f64 = StandardNormal.sample(&mut rng);
        let g: f64 = StandardNormal.sample(&mut rng);
        let (f, g) = (T::from_f64(f), T::from_f64(g));
        if !(f.is_zero() && g.is_zero()) {
            return (f, g, redraws);
        }
        redraws += 1;
    }
}
