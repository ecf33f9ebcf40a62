use serde::Serialize;

use super::{map_chunks, trial_inputs, Algorithm, Execution, HarnessError};
use crate::approx::ApproxSpec;
use crate::float::GivensFloat;
use crate::format::FormatKind;
use crate::oracle::{reference_givens, ulp_distance};
use crate::rotations::{givens, sqrt_free_givens_fast, BranchPolicy, Rotation};
use crate::F16;

/// Counts of trials at 0, 1, 2 and at least 3 ulps from the reference.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ComponentCounts {
    pub counts: [u64; 4],
}

impl ComponentCounts {
    fn record(&mut self, distance: Option<u64>) {
        let bucket = distance.map_or(3, |d| d.min(3) as usize);
        self.counts[bucket] += 1;
    }

    fn merge(&mut self, other: &ComponentCounts) {
        for (a, b) in self.counts.iter_mut().zip(other.counts) {
            *a += b;
        }
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Percentage of trials in `bucket` (0, 1, 2, or 3 for "three or more").
    pub fn pct(&self, bucket: usize) -> f64 {
        let total = self.total();
        if total == 0 {
            0.0
        } else {
            100.0 * self.counts[bucket] as f64 / total as f64
        }
    }
}

/// One row of the error-rate table: a format, an algorithm, and the ulp
/// histogram of each output component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UlpErrorTable {
    pub algo: Algorithm,
    pub format: FormatKind,
    pub n: u64,
    pub seed: u64,
    /// Draws discarded because both inputs rounded to zero.
    pub redraws: u64,
    pub cosine: ComponentCounts,
    pub sine: ComponentCounts,
}

#[derive(Serialize)]
pub(crate) struct ComponentRow<'a> {
    pub algo: &'a str,
    pub format: &'a str,
    pub component: &'a str,
    pub ulp0_pct: f64,
    pub ulp1_pct: f64,
    pub ulp2_pct: f64,
    pub ulp3plus_pct: f64,
    pub n: u64,
    pub seed: u64,
    pub ulp0: u64,
    pub ulp1: u64,
    pub ulp2: u64,
    pub ulp3plus: u64,
}

impl UlpErrorTable {
    pub fn component(&self, name: &str) -> Option<&ComponentCounts> {
        match name {
            "cosine" => Some(&self.cosine),
            "sine" => Some(&self.sine),
            _ => None,
        }
    }

    pub(crate) fn rows(&self) -> Vec<ComponentRow<'_>> {
        [("cosine", &self.cosine), ("sine", &self.sine)]
            .into_iter()
            .map(|(component, c)| ComponentRow {
                algo: self.algo.id(),
                format: self.format.short_name(),
                component,
                ulp0_pct: c.pct(0),
                ulp1_pct: c.pct(1),
                ulp2_pct: c.pct(2),
                ulp3plus_pct: c.pct(3),
                n: self.n,
                seed: self.seed,
                ulp0: c.counts[0],
                ulp1: c.counts[1],
                ulp2: c.counts[2],
                ulp3plus: c.counts[3],
            })
            .collect()
    }
}

impl Serialize for UlpErrorTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("UlpErrorTable", 6)?;
        st.serialize_field("algo", &self.algo)?;
        st.serialize_field("format", self.format.short_name())?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("seed", &self.seed)?;
        st.serialize_field("redraws", &self.redraws)?;
        st.serialize_field("components", &self.rows())?;
        st.end()
    }
}

#[derive(Default)]
struct Tally {
    per_algo: Vec<(ComponentCounts, ComponentCounts)>,
    redraws: u64,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        if self.per_algo.is_empty() {
            return other;
        }
        for (mine, theirs) in self.per_algo.iter_mut().zip(&other.per_algo) {
            mine.0.merge(&theirs.0);
            mine.1.merge(&theirs.1);
        }
        self.redraws += other.redraws;
        self
    }
}

fn evaluate<T: GivensFloat>(algo: Algorithm, f: T, g: T, spec: &ApproxSpec<T>) -> Rotation<T> {
    match algo {
        Algorithm::Baseline => givens(f, g, BranchPolicy::WITH_BRANCH),
        Algorithm::SqrtFree => sqrt_free_givens_fast(f, g, BranchPolicy::WITH_BRANCH, spec),
    }
}

/// Runs `n` trials in `T`, scoring every algorithm in `algos` against one
/// shared oracle evaluation per trial.
pub fn run_accuracy_trials<T: GivensFloat>(
    n: u64,
    algos: &[Algorithm],
    seed: u64,
    exec: Execution,
) -> Result<Vec<UlpErrorTable>, HarnessError> {
    if n == 0 {
        return Err(HarnessError::NoTrials);
    }
    let spec = ApproxSpec::<T>::default_spec();
    let work = |range: std::ops::Range<u64>| {
        let mut tally = Tally { per_algo: vec![Default::default(); algos.len()], redraws: 0 };
        for i in range {
            let (f, g, redraws) = trial_inputs::<T>(seed, i);
            tally.redraws += redraws;
            let reference = reference_givens(f, g).expect("trial inputs are finite and not both zero");
            for (slot, &algo) in tally.per_algo.iter_mut().zip(algos) {
                let rot = evaluate(algo, f, g, &spec);
                slot.0.record(ulp_distance(rot.c, reference.c).ok());
                slot.1.record(ulp_distance(rot.s, reference.s).ok());
            }
        }
        tally
    };
    let tally = map_chunks(n, exec, work, Tally::merge);
    Ok(algos
        .iter()
        .zip(tally.per_algo)
        .map(|(&algo, (cosine, sine))| UlpErrorTable {
            algo,
            format: T::FORMAT.kind,
            n,
            seed,
            redraws: tally.redraws,
            cosine,
            sine,
        })
        .collect())
}

/// Error-rate table for one algorithm in a run-time-selected format.
pub fn run_accuracy_trial(
    n: u64,
    format: FormatKind,
    algo: Algorithm,
    seed: u64,
) -> Result<UlpErrorTable, HarnessError> {
    Ok(run_accuracy_comparison_with(n, format, &[algo], seed, Execution::default())?.remove(0))
}

/// Tables for both algorithms from one pass over the trials.
pub fn run_accuracy_comparison(n: u64, format: FormatKind, seed: u64) -> Result<Vec<UlpErrorTable>, HarnessError> {
    run_accuracy_comparison_with(n, format, &Algorithm::BOTH, seed, Execution::default())
}

pub fn run_accuracy_comparison_with(
    n: u64,
    format: FormatKind,
    algos: &[Algorithm],
    seed: u64,
    exec: Execution,
) -> Result<Vec<UlpErrorTable>, HarnessError> {
    match format {
        FormatKind::Binary16 => run_accuracy_trials::<F16>(n, algos, seed, exec),
        FormatKind::Binary32 => run_accuracy_trials::<f32>(n, algos, seed, exec),
        FormatKind::Binary64 => run_accuracy_trials::<f64>(n, algos, seed, exec),
    }
}
