use serde::Serialize;

use super::{map_chunks, trial_inputs, Algorithm, Execution, HarnessError};
use crate::approx::ApproxSpec;
use crate::dyadic::Dyadic;
use crate::float::GivensFloat;
use crate::format::FormatKind;
use crate::oracle::{default_working_bits, reference_norm};
use crate::rotations::{givens, sqrt_free_givens_fast, BranchPolicy};
use crate::F16;

/// Largest residuals of the three defining identities over a run, evaluated
/// exactly (the norm `r` is carried at the oracle's working precision):
///
/// * `normality = |c^2 + s^2 - 1|`
/// * `orthogonality = |c g - s f| / r`
/// * `norm = |c f + s g - r| / r`
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResidualMaxima {
    pub algo: Algorithm,
    pub format: FormatKind,
    pub n: u64,
    pub seed: u64,
    pub unit_roundoff: f64,
    pub normality: f64,
    pub orthogonality: f64,
    pub norm: f64,
}

impl ResidualMaxima {
    /// Each maximum expressed as a multiple of the unit roundoff.
    pub fn in_units_of_u(&self) -> [f64; 3] {
        let u = self.unit_roundoff;
        [self.normality / u, self.orthogonality / u, self.norm / u]
    }

    /// Whether all three maxima are within `multiple * u`.
    pub fn within(&self, multiple: f64) -> bool {
        self.in_units_of_u().iter().all(|&v| v <= multiple)
    }
}

#[derive(Default, Clone, Copy)]
struct Maxima([f64; 3]);

impl Maxima {
    fn merge(self, other: Maxima) -> Maxima {
        Maxima([0, 1, 2].map(|i| self.0[i].max(other.0[i])))
    }
}

fn residuals<T: GivensFloat>(f: T, g: T, c: T, s: T) -> [f64; 3] {
    let r = reference_norm(f, g, default_working_bits::<T>()).expect("inputs are finite and not both zero");
    let (f, g, c, s) = (Dyadic::from_float(f), Dyadic::from_float(g), Dyadic::from_float(c), Dyadic::from_float(s));
    let normality = c.clone() * c.clone() + s.clone() * s.clone() - Dyadic::from_int(1);
    let orthogonality = c.clone() * g.clone() - s.clone() * f.clone();
    let norm = c * f + s * g - r.clone();
    [normality.abs().to_float::<f64>(), orthogonality.abs().ratio_f64(&r), norm.abs().ratio_f64(&r)]
}

fn rotate<T: GivensFloat>(algo: Algorithm, f: T, g: T, spec: &ApproxSpec<T>) -> (T, T) {
    let rot = match algo {
        Algorithm::Baseline => givens(f, g, BranchPolicy::WITH_BRANCH),
        Algorithm::SqrtFree => sqrt_free_givens_fast(f, g, BranchPolicy::WITH_BRANCH, spec),
    };
    (rot.c, rot.s)
}

/// Residual maxima over the given inputs. Pairs that are both zero or
/// non-finite are skipped.
pub fn residuals_for_inputs<T: GivensFloat>(
    inputs: impl IntoIterator<Item = (T, T)>,
    algo: Algorithm,
) -> ResidualMaxima {
    let spec = ApproxSpec::<T>::default_spec();
    let mut n = 0;
    let mut max = Maxima::default();
    for (f, g) in inputs {
        if !(f.is_finite() && g.is_finite()) || (f.is_zero() && g.is_zero()) {
            continue;
        }
        let (c, s) = rotate(algo, f, g, &spec);
        max = max.merge(Maxima(residuals(f, g, c, s)));
        n += 1;
    }
    ResidualMaxima {
        algo,
        format: T::FORMAT.kind,
        n,
        seed: 0,
        unit_roundoff: T::FORMAT.unit_roundoff(),
        normality: max.0[0],
        orthogonality: max.0[1],
        norm: max.0[2],
    }
}

/// Residual maxima for each algorithm over `n` standard normal trials in `T`.
pub fn run_residual_sweeps<T: GivensFloat>(
    n: u64,
    algos: &[Algorithm],
    seed: u64,
    exec: Execution,
) -> Result<Vec<ResidualMaxima>, HarnessError> {
    if n == 0 {
        return Err(HarnessError::NoTrials);
    }
    let spec = ApproxSpec::<T>::default_spec();
    let work = |range: std::ops::Range<u64>| {
        let mut max = vec![Maxima::default(); algos.len()];
        for i in range {
            let (f, g, _) = trial_inputs::<T>(seed, i);
            for (slot, &algo) in max.iter_mut().zip(algos) {
                let (c, s) = rotate(algo, f, g, &spec);
                *slot = slot.merge(Maxima(residuals(f, g, c, s)));
            }
        }
        max
    };
    let merge = |a: Vec<Maxima>, b: Vec<Maxima>| {
        if a.is_empty() {
            return b;
        }
        a.into_iter().zip(b).map(|(x, y)| x.merge(y)).collect()
    };
    let max = map_chunks(n, exec, work, merge);
    Ok(algos
        .iter()
        .zip(max)
        .map(|(&algo, m)| ResidualMaxima {
            algo,
            format: T::FORMAT.kind,
            n,
            seed,
            unit_roundoff: T::FORMAT.unit_roundoff(),
            normality: m.0[0],
            orthogonality: m.0[1],
            norm: m.0[2],
        })
        .collect())
}

/// Residual maxima for one algorithm in a run-time-selected format.
pub fn run_residual_sweep(
    n: u64,
    format: FormatKind,
    algo: Algorithm,
    seed: u64,
) -> Result<ResidualMaxima, HarnessError> {
    let exec = Execution::default();
    let mut out = match format {
        FormatKind::Binary16 => run_residual_sweeps::<F16>(n, &[algo], seed, exec)?,
        FormatKind::Binary32 => run_residual_sweeps::<f32>(n, &[algo], seed, exec)?,
        FormatKind::Binary64 => run_residual_sweeps::<f64>(n, &[algo], seed, exec)?,
    };
    Ok(out.remove(0))
}
