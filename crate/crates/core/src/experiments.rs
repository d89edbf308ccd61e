//! Seed ensembles, sensitivity grid sweeps and calibration.
//!
//! A sweep runs every `(gamma_one, gamma_two)` cell over the same replicate
//! seeds, derived with [`replicate_seed`] from the base config's seed, so
//! cells differ only in behavior and never in the factor-price paths they see.

use rayon::prelude::*;
use serde::Serialize;

use crate::engine::{run, SimConfig};
use crate::error::{config, Error, Result};
use crate::rng::replicate_seed;

/// Minimum fraction of runs with positive global excess for a cell to be
/// eligible in calibration.
pub const MIN_FRACTION_POSITIVE: f64 = 0.5;

/// Default sensitivity grid: 0.0, 0.1, ..., 1.0.
pub fn default_gamma_grid() -> Vec<f64> {
    (0..=10).map(|i| i as f64 / 10.0).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepSpec {
    pub base: SimConfig,
    pub gamma_one: Vec<f64>,
    pub gamma_two: Vec<f64>,
    pub replicates: usize,
}

impl SweepSpec {
    pub fn new(
        base: SimConfig,
        gamma_one: Vec<f64>,
        gamma_two: Vec<f64>,
        replicates: usize,
    ) -> Self {
        Self {
            base,
            gamma_one,
            gamma_two,
            replicates,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.base.validate()?;
        if self.gamma_one.is_empty() || self.gamma_two.is_empty() {
            return Err(config("sweep grids must be nonempty"));
        }
        if self.replicates == 0 {
            return Err(config("sweep needs at least one replicate"));
        }
        Ok(())
    }

    /// Grid cells in row-major order (`gamma_one` outer).
    pub fn cells(&self) -> Vec<(f64, f64)> {
        self.gamma_one
            .iter()
            .flat_map(|&g1| self.gamma_two.iter().map(move |&g2| (g1, g2)))
            .collect()
    }

    pub fn seed_for(&self, replicate: usize) -> u64 {
        replicate_seed(self.base.seed, replicate as u64)
    }
}

/// Summary of global excess over an ensemble of runs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnsembleStats {
    pub runs: usize,
    pub mean: f64,
    pub median: f64,
    /// Sample standard deviation (zero for a single run).
    pub stddev: f64,
    pub fraction_positive: f64,
}

impl EnsembleStats {
    pub fn from_samples(samples: &[f64]) -> Self {
        let n = samples.len();
        assert!(n > 0, "ensemble statistics need at least one sample");
        let mean = samples.iter().sum::<f64>() / n as f64;
        let mut sorted = samples.to_vec();
        sorted.sort_by(f64::total_cmp);
        let median = if n % 2 == 1 {
            sorted[n / 2]
        } else {
            0.5 * (sorted[n / 2 - 1] + sorted[n / 2])
        };
        let stddev = if n > 1 {
            let ss: f64 = samples.iter().map(|x| (x - mean).powi(2)).sum();
            (ss / (n - 1) as f64).sqrt()
        } else {
            0.0
        };
        let positive = samples.iter().filter(|x| **x > 0.0).count();
        Self {
            runs: n,
            mean,
            median,
            stddev,
            fraction_positive: positive as f64 / n as f64,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CellStats {
    pub gamma_one: f64,
    pub gamma_two: f64,
    #[serde(flatten)]
    pub stats: EnsembleStats,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepResult {
    pub cells: Vec<CellStats>,
}

/// Global excess of every replicate of `base`, in replicate order.
pub fn ensemble(base: &SimConfig, seeds: &[u64]) -> Result<Vec<f64>> {
    seeds
        .par_iter()
        .map(|&s| run(&base.with_seed(s)).map(|r| r.global_excess))
        .collect()
}

pub fn sweep(spec: &SweepSpec) -> Result<SweepResult> {
    spec.validate()?;
    let seeds: Vec<u64> = (0..spec.replicates).map(|r| spec.seed_for(r)).collect();
    let cells = spec
        .cells()
        .into_iter()
        .map(|(g1, g2)| {
            let base = spec.base.with_gammas(g1, g2)?;
            let samples = ensemble(&base, &seeds)?;
            Ok(CellStats {
                gamma_one: g1,
                gamma_two: g2,
                stats: EnsembleStats::from_samples(&samples),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepResult { cells })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Calibration {
    pub target: f64,
    pub gamma_one: f64,
    pub gamma_two: f64,
    pub cell: CellStats,
}

/// Picks the eligible cell whose median is closest to `target`.
///
/// Cells with `fraction_positive` below [`MIN_FRACTION_POSITIVE`] are not
/// eligible. Ties go to the smaller `gamma_one`, then the smaller `gamma_two`.
pub fn select_cell(cells: &[CellStats], target: f64) -> Result<CellStats> {
    cells
        .iter()
        .filter(|c| c.stats.fraction_positive >= MIN_FRACTION_POSITIVE)
        .min_by(|a, b| {
            let da = (a.stats.median - target).abs();
            let db = (b.stats.median - target).abs();
            da.total_cmp(&db)
                .then(a.gamma_one.total_cmp(&b.gamma_one))
                .then(a.gamma_two.total_cmp(&b.gamma_two))
        })
        .copied()
        .ok_or_else(|| {
            Error::Calibration(format!(
                "no grid cell has fraction_positive >= {MIN_FRACTION_POSITIVE}"
            ))
        })
}

pub fn calibrate(target: f64, spec: &SweepSpec) -> Result<Calibration> {
    if !(target > 0.0 && target.is_finite()) {
        return Err(config(format!("calibration target={target} must be > 0")));
    }
    if spec.gamma_one.len() < 3 || spec.gamma_two.len() < 3 {
        return Err(config("calibration grid must span at least 3x3 cells"));
    }
    let result = sweep(spec)?;
    let cell = select_cell(&result.cells, target)?;
    Ok(Calibration {
        target,
        gamma_one: cell.gamma_one,
        gamma_two: cell.gamma_two,
        cell,
    })
}
